#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "lugplan/belief.hpp"
#include "lugplan/domain.hpp"
#include "lugplan/rational.hpp"

namespace lugplan {

enum class HeuristicKind { kClugRp, kLugRp, kCardinality, kZero };

std::string_view to_string(HeuristicKind kind);
/// "clug-rp", "lug-rp", "cardinality" or "zero".
std::optional<HeuristicKind> parse_heuristic(std::string_view text);

struct HeuristicCounters {
  std::size_t calls = 0;
  /// Literal layers built past level 0, summed over calls.
  std::size_t levels_built = 0;
};

/// Belief-state heuristic. Graph-based kinds build a fresh graph per call.
class Heuristic {
 public:
  explicit Heuristic(HeuristicKind kind, std::size_t max_levels = 0) : kind_(kind), max_levels_(max_levels) {}

  HeuristicKind kind() const { return kind_; }
  CostEstimate operator()(const Task& task, const BeliefState& bs);
  const HeuristicCounters& counters() const { return counters_; }

 private:
  HeuristicKind kind_;
  std::size_t max_levels_;
  HeuristicCounters counters_;
};

}  // namespace lugplan
