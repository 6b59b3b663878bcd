#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74's templated rational == integer recurses forever under C++20's reversed
// comparison candidates. Exact-match overloads win overload resolution and avoid it.
namespace boost {
#define LUGPLAN_RATIONAL_EQ(T)                                                                            \
  inline bool operator==(const rational<std::int64_t>& a, T b) { return a == rational<std::int64_t>(b); } \
  inline bool operator==(T a, const rational<std::int64_t>& b) { return b == rational<std::int64_t>(a); } \
  inline bool operator!=(const rational<std::int64_t>& a, T b) { return !(a == b); }                      \
  inline bool operator!=(T a, const rational<std::int64_t>& b) { return !(b == a); }
LUGPLAN_RATIONAL_EQ(int)
LUGPLAN_RATIONAL_EQ(long)
LUGPLAN_RATIONAL_EQ(long long)
#undef LUGPLAN_RATIONAL_EQ
}  // namespace boost

namespace lugplan {

/// Exact cost arithmetic. All action costs and propagated estimates use it.
using Rational = boost::rational<std::int64_t>;

/// Parses "p/q", "p" or a decimal-free integer string. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p" when integral, "p/q" otherwise.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// A nonnegative rational or infinity. Used for heuristic values and AO* f-values.
class CostEstimate {
 public:
  CostEstimate() = default;
  CostEstimate(Rational value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  static CostEstimate infinity() {
    CostEstimate e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Only meaningful when finite.
  const Rational& value() const { return value_; }

  friend CostEstimate operator+(const CostEstimate& a, const CostEstimate& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return CostEstimate(a.value_ + b.value_);
  }

  friend bool operator==(const CostEstimate& a, const CostEstimate& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend bool operator<(const CostEstimate& a, const CostEstimate& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }

  std::string str() const { return infinite_ ? "inf" : to_string(value_); }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

inline std::ostream& operator<<(std::ostream& os, const CostEstimate& e) { return os << e.str(); }

}  // namespace lugplan
