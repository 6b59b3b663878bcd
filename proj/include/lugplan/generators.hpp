#pragma once

#include <cstdint>

#include "lugplan/domain.hpp"

namespace lugplan {

/// Diagnosis domain with a specialist who cures any disease. Fluents d1..dn, stained,
/// counted, cured; exactly one disease holds initially. inspect_stain tells odd-numbered
/// diseases from even-numbered ones; analyze_white_cell_count tells which consecutive
/// pair (d1,d2), (d3,d4), ... holds, with a complement outcome when there is one pair.
Problem gen_medical(int n_diseases, Rational sensor_cost);

/// Rover with uncertain science data. The first n_data of (soil, rock, image) are
/// requested; each sits at exactly one of min(4, n_locations - 2) candidate locations
/// drawn from l2..ln with the seed. The rover starts at l1. cost_variant selects the
/// sensing costs (35, 55, 45) or (100, 120, 110) for (visibility, rock, soil).
Problem gen_rovers(int n_locations, int n_data, int cost_variant, std::uint32_t seed = 0);

}  // namespace lugplan
