#pragma once

#include <vector>

#include "hmcusp/rational.hpp"

namespace hmcusp {

// Invariant factors of an integer matrix: nonneg diagonal of the Smith form,
// each entry dividing the next; rank = number of nonzero invariants.
struct SmithResult {
    std::vector<Int> invariants;
    long rank = 0;
};

SmithResult smith_normal_form(std::vector<std::vector<Int>> M);

}  // namespace hmcusp
