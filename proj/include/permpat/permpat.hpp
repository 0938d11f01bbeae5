#pragma once

#include "bonds.hpp"
#include "construct.hpp"
#include "error.hpp"
#include "gap.hpp"
#include "genfun.hpp"
#include "montecarlo.hpp"
#include "patterns.hpp"
#include "permutation.hpp"

namespace permpat {

inline constexpr const char* version = "0.1.0";

}  // namespace permpat
