#pragma once

#include <string_view>

#include "manifold_splines/interp.hpp"

namespace manifold_splines {

/// Named test functions:
///   const      1
///   linear     u . x on spheres (u = (1,..,1)/sqrt(d+1)), u . R(g) e_z on SO(3)
///   exp-dot-u  exp(linear)
target_fn preset_target(manifold m, std::string_view name);

bool is_preset_target(std::string_view name);

}  // namespace manifold_splines
