#pragma once

#include <span>

#include "qrac/bloch.hpp"

namespace qrac {

/// Smallest singular value of the k x 3 matrix whose rows are the given
/// vectors. Zero (up to rounding) iff the set is coplanar through the origin.
double smallest_stack_singular_value(std::span<const Vec3> rows);

/// max_{i<j} |v_i . v_j| for unit vectors; 0 for a mutually orthogonal set.
double max_pairwise_alignment(std::span<const Vec3> vectors);

} // namespace qrac
