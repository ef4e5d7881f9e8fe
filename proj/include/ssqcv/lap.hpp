#pragma once

#include "ssqcv/core.hpp"

namespace ssqcv {

/// Maximizes tr(C^T P) over permutation matrices P, i.e. sum_i C(map[i], i).
///
/// O(n^3) shortest augmenting path Hungarian method on the cost -C. Ties
/// between optimal assignments are broken by the fixed scan order, so equal
/// inputs give equal outputs. Throws InputError for non-square or
/// non-finite C.
Permutation solve_lap(const Matrix& c);

/// Value of tr(C^T P) for the given permutation.
double assignment_value(const Matrix& c, const Permutation& p);

/// argmin_P ||Q - P||_F, which equals argmax_P tr(Q^T P).
Permutation project_to_permutation(const Matrix& q);

}  // namespace ssqcv
