#pragma once

#include <stdexcept>

#include "ssqcv/core.hpp"
#include "ssqcv/random.hpp"
#include "ssqcv/relax.hpp"

namespace ssqcv {

/// Entries pairwise distinct after scaling v to unit norm, with absolute tolerance `tol`.
bool has_distinct_entries(const Vector& v, double tol = 1e-12);

/// Smallest gap between any two entries of v (infinity for size < 2).
double min_gap(const Vector& v);

/// Maps x to the permutation P with P r(x) = r(Q x).
///
/// This P minimizes ||Q x - P x||^2 over all permutations. Two sorts,
/// O(n log n); ties follow the stable index rule of rank_vector.
Permutation round_point(const Matrix& q, const Vector& x);
inline Permutation round_point(const PartitionMatrix& q, const Vector& x) { return round_point(q.q, x); }

/// True iff x lies in the cell of P, i.e. round_point(Q, x) == P.
bool membership(const Matrix& q, const Vector& x, const Permutation& p);

/// Q + lambda U with U(i, j) ~ Unif[0, 1), drawn row-major from rng.
PartitionMatrix perturb(const PartitionMatrix& q, double lambda, Rng& rng);

/// True iff Q (1/sqrt(n)) 1 has all entries equal within `tol`, the case in
/// which every cell boundary passes through the constant direction.
bool fixes_constant_direction(const Matrix& q, double tol = 1e-9);

/// Raised when the reverse map cannot be constructed for a given Q.
class ReverseUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ReverseParams {
    /// Initial step as a fraction of the smallest gap between entries of Q^{-1} a.
    double delta = 1e-6;
    /// Multiplicative growth of the step while the ordering of the point is kept.
    double growth = 2.0;
};

/// A point x with round_point(Q, x) == target.
///
/// With a = n^{-1/2} 1 and b = Q^{-1} a, x = b + Q^{-1} P* P_b^T eps where
/// P_b sorts b ascending and eps = delta [1..n]. Since P_b^T eps = delta r(b),
/// Q x = a + delta P* r(b) orders like P* r(x) for every delta > 0 as long as
/// r(x) = r(b); delta is grown geometrically while that ordering holds.
///
/// Throws ReverseUnavailable if Q is singular or b has tied entries (e.g. any
/// doubly stochastic Q, where b = a).
Vector reverse_point(const Matrix& q, const Permutation& target, const ReverseParams& params = {});

/// Squared radius eps such that every y with ||y - x||^2 < eps rounds like x:
/// eps = min(e1^2, e2^2), e1 = gap(x) / 2, e2 = gap(Q x) / (2 sqrt(lmax(Q^T Q))),
/// each shrunk by (1 - 1e-9). Throws InputError if x or Q x has tied entries.
double continuity_radius(const Matrix& q, const Vector& x);

/// Largest eigenvalue of Q^T Q.
double largest_gram_eigenvalue(const Matrix& q);

}  // namespace ssqcv
