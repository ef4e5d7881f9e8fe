#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ssqcv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when an argument violates a documented precondition.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two n x n weight matrices to be matched, A against B.
struct GraphInstance {
    Matrix a;
    Matrix b;
    std::string name;

    std::size_t size() const { return static_cast<std::size_t>(a.rows()); }

    /// Throws InputError unless A and B are square, equally sized, n >= 1 and finite.
    void validate() const;
};

/// A bijection of {0..n-1}. map[i] is the image of i.
///
/// As a matrix, P(map[i], i) = 1, so (P v)[map[i]] = v[i] and
/// (P^T B P)(i, j) = B(map[i], map[j]).
class Permutation {
public:
    Permutation() = default;
    /// Throws InputError if `map` is not a bijection of {0..n-1}.
    explicit Permutation(std::vector<int> map);

    static Permutation identity(std::size_t n);

    std::size_t size() const { return map_.size(); }
    int operator[](std::size_t i) const { return map_[i]; }
    const std::vector<int>& map() const { return map_; }

    Permutation inverse() const;
    Matrix to_matrix() const;
    /// Returns P v.
    Vector apply(const Vector& v) const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> map_;
};

/// 1-based ordering vector: ranks[i] = j iff x_i is the j-th smallest entry.
struct RankVector {
    std::vector<int> ranks;

    friend bool operator==(const RankVector&, const RankVector&) = default;
};

/// Ordering vector r(x); ties are broken by ascending index.
RankVector rank_vector(std::span<const double> x);
RankVector rank_vector(const Vector& x);

/// Indices of x sorted ascending by value, ties by index.
std::vector<int> stable_argsort(const Vector& x);

/// ||A - P^T B P||_F (the norm, not its square).
double gm_objective(const GraphInstance& inst, const Permutation& p);

/// tr(-A^T P^T B P). Satisfies gm^2 = tr(A^T A) + tr(B^T B) + 2 * trace.
double trace_objective(const GraphInstance& inst, const Permutation& p);

/// ||P0 - P1||_F. Squared value is twice the number of disagreeing images.
double perm_distance(const Permutation& p0, const Permutation& p1);

}  // namespace ssqcv
