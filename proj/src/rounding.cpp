#include "ssqcv/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ssqcv {

namespace {

void check_point(const Matrix& q, const Vector& x) {
    if (q.rows() != q.cols())
        throw InputError("rounding: Q must be square");
    if (x.size() != q.rows())
        throw InputError("rounding: point dimension does not match Q");
    if (!x.allFinite())
        throw InputError("rounding: non-finite point");
}

Vector ranks_as_vector(const Vector& v) {
    const auto r = rank_vector(v);
    Vector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out[i] = r.ranks[static_cast<std::size_t>(i)];
    return out;
}

}  // namespace

double min_gap(const Vector& v) {
    if (v.size() < 2)
        return std::numeric_limits<double>::infinity();
    std::vector<double> s(v.data(), v.data() + v.size());
    std::sort(s.begin(), s.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < s.size(); ++i)
        gap = std::min(gap, s[i] - s[i - 1]);
    return gap;
}

bool has_distinct_entries(const Vector& v, double tol) {
    const double norm = v.norm();
    if (!(norm > 0.0))
        return v.size() < 2;
    return min_gap(v / norm) > tol;
}

Permutation round_point(const Matrix& q, const Vector& x) {
    check_point(q, x);
    const Vector qx = q * x;
    const auto order_x = stable_argsort(x);
    const auto order_qx = stable_argsort(qx);
    // The k-th smallest entry of x moves to where the k-th smallest of Qx sits.
    std::vector<int> map(order_x.size());
    for (std::size_t k = 0; k < order_x.size(); ++k)
        map[order_x[k]] = order_qx[k];
    return Permutation(std::move(map));
}

bool membership(const Matrix& q, const Vector& x, const Permutation& p) {
    if (p.size() != static_cast<std::size_t>(x.size()))
        throw InputError("membership: permutation dimension mismatch");
    return round_point(q, x) == p;
}

PartitionMatrix perturb(const PartitionMatrix& q, double lambda, Rng& rng) {
    if (!(lambda >= 0.0))
        throw InputError("perturb: lambda must be non-negative");
    PartitionMatrix out{q.q, PartitionMatrix::Kind::perturbed};
    for (Eigen::Index i = 0; i < out.q.rows(); ++i)
        for (Eigen::Index j = 0; j < out.q.cols(); ++j)
            out.q(i, j) += lambda * rng.uniform();
    return out;
}

bool fixes_constant_direction(const Matrix& q, double tol) {
    const auto n = q.rows();
    const Vector qa = q * Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    return qa.maxCoeff() - qa.minCoeff() <= tol;
}

Vector reverse_point(const Matrix& q, const Permutation& target, const ReverseParams& params) {
    if (q.rows() != q.cols() || static_cast<std::size_t>(q.rows()) != target.size())
        throw InputError("reverse_point: dimension mismatch");
    if (!(params.delta > 0.0) || !(params.growth > 1.0))
        throw InputError("reverse_point: need delta > 0 and growth > 1");
    const auto n = q.rows();

    const Eigen::FullPivLU<Matrix> lu(q);
    if (!lu.isInvertible())
        throw ReverseUnavailable("reverse_point: Q is singular");

    const Vector a = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    const Vector b = lu.solve(a);
    if (!b.allFinite() || !has_distinct_entries(b))
        throw ReverseUnavailable("reverse_point: Q^{-1} a has tied entries");

    const RankVector rb = rank_vector(b);
    const Vector dir = lu.solve(target.apply(ranks_as_vector(b)));

    auto keeps_order = [&](double d) { return rank_vector(Vector(b + d * dir)) == rb; };

    constexpr int max_steps = 200;
    double delta = params.delta * min_gap(b);
    int steps = 0;
    while (!keeps_order(delta) && steps++ < max_steps)
        delta /= params.growth;
    if (!keeps_order(delta))
        throw ReverseUnavailable("reverse_point: no admissible step size");
    for (steps = 0; steps < max_steps && keeps_order(delta * params.growth); ++steps)
        delta *= params.growth;

    Vector x = b + delta * dir;
    if (round_point(q, x) != target)
        throw ReverseUnavailable("reverse_point: round trip failed numerically");
    return x;
}

double largest_gram_eigenvalue(const Matrix& q) {
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(q.transpose() * q, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().maxCoeff();
}

double continuity_radius(const Matrix& q, const Vector& x) {
    check_point(q, x);
    const Vector qx = q * x;
    if (!has_distinct_entries(x) || !has_distinct_entries(qx))
        throw InputError("continuity_radius: tied entries in x or Qx");
    constexpr double shrink = 1.0 - 1e-9;
    const double e1 = 0.5 * shrink * min_gap(x);
    const double e2 = shrink * min_gap(qx) / (2.0 * std::sqrt(largest_gram_eigenvalue(q)));
    return std::min(e1 * e1, e2 * e2);
}

}  // namespace ssqcv
