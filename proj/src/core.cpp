#include "ssqcv/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ssqcv {

void GraphInstance::validate() const {
    if (a.rows() < 1 || a.rows() != a.cols())
        throw InputError("graph instance: A must be square with n >= 1");
    if (b.rows() != a.rows() || b.cols() != a.cols())
        throw InputError("graph instance: A and B must have identical dimensions");
    if (!a.allFinite() || !b.allFinite())
        throw InputError("graph instance: non-finite matrix entry");
}

Permutation::Permutation(std::vector<int> map) : map_(std::move(map)) {
    std::vector<char> seen(map_.size(), 0);
    for (int v : map_) {
        if (v < 0 || static_cast<std::size_t>(v) >= map_.size() || seen[v])
            throw InputError("permutation: map is not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i)
        inv[map_[i]] = static_cast<int>(i);
    return Permutation(std::move(inv));
}

Matrix Permutation::to_matrix() const {
    const auto n = static_cast<Eigen::Index>(map_.size());
    Matrix p = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        p(map_[i], i) = 1.0;
    return p;
}

Vector Permutation::apply(const Vector& v) const {
    if (static_cast<std::size_t>(v.size()) != map_.size())
        throw InputError("permutation: vector dimension mismatch");
    Vector out(v.size());
    for (std::size_t i = 0; i < map_.size(); ++i)
        out[map_[i]] = v[static_cast<Eigen::Index>(i)];
    return out;
}

std::vector<int> stable_argsort(const Vector& x) {
    std::vector<int> idx(static_cast<std::size_t>(x.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int l, int r) { return x[l] < x[r]; });
    return idx;
}

RankVector rank_vector(std::span<const double> x) {
    if (x.empty())
        throw InputError("rank_vector: empty input");
    Vector v(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]))
            throw InputError("rank_vector: non-finite entry");
        v[static_cast<Eigen::Index>(i)] = x[i];
    }
    const auto order = stable_argsort(v);
    RankVector r{std::vector<int>(x.size())};
    for (std::size_t k = 0; k < order.size(); ++k)
        r.ranks[order[k]] = static_cast<int>(k) + 1;
    return r;
}

RankVector rank_vector(const Vector& x) {
    return rank_vector(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

namespace {

void check_dims(const GraphInstance& inst, const Permutation& p) {
    if (p.size() != inst.size() || inst.b.rows() != inst.a.rows())
        throw InputError("objective: permutation dimension does not match instance");
}

}  // namespace

double gm_objective(const GraphInstance& inst, const Permutation& p) {
    check_dims(inst, p);
    const auto n = inst.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int pi = p[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double d = inst.a(i, j) - inst.b(pi, p[j]);
            sum += d * d;
        }
    }
    return std::sqrt(sum);
}

double trace_objective(const GraphInstance& inst, const Permutation& p) {
    check_dims(inst, p);
    const auto n = inst.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int pi = p[i];
        for (std::size_t j = 0; j < n; ++j)
            sum -= inst.a(i, j) * inst.b(pi, p[j]);
    }
    return sum;
}

double perm_distance(const Permutation& p0, const Permutation& p1) {
    if (p0.size() != p1.size())
        throw InputError("perm_distance: dimension mismatch");
    std::size_t differ = 0;
    for (std::size_t i = 0; i < p0.size(); ++i)
        differ += p0[i] != p1[i];
    return std::sqrt(2.0 * static_cast<double>(differ));
}

}  // namespace ssqcv
