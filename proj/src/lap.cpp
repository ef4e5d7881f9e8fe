#include "ssqcv/lap.hpp"

#include <limits>
#include <vector>

namespace ssqcv {

Permutation solve_lap(const Matrix& c) {
    if (c.rows() != c.cols())
        throw InputError("solve_lap: score matrix must be square");
    if (!c.allFinite())
        throw InputError("solve_lap: non-finite score");
    const auto n = static_cast<std::size_t>(c.rows());
    if (n == 0)
        return Permutation{};

    // Workers are the columns of C, jobs are its rows; cost(w, j) = -C(j, w).
    // Potentials u (workers) and v (jobs), 1-based with slot 0 as the sentinel.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
    std::vector<double> minv(n + 1);
    std::vector<char> used(n + 1);

    for (std::size_t w = 1; w <= n; ++w) {
        owner[0] = w;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t w0 = owner[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j])
                    continue;
                const double cur = -c(j - 1, w0 - 1) - u[w0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (owner[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> map(n);
    for (std::size_t j = 1; j <= n; ++j)
        map[owner[j] - 1] = static_cast<int>(j - 1);
    return Permutation(std::move(map));
}

double assignment_value(const Matrix& c, const Permutation& p) {
    if (static_cast<std::size_t>(c.cols()) != p.size() || c.rows() != c.cols())
        throw InputError("assignment_value: dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        sum += c(p[i], static_cast<Eigen::Index>(i));
    return sum;
}

Permutation project_to_permutation(const Matrix& q) { return solve_lap(q); }

}  // namespace ssqcv
