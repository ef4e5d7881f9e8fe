#include "ssqcv/relax.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ssqcv/lap.hpp"

namespace ssqcv {

void FwConfig::validate() const {
    if (max_iters < 1 || patience < 1)
        throw InputError("FwConfig: max_iters and patience must be >= 1");
    if (!(rel_tol > 0.0) || !(line_search_tol > 0.0))
        throw InputError("FwConfig: tolerances must be positive");
}

namespace {

void check_square(const GraphInstance& inst, const Matrix& q) {
    if (q.rows() != inst.a.rows() || q.cols() != inst.a.cols())
        throw InputError("relax: Q dimension does not match instance");
}

double horner(const double (&c)[5], double s) {
    return (((c[4] * s + c[3]) * s + c[2]) * s + c[1]) * s + c[0];
}

double cubic_derivative(const double (&c)[5], double s) {
    return ((4.0 * c[4] * s + 3.0 * c[3]) * s + 2.0 * c[2]) * s + c[1];
}

}  // namespace

double relaxed_objective(const GraphInstance& inst, const Matrix& q) {
    check_square(inst, q);
    return (inst.a - q.transpose() * inst.b * q).squaredNorm();
}

Matrix fw_gradient(const GraphInstance& inst, const Matrix& q) {
    check_square(inst, q);
    const Matrix bq = inst.b * q;
    const Matrix r = inst.a - q.transpose() * bq;
    return -2.0 * (bq * r.transpose() + inst.b.transpose() * q * r);
}

namespace {

void record_feasibility(FwResult& out, const Matrix& q) {
    const double rows = (q.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double cols = (q.colwise().sum().array() - 1.0).abs().maxCoeff();
    out.max_sum_violation = std::max({out.max_sum_violation, rows, cols});
    out.min_entry = std::min(out.min_entry, q.minCoeff());
}

}  // namespace

double minimize_quartic_on_unit(const double (&coef)[5], double tol) {
    for (double c : coef)
        if (!std::isfinite(c))
            return -1.0;

    // Split [0, 1] at the roots of the second derivative so the cubic
    // derivative is monotone on each piece, then bisect sign changes.
    std::array<double, 4> knots{0.0, 1.0, 1.0, 1.0};
    std::size_t nknots = 1;
    const double qa = 12.0 * coef[4], qb = 6.0 * coef[3], qc = 2.0 * coef[2];
    auto add_knot = [&](double s) {
        if (s > 0.0 && s < 1.0)
            knots[nknots++] = s;
    };
    if (std::abs(qa) > 0.0) {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            double r1 = (-qb - sq) / (2.0 * qa), r2 = (-qb + sq) / (2.0 * qa);
            if (r1 > r2)
                std::swap(r1, r2);
            add_knot(r1);
            add_knot(r2);
        }
    } else if (std::abs(qb) > 0.0) {
        add_knot(-qc / qb);
    }
    knots[nknots++] = 1.0;

    double best_s = 0.0;
    double best_v = horner(coef, 0.0);
    auto consider = [&](double s) {
        const double v = horner(coef, s);
        if (v < best_v) {
            best_v = v;
            best_s = s;
        }
    };
    consider(1.0);
    for (std::size_t k = 0; k + 1 < nknots; ++k) {
        double lo = knots[k], hi = knots[k + 1];
        double dlo = cubic_derivative(coef, lo), dhi = cubic_derivative(coef, hi);
        if ((dlo < 0.0) == (dhi < 0.0))
            continue;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            const double dm = cubic_derivative(coef, mid);
            if ((dm < 0.0) == (dlo < 0.0)) {
                lo = mid;
                dlo = dm;
            } else {
                hi = mid;
            }
        }
        consider(0.5 * (lo + hi));
    }
    return best_s;
}

FwResult frank_wolfe_trace(const GraphInstance& inst, const FwConfig& cfg) {
    inst.validate();
    cfg.validate();
    const auto n = inst.a.rows();
    const Matrix& a = inst.a;
    const Matrix& b = inst.b;

    FwResult out;
    Matrix q = Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
    double f = relaxed_objective(inst, q);
    out.objective.push_back(f);
    out.min_entry = q.minCoeff();
    record_feasibility(out, q);

    int quiet = 0;
    for (int k = 0; k < cfg.max_iters; ++k) {
        const Matrix bq = b * q;
        const Matrix r0 = a - q.transpose() * bq;
        const Matrix grad = -2.0 * (bq * r0.transpose() + b.transpose() * q * r0);

        // Linear minimization oracle: the Birkhoff vertex minimizing <grad, V>.
        const Matrix v = solve_lap(-grad).to_matrix();
        const Matrix d = v - q;
        const double gap = -(grad.array() * d.array()).sum();
        if (!(gap > 0.0))
            break;

        const Matrix bd = b * d;
        const Matrix r1 = d.transpose() * bq + q.transpose() * bd;
        const Matrix r2 = d.transpose() * bd;
        const double r0r1 = (r0.array() * r1.array()).sum();
        const double r0r2 = (r0.array() * r2.array()).sum();
        const double r1r2 = (r1.array() * r2.array()).sum();
        // ||R0 - s R1 - s^2 R2||^2 as a polynomial in s.
        const double coef[5] = {r0.squaredNorm(), -2.0 * r0r1, r1.squaredNorm() - 2.0 * r0r2,
                                2.0 * r1r2, r2.squaredNorm()};

        double s = minimize_quartic_on_unit(coef, cfg.line_search_tol);
        if (s < 0.0)
            s = 2.0 / (k + 2.0);
        if (s == 0.0)
            break;

        Matrix next = q + s * d;
        const double f_next = relaxed_objective(inst, next);
        if (!(f_next <= f))
            break;
        const double decrease = f > 0.0 ? (f - f_next) / f : 0.0;
        q = std::move(next);
        f = f_next;
        out.objective.push_back(f);
        out.iterations = k + 1;
        record_feasibility(out, q);

        quiet = decrease < cfg.rel_tol ? quiet + 1 : 0;
        if (quiet >= cfg.patience || f == 0.0)
            break;
    }
    out.q = PartitionMatrix{std::move(q), PartitionMatrix::Kind::doubly_stochastic};
    return out;
}

PartitionMatrix frank_wolfe(const GraphInstance& inst, const FwConfig& cfg) {
    return frank_wolfe_trace(inst, cfg).q;
}

}  // namespace ssqcv
