#include "ssqcv/adapt.hpp"

#include <algorithm>
#include <cmath>

#include "ssqcv/rounding.hpp"

namespace ssqcv {

namespace {

constexpr std::size_t kMaxPresampleAttempts = 1'000'000;
// exp(600) is finite; keeps sqrt(exp(y)) * z well away from overflow.
constexpr double kMaxAbsLogVariance = 600.0;

double sample_delta(const Matrix& q, const Vector& x0, const Permutation& p0, double y, Rng& rng) {
    const Vector x = propose(x0, std::exp(y), rng);
    return perm_distance(p0, round_point(q, x));
}

}  // namespace

double logistic(double z) {
    if (z >= 0.0)
        return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double logit(double p) { return std::log(p / (1.0 - p)); }

double target_value(const TargetFunction& f, double delta_max, std::size_t t) {
    if (f.total_iterations < 1 || !(f.exponent > 0.0))
        throw InputError("target_value: need total_iterations >= 1 and exponent > 0");
    if (t > f.total_iterations)
        throw InputError("target_value: t out of range");
    const double frac = static_cast<double>(t) / static_cast<double>(f.total_iterations);
    return delta_max * (1.0 - std::pow(frac, f.exponent));
}

Vector propose(const Vector& x, double sigma2, Rng& rng) {
    const double sigma = std::sqrt(sigma2);
    for (;;) {
        Vector y = x + sigma * rng.normal_vector(static_cast<std::size_t>(x.size()));
        const double norm = y.norm();
        if (norm > 0.0 && std::isfinite(norm))
            return y / norm;
    }
}

double estimate_delta_max(const Matrix& q, const Vector& x0, std::size_t m, Rng& rng) {
    if (m == 0)
        throw InputError("estimate_delta_max: M must be >= 1");
    const Permutation p0 = round_point(q, x0);
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        sum += perm_distance(p0, round_point(q, rng.sphere_point(static_cast<std::size_t>(x0.size()))));
    return sum / static_cast<double>(m);
}

Presamples generate_presamples(const Matrix& q, const Vector& x0, double delta_max, std::size_t l,
                               double margin, Rng& rng) {
    if (l < 2)
        throw InputError("generate_presamples: L must be >= 2");
    if (!(margin > 0.0 && margin < 0.5))
        throw InputError("generate_presamples: margin must lie in (0, 1/2)");
    if (!(delta_max > 0.0))
        throw PresampleFailure("generate_presamples: delta_max is zero, the partition is degenerate");

    const Permutation p0 = round_point(q, x0);
    std::size_t attempts = 0;
    auto ratio_of = [&](double delta) { return delta / delta_max; };
    auto draw = [&](double variance) {
        if (++attempts > kMaxPresampleAttempts)
            throw PresampleFailure("generate_presamples: attempt budget exhausted");
        return std::clamp(std::sqrt(variance) * rng.normal(), -kMaxAbsLogVariance, kMaxAbsLogVariance);
    };

    // First anchor: any draw outside the band.
    double variance = 1.0;
    double ya = 0.0, da = 0.0;
    for (;;) {
        ya = draw(variance);
        da = sample_delta(q, x0, p0, ya, rng);
        const double r = ratio_of(da);
        if (r < margin || r > 1.0 - margin)
            break;
        variance = std::min(2.0 * variance, 1e8);
    }
    // Second anchor: outside the band on the opposite side.
    const bool a_low = ratio_of(da) < margin;
    variance = 1.0;
    double yb = 0.0, db = 0.0;
    for (;;) {
        yb = draw(variance);
        db = sample_delta(q, x0, p0, yb, rng);
        const double r = ratio_of(db);
        if (a_low ? r > 1.0 - margin : r < margin)
            break;
        variance = std::min(2.0 * variance, 1e8);
    }

    Presamples out;
    out.ys.reserve(l);
    out.deltas.reserve(l);
    if (yb < ya) {
        std::swap(ya, yb);
        std::swap(da, db);
    }
    out.ys = {ya, yb};
    out.deltas = {da, db};

    double lo = ya, hi = yb;
    while (out.ys.size() < l) {
        const double y = lo + (hi - lo) * rng.uniform();
        const double d = sample_delta(q, x0, p0, y, rng);
        out.ys.push_back(y);
        out.deltas.push_back(d);
        const double r = ratio_of(d);
        if (r < margin)
            lo = y;
        else if (r > 1.0 - margin)
            hi = y;
    }
    return out;
}

double logistic_sse(const LogisticModel& model, std::span<const double> ys, std::span<const double> ds) {
    double sse = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const double r = model(ys[i]) - ds[i];
        sse += r * r;
    }
    return sse;
}

LogisticModel fit_logistic(std::span<const double> ys, std::span<const double> ds) {
    if (ys.size() != ds.size() || ys.size() < 2)
        throw InputError("fit_logistic: need two equal-length lists of at least 2 points");
    for (std::size_t i = 0; i < ys.size(); ++i)
        if (!std::isfinite(ys[i]) || !(ds[i] >= 0.0 && ds[i] <= 1.0))
            throw InputError("fit_logistic: inputs must be finite with responses in [0, 1]");
    const auto [dmin, dmax] = std::minmax_element(ds.begin(), ds.end());
    if (*dmin == *dmax)
        throw Unlearnable("fit_logistic: all responses identical");
    const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    if (*ymin == *ymax)
        throw Unlearnable("fit_logistic: all inputs identical");

    // Linear regression on the clamped logits.
    const auto n = static_cast<double>(ys.size());
    double sy = 0.0, sz = 0.0, syy = 0.0, syz = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const double z = logit(std::clamp(ds[i], 0.01, 0.99));
        sy += ys[i];
        sz += z;
        syy += ys[i] * ys[i];
        syz += ys[i] * z;
    }
    const double var = syy - sy * sy / n;
    LogisticModel model;
    model.beta1 = std::max((syz - sy * sz / n) / var, 1e-6);
    model.beta0 = (sz - model.beta1 * sy) / n;

    double sse = logistic_sse(model, ys, ds);
    for (int iter = 0; iter < 100 && sse > 0.0; ++iter) {
        // Normal equations J^T J step = -J^T r for the two parameters.
        double h00 = 0.0, h01 = 0.0, h11 = 0.0, g0 = 0.0, g1 = 0.0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double s = model(ys[i]);
            const double w = s * (1.0 - s);
            const double r = s - ds[i];
            const double j0 = w, j1 = w * ys[i];
            h00 += j0 * j0;
            h01 += j0 * j1;
            h11 += j1 * j1;
            g0 += j0 * r;
            g1 += j1 * r;
        }
        const double ridge = 1e-14 * (h00 + h11);
        h00 += ridge;
        h11 += ridge;
        const double det = h00 * h11 - h01 * h01;
        if (!(det > 0.0) || !std::isfinite(det))
            break;
        const double step0 = -(h11 * g0 - h01 * g1) / det;
        const double step1 = -(h00 * g1 - h01 * g0) / det;

        double scale = 1.0;
        bool improved = false;
        LogisticModel trial = model;
        for (int halving = 0; halving < 50; ++halving, scale *= 0.5) {
            trial.beta0 = model.beta0 + scale * step0;
            trial.beta1 = std::max(model.beta1 + scale * step1, 1e-6);
            const double trial_sse = logistic_sse(trial, ys, ds);
            if (trial_sse < sse) {
                improved = true;
                sse = trial_sse;
                break;
            }
        }
        if (!improved)
            break;
        const double moved = std::abs(trial.beta0 - model.beta0) + std::abs(trial.beta1 - model.beta1);
        model = trial;
        if (moved <= 1e-15 * (1.0 + std::abs(model.beta0) + std::abs(model.beta1)))
            break;
    }
    model.beta1 = std::max(model.beta1, 1e-6);
    return model;
}

double choose_sigma(const LogisticModel& model, double f_t, double delta_max,
                    std::pair<double, double> y_bounds) {
    const double p = std::clamp(f_t / delta_max, 1e-6, 1.0 - 1e-6);
    const double y = (logit(p) - model.beta0) / model.beta1;
    return std::exp(std::clamp(y, y_bounds.first, y_bounds.second));
}

AdaptState AdaptState::from_presamples(double delta_max, Presamples pre, std::size_t relearn_period) {
    if (!(delta_max > 0.0))
        throw InputError("AdaptState: delta_max must be positive");
    if (pre.ys.empty() || pre.ys.size() != pre.deltas.size())
        throw InputError("AdaptState: malformed pre-samples");
    AdaptState s;
    s.delta_max = delta_max;
    s.relearn_period = std::max<std::size_t>(relearn_period, 1);
    const auto [lo, hi] = std::minmax_element(pre.ys.begin(), pre.ys.end());
    s.y_bounds = {*lo - 2.0, *hi + 2.0};
    // Prior: unit slope centred on the pre-sample range, used if the first fit fails.
    s.model = LogisticModel{-0.5 * (*lo + *hi), 1.0};
    s.samples_y = std::move(pre.ys);
    s.samples_delta = std::move(pre.deltas);
    s.relearn();
    return s;
}

void AdaptState::observe(double y, double delta) {
    samples_y.push_back(y);
    samples_delta.push_back(delta);
}

void AdaptState::relearn() {
    std::vector<double> normalized(samples_delta.size());
    for (std::size_t i = 0; i < normalized.size(); ++i)
        normalized[i] = std::clamp(samples_delta[i] / delta_max, 0.0, 1.0);
    try {
        model = fit_logistic(samples_y, normalized);
    } catch (const Unlearnable&) {
        // keep the previous model
    }
}

}  // namespace ssqcv
