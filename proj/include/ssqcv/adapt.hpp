#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ssqcv/core.hpp"
#include "ssqcv/random.hpp"

namespace ssqcv {

double logistic(double z);
double logit(double p);

/// Normalized permutation-change model: d(y) = logistic(beta0 + beta1 y), y = log(sigma^2).
struct LogisticModel {
    double beta0 = 0.0;
    double beta1 = 1.0;

    double operator()(double y) const { return logistic(beta0 + beta1 * y); }
};

/// f_t = delta_max (1 - (t / total_iterations)^exponent).
struct TargetFunction {
    std::size_t total_iterations = 1;
    double exponent = 0.6;
};

/// The fit has nothing to learn from (constant responses or constant inputs).
class Unlearnable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pre-sampling could not bracket the margin band within its attempt budget.
class PresampleFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double target_value(const TargetFunction& f, double delta_max, std::size_t t);

/// Sphere point drawn from N(x, sigma2 I) and projected back onto the unit sphere.
Vector propose(const Vector& x, double sigma2, Rng& rng);

/// Mean of ||P(x0) - P(z_i)||_F over M uniform sphere points z_i.
double estimate_delta_max(const Matrix& q, const Vector& x0, std::size_t m, Rng& rng);

struct Presamples {
    std::vector<double> ys;
    std::vector<double> deltas;
};

/// Log-variance pre-samples spanning the band [margin, 1 - margin] of
/// delta / delta_max. The first two entries are the anchors y_a < y_b; the
/// remaining L - 2 are drawn uniformly between the anchors, with the bracket
/// tightened whenever a draw falls outside the band.
Presamples generate_presamples(const Matrix& q, const Vector& x0, double delta_max, std::size_t l,
                               double margin, Rng& rng);

/// Least-squares logistic fit. Initial guess from linear regression on
/// logit(clamp(d, 0.01, 0.99)), then damped Gauss-Newton (at most 100
/// iterations, step halving on non-decrease). beta1 is kept >= 1e-6.
LogisticModel fit_logistic(std::span<const double> ys, std::span<const double> deltas_normalized);

/// Sum of squared residuals of `model` on the data.
double logistic_sse(const LogisticModel& model, std::span<const double> ys, std::span<const double> ds);

/// sigma^2 = exp(y*), y* the model inverse at f_t / delta_max, clamped to y_bounds.
double choose_sigma(const LogisticModel& model, double f_t, double delta_max,
                    std::pair<double, double> y_bounds);

/// Learned state of the variance controller for a single sampler run.
struct AdaptState {
    double delta_max = 0.0;
    std::vector<double> samples_y;
    std::vector<double> samples_delta;
    LogisticModel model;
    std::size_t relearn_period = 1;
    std::pair<double, double> y_bounds{-1.0, 1.0};

    /// Seeds the state from pre-samples and fits the first model.
    static AdaptState from_presamples(double delta_max, Presamples pre, std::size_t relearn_period);

    void observe(double y, double delta);
    /// Refit on all samples. Keeps the previous model if the data is unlearnable.
    void relearn();
};

}  // namespace ssqcv
