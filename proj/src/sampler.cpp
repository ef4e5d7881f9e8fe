#include "ssqcv/sampler.hpp"

#include <chrono>
#include <cmath>

#include "ssqcv/lap.hpp"
#include "ssqcv/rounding.hpp"

namespace ssqcv {

std::size_t SamplerConfig::relearn_period() const {
    if (relearn > 0)
        return relearn;
    return std::max<std::size_t>(1, total_iterations / 10);
}

void SamplerConfig::validate() const {
    if (total_iterations < 1 || m < 1 || l < 2)
        throw InputError("SamplerConfig: total_iterations and M must be >= 1, L >= 2");
    if (!(lambda >= 0.0))
        throw InputError("SamplerConfig: lambda must be non-negative");
    if (!(exponent > 0.0))
        throw InputError("SamplerConfig: exponent must be positive");
    if (!(margin > 0.0 && margin < 0.5))
        throw InputError("SamplerConfig: margin must lie in (0, 1/2)");
    fw.validate();
}

double acceptance(double e, double e_star, std::size_t /*t*/) { return e_star <= e ? 1.0 : 0.0; }

namespace {

AdaptState learn_initial(const Matrix& q, const Vector& x0, double delta_max, const SamplerConfig& cfg,
                         Rng& rng) {
    try {
        auto pre = generate_presamples(q, x0, delta_max, cfg.l, cfg.margin, rng);
        return AdaptState::from_presamples(delta_max, std::move(pre), cfg.relearn_period());
    } catch (const PresampleFailure&) {
        // Degenerate partition: fall back to a fixed prior over a generic range.
        const double dmax = delta_max > 0.0 ? delta_max : std::sqrt(2.0);
        Presamples prior{{-12.0, 4.0}, {0.0, dmax}};
        return AdaptState::from_presamples(dmax, std::move(prior), cfg.relearn_period());
    }
}

}  // namespace

SolveResult solve(const GraphInstance& inst, const SamplerConfig& cfg) {
    inst.validate();
    cfg.validate();
    const std::size_t n = inst.size();
    if (n < 2)
        throw InputError("ssqcv: instance dimension must be >= 2");
    const auto start = std::chrono::steady_clock::now();

    Rng rng(cfg.seed);
    SolveResult res;
    res.seed = cfg.seed;

    const PartitionMatrix relaxed = frank_wolfe(inst, cfg.fw);
    PartitionMatrix q = relaxed;
    if (fixes_constant_direction(relaxed.q)) {
        q = perturb(relaxed, cfg.lambda, rng);
        res.perturbed = true;
    }

    const Permutation p0 = project_to_permutation(relaxed.q);
    res.baseline_e = gm_objective(inst, p0);

    Vector x;
    try {
        x = reverse_point(q.q, p0);
        x.normalize();
        res.reversed_start = true;
    } catch (const ReverseUnavailable&) {
        x = rng.sphere_point(n);
    }
    Permutation p = round_point(q, x);
    double e = gm_objective(inst, p);

    res.best_p = p0;
    res.best_e = res.baseline_e;
    if (e < res.best_e) {
        res.best_p = p;
        res.best_e = e;
    }

    const double delta_max = estimate_delta_max(q.q, x, cfg.m, rng);
    AdaptState adapt = learn_initial(q.q, x, delta_max, cfg, rng);
    res.delta_max = adapt.delta_max;

    const TargetFunction target{cfg.total_iterations, cfg.exponent};
    const std::size_t period = cfg.relearn_period();
    const std::size_t stride = std::max<std::size_t>(1, cfg.total_iterations / 1000);
    res.trajectory.reserve(cfg.total_iterations / stride + 1);
    res.trajectory.push_back({0, e, res.best_e});
    if (cfg.record_tracking)
        res.tracking.reserve(cfg.total_iterations);

    for (std::size_t t = 1; t <= cfg.total_iterations; ++t) {
        const double f_t = target_value(target, adapt.delta_max, t);
        const double sigma2 = choose_sigma(adapt.model, f_t, adapt.delta_max, adapt.y_bounds);
        const double y = std::log(sigma2);

        Vector x_star = propose(x, sigma2, rng);
        Permutation p_star = round_point(q, x_star);
        const double e_star = gm_objective(inst, p_star);
        const double delta = perm_distance(p, p_star);
        adapt.observe(y, delta);
        if (cfg.record_tracking)
            res.tracking.push_back({t, y, delta, f_t});

        const double u = rng.uniform();
        if (u <= acceptance(e, e_star, t)) {
            x = std::move(x_star);
            p = std::move(p_star);
            e = e_star;
            if (e < res.best_e) {
                res.best_e = e;
                res.best_p = p;
            }
        }

        if (t % stride == 0)
            res.trajectory.push_back({t, e, res.best_e});
        if (t % period == 0 && t < cfg.total_iterations)
            adapt.relearn();
    }

    res.iterations_run = cfg.total_iterations;
    res.best_trace = trace_objective(inst, res.best_p);
    res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

}  // namespace ssqcv
