#include "ssqcv/experiments.hpp"

#include <iomanip>
#include <locale>
#include <numeric>

#include "ssqcv/random.hpp"
#include "ssqcv/rounding.hpp"

namespace ssqcv {

double mean(const std::vector<double>& v) {
    if (v.empty())
        return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

HistogramResult histogram_experiment(const GraphInstance& inst, const HistogramRun& run, const FwConfig& fw) {
    inst.validate();
    if (run.m < 1)
        throw InputError("histogram_experiment: m must be >= 1");
    if (!(run.lambda >= 0.0))
        throw InputError("histogram_experiment: lambda must be non-negative");

    Rng rng(run.seed);
    PartitionMatrix q = frank_wolfe(inst, fw);
    if (run.lambda > 0.0)
        q = perturb(q, run.lambda, rng);

    const std::size_t n = inst.size();
    HistogramResult out;
    out.cell_norms.reserve(run.m);
    out.uniform_norms.reserve(run.m);
    for (std::size_t i = 0; i < run.m; ++i)
        out.cell_norms.push_back(gm_objective(inst, round_point(q, rng.normal_vector(n))));
    for (std::size_t i = 0; i < run.m; ++i)
        out.uniform_norms.push_back(gm_objective(inst, rng.permutation(n)));
    out.mean_cell = mean(out.cell_norms);
    out.mean_uniform = mean(out.uniform_norms);
    return out;
}

void write_histogram_csv(std::ostream& out, const HistogramResult& result) {
    const auto saved = out.imbue(std::locale::classic());
    const auto precision = out.precision(17);
    out << "label,norm\n";
    for (double v : result.cell_norms)
        out << "cell," << v << '\n';
    for (double v : result.uniform_norms)
        out << "uniform," << v << '\n';
    out.precision(precision);
    out.imbue(saved);
}

}  // namespace ssqcv
