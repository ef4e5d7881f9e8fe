// Command-line front end: solve, bench, hist.
//
// Exit codes: 0 success, 2 usage or input error, 1 internal failure.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <locale>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ssqcv/experiments.hpp"
#include "ssqcv/qaplib.hpp"
#include "ssqcv/report.hpp"
#include "ssqcv/sampler.hpp"

namespace fs = std::filesystem;
using namespace ssqcv;

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kInput = 2;

void add_sampler_options(CLI::App& cmd, SamplerConfig& cfg) {
    cmd.add_option("--iterations", cfg.total_iterations, "Sampler iterations")->capture_default_str();
    cmd.add_option("--lambda", cfg.lambda, "Perturbation scale for Q")->capture_default_str();
    cmd.add_option("--M", cfg.m, "Sphere points for the delta_max estimate")->capture_default_str();
    cmd.add_option("--L", cfg.l, "Pre-samples for the variance model")->capture_default_str();
    cmd.add_option("--T", cfg.relearn, "Refit period (0: iterations/10)")->capture_default_str();
    cmd.add_option("--exponent", cfg.exponent, "Target-curve exponent")->capture_default_str();
    cmd.add_option("--margin", cfg.margin, "Pre-sample band margin")->capture_default_str();
}

// Writes to `path`, or stdout when empty.
template <class Fn>
void emit(const std::string& path, Fn&& write) {
    if (path.empty()) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot open output file " + path);
    write(out);
    if (!out)
        throw std::runtime_error("failed writing " + path);
}

GraphInstance synthetic_from_flag(const std::string& flag) {
    std::vector<std::string> parts;
    std::stringstream ss(flag);
    for (std::string part; std::getline(ss, part, ',');)
        parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3)
        throw InputError("--synthetic expects n,gamma[,instance_seed]");
    SyntheticSpec spec;
    spec.seed = 1;
    try {
        const long n = std::stol(parts[0]);
        if (n < 2)
            throw InputError("--synthetic: n must be >= 2");
        spec.n = static_cast<std::size_t>(n);
        std::istringstream g(parts[1]);
        g.imbue(std::locale::classic());
        if (!(g >> spec.gamma) || !g.eof())
            throw InputError("--synthetic: invalid gamma '" + parts[1] + "'");
        if (parts.size() == 3)
            spec.seed = std::stoull(parts[2]);
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const InputError*>(&e))
            throw;
        throw InputError("--synthetic: invalid value in '" + flag + "'");
    }
    return synth_instance(spec).first;
}

int run_solve(const std::string& instance_path, const std::string& synthetic, const SamplerConfig& cfg,
              const std::string& out_path, bool trajectory) {
    if (instance_path.empty() == synthetic.empty())
        throw InputError("solve: exactly one of --instance or --synthetic is required");
    const GraphInstance inst = instance_path.empty() ? synthetic_from_flag(synthetic) : load_qaplib(instance_path);
    const SolveResult res = solve(inst, cfg);
    const auto doc = solve_json(inst, cfg, res, trajectory);
    emit(out_path, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    return kOk;
}

int run_bench(const std::string& dir, std::size_t runs, std::uint64_t seed_base, const std::string& baselines_path,
              SamplerConfig cfg, unsigned jobs, const std::string& out_path) {
    if (runs < 1)
        throw InputError("bench: --runs must be >= 1");
    if (!fs::is_directory(dir))
        throw InputError("bench: not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".dat")
            files.push_back(entry.path());
    if (files.empty())
        throw InputError("bench: no .dat instances in " + dir);
    std::sort(files.begin(), files.end(), [](const fs::path& l, const fs::path& r) { return l.stem() < r.stem(); });

    std::map<std::string, Baseline> baselines;
    if (!baselines_path.empty()) {
        std::ifstream in(baselines_path);
        if (!in)
            throw InputError("bench: cannot read baselines " + baselines_path);
        baselines = read_baselines(in);
    }

    std::vector<GraphInstance> instances;
    for (const auto& f : files)
        instances.push_back(load_qaplib(f));

    if (jobs == 0)
        jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<BenchRow> rows;
    for (const auto& inst : instances) {
        // Each run owns its generator; results land in seed order regardless of completion order.
        std::vector<SolveResult> results(runs);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t k; (k = next.fetch_add(1)) < runs;) {
                SamplerConfig run_cfg = cfg;
                run_cfg.seed = seed_base + k;
                results[k] = solve(inst, run_cfg);
            }
        };
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < std::min<std::size_t>(jobs, runs); ++t)
            pool.emplace_back(worker);
        worker();
        pool.clear();

        BenchRow row = make_bench_row(inst.name, std::move(results));
        if (auto it = baselines.find(inst.name); it != baselines.end()) {
            row.optimum = it->second.optimum;
            row.path_value = it->second.path_value;
        }
        rows.push_back(std::move(row));
    }
    emit(out_path, [&](std::ostream& os) { write_bench_csv(os, rows); });
    return kOk;
}

int run_hist(std::size_t n, double gamma, std::size_t m, double lambda, std::uint64_t seed,
             const std::string& out_path) {
    if (n < 2 || m < 1 || !(gamma >= 0.0) || !(lambda >= 0.0))
        throw InputError("hist: need n >= 2, m >= 1, gamma >= 0, lambda >= 0");
    const auto [inst, truth] = synth_instance({n, gamma, seed});
    // Decorrelate the experiment stream from the instance stream.
    const HistogramRun run{m, lambda, seed ^ 0x9E3779B97F4A7C15ULL};
    const HistogramResult res = histogram_experiment(inst, run);
    emit(out_path, [&](std::ostream& os) {
        const auto saved = os.imbue(std::locale::classic());
        os << "# n=" << n << ",gamma=" << gamma << ",m=" << m << ",lambda=" << lambda << ",seed=" << seed;
        const auto precision = os.precision(17);
        os << ",mean_cell=" << res.mean_cell << ",mean_uniform=" << res.mean_uniform << '\n';
        os.precision(precision);
        os.imbue(saved);
        write_histogram_csv(os, res);
    });
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph matching by sampling permutations from a relaxed solution"};
    app.require_subcommand(1);

    SamplerConfig cfg;
    std::string out_path;

    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance and print a JSON result");
    std::string instance_path, synthetic;
    bool trajectory = false;
    solve_cmd->add_option("--instance", instance_path, "QAPLIB .dat file");
    solve_cmd->add_option("--synthetic", synthetic, "Synthetic instance n,gamma[,instance_seed]");
    solve_cmd->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
    solve_cmd->add_option("--out", out_path, "Output file (default stdout)");
    solve_cmd->add_flag("--trajectory", trajectory, "Include objective checkpoints");
    add_sampler_options(*solve_cmd, cfg);

    auto* bench = app.add_subcommand("bench", "Repeated seeded runs over a directory of instances, CSV output");
    std::string dir, baselines_path;
    std::size_t runs = 20;
    std::uint64_t seed_base = 1;
    unsigned jobs = 0;
    bench->add_option("--dir", dir, "Directory of .dat instances")->required();
    bench->add_option("--runs", runs, "Runs per instance")->capture_default_str();
    bench->add_option("--seed-base", seed_base, "Seed of the first run")->capture_default_str();
    bench->add_option("--baselines", baselines_path, "CSV of instance,optimum,path_value");
    bench->add_option("--jobs", jobs, "Worker threads (0: hardware concurrency)")->capture_default_str();
    bench->add_option("--out", out_path, "Output file (default stdout)");
    add_sampler_options(*bench, cfg);

    auto* hist = app.add_subcommand("hist", "Rounded-sample versus uniform-permutation objective histogram data");
    std::size_t hist_n = 15, hist_m = 1000;
    double hist_gamma = 0.1, hist_lambda = 0.0;
    std::uint64_t hist_seed = 1;
    hist->add_option("--n", hist_n, "Dimension")->capture_default_str();
    hist->add_option("--gamma", hist_gamma, "Noise level")->capture_default_str();
    hist->add_option("--m", hist_m, "Samples per method")->capture_default_str();
    hist->add_option("--lambda", hist_lambda, "Perturbation scale")->capture_default_str();
    hist->add_option("--seed", hist_seed, "Seed")->capture_default_str();
    hist->add_option("--out", out_path, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*solve_cmd)
            return run_solve(instance_path, synthetic, cfg, out_path, trajectory);
        if (*bench)
            return run_bench(dir, runs, seed_base, baselines_path, cfg, jobs, out_path);
        return run_hist(hist_n, hist_gamma, hist_m, hist_lambda, hist_seed, out_path);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}
