#include "ssqcv/report.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <locale>
#include <sstream>

namespace ssqcv {

namespace {

std::string trim(std::string s) {
    const auto ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        out.push_back(trim(field));
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::optional<double> parse_optional(const std::string& field, std::size_t line_no) {
    if (field.empty())
        return std::nullopt;
    std::istringstream in(field);
    in.imbue(std::locale::classic());
    double v = 0.0;
    in >> v;
    if (!in || !in.eof())
        throw InputError("baselines: line " + std::to_string(line_no) + ": '" + field + "' is not a number");
    return v;
}

void write_optional(std::ostream& out, const std::optional<double>& v) {
    if (v)
        out << *v;
}

}  // namespace

BenchRow make_bench_row(const std::string& instance, std::vector<SolveResult> results) {
    if (results.empty())
        throw InputError("make_bench_row: no runs");
    std::sort(results.begin(), results.end(), [](const auto& l, const auto& r) { return l.seed < r.seed; });
    BenchRow row;
    row.instance = instance;
    row.runs = results.size();
    row.best_trace = std::numeric_limits<double>::infinity();
    double sum_trace = 0.0, sum_seconds = 0.0;
    for (const auto& r : results) {
        sum_trace += r.best_trace;
        sum_seconds += r.wall_time;
        row.best_trace = std::min(row.best_trace, r.best_trace);
    }
    row.mean_trace = sum_trace / static_cast<double>(row.runs);
    row.mean_seconds = sum_seconds / static_cast<double>(row.runs);
    return row;
}

std::map<std::string, Baseline> read_baselines(std::istream& in) {
    std::map<std::string, Baseline> out;
    std::string line;
    std::size_t line_no = 0;
    bool header = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty() || line[0] == '#')
            continue;
        const auto fields = split_csv_line(line);
        if (header) {
            header = false;
            if (fields.size() != 3 || fields[0] != "instance")
                throw InputError("baselines: expected header 'instance,optimum,path_value'");
            continue;
        }
        if (fields.size() != 3 || fields[0].empty())
            throw InputError("baselines: line " + std::to_string(line_no) + ": expected 3 fields");
        out[fields[0]] = Baseline{parse_optional(fields[1], line_no), parse_optional(fields[2], line_no)};
    }
    return out;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    const auto saved = out.imbue(std::locale::classic());
    const auto precision = out.precision(17);
    out << "instance,runs,mean_trace,best_trace,mean_seconds,optimum,path_value\n";
    for (const auto& r : rows) {
        out << r.instance << ',' << r.runs << ',' << r.mean_trace << ',' << r.best_trace << ',' << r.mean_seconds
            << ',';
        write_optional(out, r.optimum);
        out << ',';
        write_optional(out, r.path_value);
        out << '\n';
    }
    out.precision(precision);
    out.imbue(saved);
}

nlohmann::ordered_json solve_json(const GraphInstance& inst, const SamplerConfig& cfg, const SolveResult& res,
                                  bool with_trajectory) {
    nlohmann::ordered_json j;
    j["instance"] = inst.name;
    j["n"] = inst.size();
    j["best_trace"] = res.best_trace;
    j["best_gm_norm"] = res.best_e;
    j["baseline_gm_norm"] = res.baseline_e;
    j["permutation"] = res.best_p.map();
    j["iterations"] = res.iterations_run;
    j["seed"] = res.seed;
    j["delta_max"] = res.delta_max;
    j["perturbed"] = res.perturbed;
    j["reversed_start"] = res.reversed_start;
    j["wall_time_s"] = res.wall_time;
    j["config"] = {
        {"total_iterations", cfg.total_iterations},
        {"M", cfg.m},
        {"L", cfg.l},
        {"lambda", cfg.lambda},
        {"T", cfg.relearn_period()},
        {"exponent", cfg.exponent},
        {"margin", cfg.margin},
    };
    if (with_trajectory) {
        auto traj = nlohmann::ordered_json::array();
        for (const auto& c : res.trajectory)
            traj.push_back({c.t, c.energy, c.best_energy});
        j["trajectory"] = std::move(traj);
    }
    return j;
}

}  // namespace ssqcv
