#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>

#include "ssqcv/core.hpp"

namespace ssqcv {

/// How the two QAPLIB matrices map onto (A, B).
///
/// `literal` keeps A = matrix 1. `scoring` sets A = -(matrix 1), so that
/// trace_objective reproduces the positive QAP cost sum_ij F_ij D_p(i)p(j)
/// and minimizing ||A - P^T B P|| minimizes that cost.
enum class QapSign { literal, scoring };

/// Parse error with the offending position.
class QaplibError : public InputError {
public:
    using InputError::InputError;
};

/// Parses "n, then n*n integers (matrix 1), then n*n integers (matrix 2)",
/// whitespace separated with arbitrary line wrapping.
GraphInstance parse_qaplib(std::string_view text, std::string name = {}, QapSign sign = QapSign::literal);

/// Reads a QAPLIB .dat file; the instance is named after the file stem.
GraphInstance load_qaplib(const std::filesystem::path& path, QapSign sign = QapSign::scoring);

/// Inverse of parse_qaplib for the same sign convention.
std::string serialize_qaplib(const GraphInstance& inst, QapSign sign = QapSign::literal);

struct SyntheticSpec {
    std::size_t n = 15;
    double gamma = 0.1;
    std::uint64_t seed = 0;
};

/// A symmetric with Unif[0, 1) entries (U + U^T) / 2, P uniform, Z ~ N(0, 1),
/// B = (P + gamma Z) A (P + gamma Z)^T. Returns the instance and P.
std::pair<GraphInstance, Permutation> synth_instance(const SyntheticSpec& spec);

}  // namespace ssqcv
