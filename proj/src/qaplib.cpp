#include "ssqcv/qaplib.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>
#include <vector>

#include "ssqcv/random.hpp"

namespace ssqcv {

namespace {

struct Token {
    std::string_view text;
    std::size_t line;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1, i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
            ++i;
        } else {
            const std::size_t begin = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
                ++i;
            out.push_back({text.substr(begin, i - begin), line});
        }
    }
    return out;
}

long long parse_integer(const Token& tok, std::size_t index) {
    long long value = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    if (first != last && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        std::ostringstream msg;
        msg << "qaplib: token " << index + 1 << " ('" << tok.text << "') on line " << tok.line
            << " is not an integer";
        throw QaplibError(msg.str());
    }
    return value;
}

}  // namespace

GraphInstance parse_qaplib(std::string_view text, std::string name, QapSign sign) {
    const auto tokens = tokenize(text);
    if (tokens.empty())
        throw QaplibError("qaplib: empty input, expected dimension n");
    const long long n = parse_integer(tokens[0], 0);
    if (n <= 0)
        throw QaplibError("qaplib: dimension n must be positive (line " + std::to_string(tokens[0].line) + ")");
    if (n > 100000)
        throw QaplibError("qaplib: dimension n too large");
    const std::size_t expected = 1 + 2 * static_cast<std::size_t>(n * n);
    if (tokens.size() != expected) {
        std::ostringstream msg;
        msg << "qaplib: expected " << expected << " tokens, found " << tokens.size();
        throw QaplibError(msg.str());
    }

    GraphInstance inst{Matrix(n, n), Matrix(n, n), std::move(name)};
    std::size_t k = 1;
    for (Matrix* m : {&inst.a, &inst.b})
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j, ++k)
                (*m)(i, j) = static_cast<double>(parse_integer(tokens[k], k));
    if (sign == QapSign::scoring)
        inst.a = -inst.a;
    return inst;
}

GraphInstance load_qaplib(const std::filesystem::path& path, QapSign sign) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("qaplib: cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_qaplib(buf.str(), path.stem().string(), sign);
}

std::string serialize_qaplib(const GraphInstance& inst, QapSign sign) {
    inst.validate();
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out << std::setprecision(17);
    out << inst.size() << "\n\n";
    const Matrix first = sign == QapSign::scoring ? Matrix(-inst.a) : inst.a;
    for (const Matrix* m : {&first, &inst.b}) {
        for (Eigen::Index i = 0; i < m->rows(); ++i) {
            for (Eigen::Index j = 0; j < m->cols(); ++j)
                out << (j ? " " : "") << (*m)(i, j);
            out << '\n';
        }
        out << '\n';
    }
    return out.str();
}

std::pair<GraphInstance, Permutation> synth_instance(const SyntheticSpec& spec) {
    if (spec.n < 1 || !(spec.gamma >= 0.0))
        throw InputError("synth_instance: need n >= 1 and gamma >= 0");
    const auto n = static_cast<Eigen::Index>(spec.n);
    Rng rng(spec.seed);

    Matrix u(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            u(i, j) = rng.uniform();
    Matrix a = 0.5 * (u + u.transpose());

    Permutation p = rng.permutation(spec.n);
    Matrix z(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            z(i, j) = rng.normal();
    const Matrix m = p.to_matrix() + spec.gamma * z;
    Matrix b = m * a * m.transpose();

    std::ostringstream name;
    name.imbue(std::locale::classic());
    name << "synthetic_n" << spec.n << "_g" << spec.gamma << "_s" << spec.seed;
    return {GraphInstance{std::move(a), std::move(b), name.str()}, std::move(p)};
}

}  // namespace ssqcv
