#include "srlu/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>
#include <variant>

#include "srlu/factorizations.hpp"
#include "srlu/matrix_market.hpp"
#include "srlu/parallel.hpp"
#include "srlu/rng.hpp"

namespace srlu::bench {

namespace {

constexpr double kExactRankThreshold = 1e-300;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_linear(double log_first, double log_last, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        out[i] = std::exp(log_first + (log_last - log_first) * t);
    }
    return out;
}

}  // namespace

std::vector<double> spectrum_values(const SpectrumSpec& spec) {
    if (spec.n == 0) throw ParameterError("spectrum: n must be positive");
    switch (spec.kind) {
        case SpectrumKind::step_exp: {
            if (spec.r < 1 || spec.r >= spec.n)
                throw ParameterError("step_exp spectrum needs 1 <= r < n (r=" + std::to_string(spec.r) +
                                     ", n=" + std::to_string(spec.n) + ")");
            std::vector<double> s(spec.r, 1.0);
            const auto tail = log_linear(-10.0, -200.0, spec.n - spec.r);
            s.insert(s.end(), tail.begin(), tail.end());
            return s;
        }
        case SpectrumKind::exp_decay:
            return log_linear(0.0, -100.0, spec.n);
        case SpectrumKind::custom: {
            if (spec.values.size() != spec.n)
                throw ParameterError("custom spectrum has " + std::to_string(spec.values.size()) +
                                     " values for n=" + std::to_string(spec.n));
            for (std::size_t i = 0; i < spec.n; ++i) {
                if (!(spec.values[i] > 0.0) || !std::isfinite(spec.values[i]))
                    throw ParameterError("custom spectrum values must be positive and finite");
                if (i > 0 && spec.values[i] > spec.values[i - 1])
                    throw ParameterError("custom spectrum must be non-increasing");
            }
            return spec.values;
        }
    }
    throw ParameterError("unknown spectrum kind");
}

template <Scalar T>
DenseMatrix<T> gen_test_matrix(const SpectrumSpec& spec, std::size_t m) {
    const auto sigma = spectrum_values(spec);
    const std::size_t n = spec.n;
    if (m == 0) m = n;
    if (m < n) throw ParameterError("gen_test_matrix: m=" + std::to_string(m) + " is below n=" + std::to_string(n));
    DenseMatrix<T> w = orthonormal_basis(gaussian_matrix<T>(m, n, derive_seed(spec.seed, 0)));
    const DenseMatrix<T> z = orthonormal_basis(gaussian_matrix<T>(n, n, derive_seed(spec.seed, 1)));
    for (std::size_t j = 0; j < n; ++j)
        for (T& v : w.col(j)) v *= sigma[j];
    return matmul(w, z.adjoint());
}

template DenseMatrix<double> gen_test_matrix(const SpectrumSpec&, std::size_t);
template DenseMatrix<cplx> gen_test_matrix(const SpectrumSpec&, std::size_t);

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::sparse_lu: return "sparse_lu";
        case Algorithm::gaussian_lu: return "gaussian_lu";
        case Algorithm::svd_oracle: return "svd_oracle";
    }
    return "unknown";
}

std::string_view to_string(SpectrumKind k) noexcept {
    switch (k) {
        case SpectrumKind::step_exp: return "step_exp";
        case SpectrumKind::exp_decay: return "exp_decay";
        case SpectrumKind::custom: return "custom";
    }
    return "unknown";
}

std::string MatrixSource::describe() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::spectrum:
            out << to_string(spectrum.kind) << "(n=" << spectrum.n;
            if (spectrum.kind == SpectrumKind::step_exp) out << ",r=" << spectrum.r;
            if (m != 0 && m != spectrum.n) out << ",m=" << m;
            out << ",seed=" << spectrum.seed << ")";
            break;
        case Kind::zero:
            out << "zero(m=" << (m == 0 ? n : m) << ",n=" << n << ")";
            break;
        case Kind::file:
            out << "file(" << path.string() << ")";
            break;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> words(std::string_view s) {
    std::vector<std::string_view> out;
    for (auto w : split_on(s, ' '))
        if (!w.empty()) out.push_back(w);
    return out;
}

template <class Number>
Number to_number(std::string_view token, std::size_t line, std::string_view what) {
    Number value{};
    const char* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc() || ptr != end)
        throw ConfigError("invalid " + std::string(what) + " '" + std::string(token) + "'", line);
    return value;
}

template <class Number>
std::vector<Number> number_list(std::string_view s, std::size_t line, std::string_view what) {
    std::vector<Number> out;
    for (auto tok : split_on(s, ',')) out.push_back(to_number<Number>(tok, line, what));
    return out;
}

MatrixSource parse_matrix(std::string_view value, std::size_t line) {
    const auto tokens = words(value);
    if (tokens.empty()) throw ConfigError("empty matrix spec", line);
    std::map<std::string, std::string, std::less<>> kv;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto eq = tokens[i].find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw ConfigError("expected key=value in matrix spec, got '" + std::string(tokens[i]) + "'", line);
        if (!kv.emplace(std::string(tokens[i].substr(0, eq)), std::string(tokens[i].substr(eq + 1))).second)
            throw ConfigError("duplicate matrix key '" + std::string(tokens[i].substr(0, eq)) + "'", line);
    }
    auto take = [&](std::string_view key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto take_size = [&](std::string_view key, bool required) -> std::size_t {
        auto v = take(key);
        if (!v) {
            if (required) throw ConfigError("matrix spec is missing '" + std::string(key) + "'", line);
            return 0;
        }
        return to_number<std::size_t>(*v, line, key);
    };

    MatrixSource src;
    const std::string_view kind = tokens[0];
    if (kind == "step_exp" || kind == "exp_decay" || kind == "custom") {
        src.kind = MatrixSource::Kind::spectrum;
        if (kind == "step_exp") {
            src.spectrum.kind = SpectrumKind::step_exp;
            src.spectrum.n = take_size("n", true);
            src.spectrum.r = take_size("r", true);
        } else if (kind == "exp_decay") {
            src.spectrum.kind = SpectrumKind::exp_decay;
            src.spectrum.n = take_size("n", true);
        } else {
            src.spectrum.kind = SpectrumKind::custom;
            auto v = take("values");
            if (!v) throw ConfigError("custom matrix spec is missing 'values'", line);
            src.spectrum.values = number_list<double>(*v, line, "spectrum value");
            src.spectrum.n = src.spectrum.values.size();
        }
        src.m = take_size("m", false);
        if (auto s = take("seed")) src.spectrum.seed = to_number<std::uint64_t>(*s, line, "seed");
        try {
            (void)spectrum_values(src.spectrum);
        } catch (const ParameterError& e) {
            throw ConfigError(e.what(), line);
        }
        if (src.m != 0 && src.m < src.spectrum.n) throw ConfigError("matrix m must be >= n", line);
    } else if (kind == "zero") {
        src.kind = MatrixSource::Kind::zero;
        src.n = take_size("n", true);
        src.m = take_size("m", false);
        if (src.n == 0) throw ConfigError("zero matrix needs n > 0", line);
    } else if (kind == "file") {
        src.kind = MatrixSource::Kind::file;
        auto p = take("path");
        if (!p || p->empty()) throw ConfigError("file matrix spec is missing 'path'", line);
        src.path = *p;
    } else {
        throw ConfigError("unknown matrix kind '" + std::string(kind) + "'", line);
    }
    if (!kv.empty()) throw ConfigError("unknown matrix key '" + kv.begin()->first + "'", line);
    return src;
}

Algorithm parse_algorithm(std::string_view s, std::size_t line) {
    for (auto a : {Algorithm::sparse_lu, Algorithm::gaussian_lu, Algorithm::svd_oracle})
        if (s == to_string(a)) return a;
    throw ConfigError("unknown algorithm '" + std::string(s) + "'", line);
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string raw;
    std::size_t line = 0;
    std::map<std::string, std::size_t, std::less<>> seen;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = raw;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line);
        const std::string key(trim(text.substr(0, eq)));
        const std::string_view value = trim(text.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key", line);
        if (value.empty()) throw ConfigError("missing value for '" + key + "'", line);
        if (key != "matrix" && !seen.emplace(key, line).second)
            throw ConfigError("duplicate key '" + key + "'", line);

        if (key == "matrix") {
            cfg.matrices.push_back(parse_matrix(value, line));
        } else if (key == "ranks") {
            if (value == "step") {
                cfg.ranks_from_step = true;
            } else {
                cfg.ranks = number_list<std::size_t>(value, line, "rank");
                for (auto r : cfg.ranks)
                    if (r == 0) throw ConfigError("ranks must be positive", line);
            }
        } else if (key == "algorithms") {
            cfg.algorithms.clear();
            for (auto tok : split_on(value, ',')) cfg.algorithms.push_back(parse_algorithm(tok, line));
        } else if (key == "seeds") {
            cfg.seeds = number_list<std::uint64_t>(value, line, "seed");
        } else if (key == "mode") {
            if (value == "practical") cfg.mode = SizingMode::practical;
            else if (value == "theoretical") cfg.mode = SizingMode::theoretical;
            else throw ConfigError("mode must be practical or theoretical", line);
        } else if (key == "epsilon" || key == "delta") {
            const double v = to_number<double>(value, line, key);
            if (!(v > 0.0 && v < 1.0)) throw ConfigError(key + " must lie in (0, 1)", line);
            (key == "epsilon" ? cfg.epsilon : cfg.delta) = v;
        } else if (key == "field") {
            if (value == "real") cfg.field = Field::real64;
            else if (value == "complex") cfg.field = Field::complex128;
            else throw ConfigError("field must be real or complex", line);
        } else if (key == "threads") {
            cfg.threads = to_number<int>(value, line, "thread count");
            if (cfg.threads < 0) throw ConfigError("threads must be >= 0", line);
        } else if (key == "output") {
            cfg.output = std::string(value);
        } else if (key == "format") {
            if (value == "csv") cfg.format = OutputFormat::csv;
            else if (value == "jsonl") cfg.format = OutputFormat::jsonl;
            else throw ConfigError("format must be csv or jsonl", line);
        } else {
            throw ConfigError("unknown key '" + key + "'", line);
        }
    }
    if (!cfg.matrices.empty() && cfg.ranks.empty() && !cfg.ranks_from_step)
        throw ConfigError("no ranks given", line);
    if (cfg.ranks_from_step)
        for (const auto& m : cfg.matrices)
            if (m.kind != MatrixSource::Kind::spectrum || m.spectrum.kind != SpectrumKind::step_exp)
                throw ConfigError("ranks = step needs every matrix to be step_exp", line);
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'", 0);
    return parse_config(in);
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

namespace {

AnyMatrix build_matrix(const MatrixSource& src, Field field) {
    switch (src.kind) {
        case MatrixSource::Kind::spectrum:
            if (field == Field::complex128) return gen_test_matrix<cplx>(src.spectrum, src.m);
            return gen_test_matrix<double>(src.spectrum, src.m);
        case MatrixSource::Kind::zero: {
            const std::size_t m = src.m == 0 ? src.n : src.m;
            if (field == Field::complex128) return SparseMatrix<cplx>::from_triplets(m, src.n, {});
            return SparseMatrix<double>::from_triplets(m, src.n, {});
        }
        case MatrixSource::Kind::file:
            return mm_read(src.path);
    }
    throw Error("unknown matrix source");
}

std::vector<double> spectrum_of(const AnyMatrix& a) {
    return std::visit(
        [](const auto& m) {
            if constexpr (requires { m.to_dense(); }) return singular_values(m.to_dense());
            else return singular_values(m);
        },
        a);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <class Matrix>
void run_decomposition(const Matrix& a, Algorithm alg, const RandLuParams& params, BenchRecord& rec) {
    try {
        const auto res = alg == Algorithm::sparse_lu ? sparse_randomized_lu(a, params)
                                                     : gaussian_randomized_lu(a, params);
        rec.error = approximation_error(a, res);
        rec.times = res.elapsed;
    } catch (const NumericalError& e) {
        rec.ok = false;
        rec.error = kNaN;
        rec.message = e.what();
    }
}

}  // namespace

std::vector<BenchRecord> run_experiment(const ExperimentConfig& config) {
    if (config.threads > 0) set_num_threads(config.threads);
    using Key = std::tuple<std::size_t, std::size_t, int, std::uint64_t>;
    std::vector<std::pair<Key, BenchRecord>> cells;

    for (std::size_t mi = 0; mi < config.matrices.size(); ++mi) {
        const MatrixSource& src = config.matrices[mi];
        const AnyMatrix a = build_matrix(src, config.field);
        const std::size_t m = rows_of(a);
        const std::size_t n = cols_of(a);
        const auto sigma_start = std::chrono::steady_clock::now();
        const std::vector<double> sigma = spectrum_of(a);
        const double svd_seconds = seconds_since(sigma_start);
        const std::vector<std::size_t> ranks =
            config.ranks_from_step ? std::vector<std::size_t>{src.spectrum.r} : config.ranks;
        const std::string descriptor = src.describe();

        for (const std::size_t r : ranks) {
            if (r > sigma.size())
                throw ConfigError("rank " + std::to_string(r) + " exceeds min(m, n) of " + descriptor, 0);
            const double delta_r = tail_energy(sigma, r);
            for (const Algorithm alg : config.algorithms) {
                for (const std::uint64_t seed : config.seeds) {
                    BenchRecord rec;
                    rec.algorithm = std::string(to_string(alg));
                    rec.matrix = descriptor;
                    rec.n = n;
                    rec.m = m;
                    rec.r = r;
                    rec.seed = seed;
                    rec.delta_r = delta_r;
                    rec.exact_rank = delta_r <= kExactRankThreshold;

                    if (alg == Algorithm::svd_oracle) {
                        rec.error = delta_r;
                        rec.times.total = svd_seconds;
                    } else {
                        RandLuParams params;
                        try {
                            params = default_params(r, m, n, field_of_matrix(a), seed, config.mode, config.epsilon,
                                                    config.delta);
                        } catch (const ParameterError& e) {
                            throw ConfigError(std::string(e.what()) + " for " + descriptor, 0);
                        }
                        rec.k1 = params.k1;
                        rec.l1 = params.l1;
                        rec.k2 = params.k2;
                        rec.l2 = params.l2;
                        std::visit([&](const auto& mat) { run_decomposition(mat, alg, params, rec); }, a);
                    }
                    rec.ratio = rec.exact_rank ? kNaN : rec.error / rec.delta_r;
                    cells.emplace_back(Key{mi, r, static_cast<int>(alg), seed}, std::move(rec));
                }
            }
        }
    }

    std::stable_sort(cells.begin(), cells.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<BenchRecord> out;
    out.reserve(cells.size());
    for (auto& c : cells) out.push_back(std::move(c.second));
    return out;
}

std::vector<BenchRecord> run_experiment(const std::filesystem::path& config_path) {
    return run_experiment(parse_config(config_path));
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> parse_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw ParseError("unterminated quote", line_no);
    fields.push_back(std::move(cur));
    return fields;
}

double to_double(const std::string& s, std::size_t line_no) {
    if (s == "nan" || s == "-nan") return kNaN;
    double v = 0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end) throw ParseError("invalid number '" + s + "'", line_no);
    return v;
}

template <class Number>
Number to_integer(const std::string& s, std::size_t line_no) {
    Number v{};
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end) throw ParseError("invalid integer '" + s + "'", line_no);
    return v;
}

nlohmann::json json_number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << csv_field(r.algorithm) << ',' << csv_field(r.matrix) << ',' << r.n << ',' << r.m << ',' << r.r << ','
            << r.k1 << ',' << r.l1 << ',' << r.k2 << ',' << r.l2 << ',' << r.seed << ',' << fmt(r.error) << ','
            << fmt(r.delta_r) << ',' << fmt(r.ratio) << ',' << fmt(r.times.sketch1) << ',' << fmt(r.times.lu1) << ','
            << fmt(r.times.sketch2) << ',' << fmt(r.times.pinv) << ',' << fmt(r.times.lu2) << ','
            << fmt(r.times.total) << '\n';
    }
}

void write_jsonl(const std::vector<BenchRecord>& records, std::ostream& out) {
    for (const auto& r : records) {
        nlohmann::json j = {
            {"algorithm", r.algorithm},
            {"matrix", r.matrix},
            {"n", r.n},
            {"m", r.m},
            {"r", r.r},
            {"k1", r.k1},
            {"l1", r.l1},
            {"k2", r.k2},
            {"l2", r.l2},
            {"seed", r.seed},
            {"error", json_number(r.error)},
            {"delta_r", json_number(r.delta_r)},
            {"ratio", json_number(r.ratio)},
            {"t_sketch1", r.times.sketch1},
            {"t_lu1", r.times.lu1},
            {"t_sketch2", r.times.sketch2},
            {"t_pinv", r.times.pinv},
            {"t_lu2", r.times.lu2},
            {"t_total", r.times.total},
            {"ok", r.ok},
            {"exact_rank", r.exact_rank},
        };
        if (!r.message.empty()) j["message"] = r.message;
        out << j.dump() << '\n';
    }
}

std::vector<BenchRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw ParseError("missing or unexpected CSV header", 1);
    std::vector<BenchRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = parse_csv_line(line, line_no);
        if (f.size() != 19) throw ParseError("expected 19 fields, got " + std::to_string(f.size()), line_no);
        BenchRecord r;
        r.algorithm = f[0];
        r.matrix = f[1];
        r.n = to_integer<std::size_t>(f[2], line_no);
        r.m = to_integer<std::size_t>(f[3], line_no);
        r.r = to_integer<std::size_t>(f[4], line_no);
        r.k1 = to_integer<std::size_t>(f[5], line_no);
        r.l1 = to_integer<std::size_t>(f[6], line_no);
        r.k2 = to_integer<std::size_t>(f[7], line_no);
        r.l2 = to_integer<std::size_t>(f[8], line_no);
        r.seed = to_integer<std::uint64_t>(f[9], line_no);
        r.error = to_double(f[10], line_no);
        r.delta_r = to_double(f[11], line_no);
        r.ratio = to_double(f[12], line_no);
        r.times.sketch1 = to_double(f[13], line_no);
        r.times.lu1 = to_double(f[14], line_no);
        r.times.sketch2 = to_double(f[15], line_no);
        r.times.pinv = to_double(f[16], line_no);
        r.times.lu2 = to_double(f[17], line_no);
        r.times.total = to_double(f[18], line_no);
        r.ok = !std::isnan(r.error);
        r.exact_rank = r.delta_r <= kExactRankThreshold;
        out.push_back(std::move(r));
    }
    return out;
}

void emit_results(const std::vector<BenchRecord>& records, const std::filesystem::path& path, OutputFormat format) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    if (format == OutputFormat::csv) write_csv(records, out);
    else write_jsonl(records, out);
    out.flush();
    if (!out) throw Error("write to '" + path.string() + "' failed");
}

// ---------------------------------------------------------------------------
// Cost
// ---------------------------------------------------------------------------

CostBreakdown estimate_cost(std::size_t m, std::size_t n, std::size_t nnz, const RandLuParams& params,
                            bool sparse) {
    const double dm = static_cast<double>(m);
    const double dn = static_cast<double>(n);
    const double k1 = static_cast<double>(params.k1);
    const double l1 = static_cast<double>(params.l1);
    const double k2 = static_cast<double>(params.k2);
    const double l2 = static_cast<double>(params.l2);
    const double touch_a = sparse ? static_cast<double>(nnz) : dm * dn;
    const double log_k1 = params.k1 > 0 ? std::log2(k1) : 0.0;
    const double log_k2 = params.k2 > 0 ? std::log2(k2) : 0.0;

    CostBreakdown c;
    c.terms = {
        dn + l1 * k1,
        touch_a + dm * l1 * log_k1,
        dm * k1 * k1,
        dm + l2 * k2,
        dm * k1 + k1 * l2 * log_k2 + k2 * k1 * k1,
        touch_a + dn * l2 * log_k2 + k2 * k1 * dn,
        k2 * k2 * dn,
        dm * k1 * k1,
    };
    for (double t : c.terms) c.total += t;
    return c;
}

}  // namespace srlu::bench
