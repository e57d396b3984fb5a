// srlu: generate test matrices, run experiments, estimate costs and
// decompose Matrix Market files with the sparse randomized LU.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "srlu/bench.hpp"
#include "srlu/matrix_market.hpp"
#include "srlu/parallel.hpp"
#include "srlu/randlu.hpp"

namespace {

using namespace srlu;

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

struct Common {
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::string mode = "practical";
    std::string format = "csv";
};

SizingMode parse_mode(const std::string& s) {
    return s == "theoretical" ? SizingMode::theoretical : SizingMode::practical;
}

void add_common(CLI::App& cmd, Common& c, bool with_format) {
    cmd.add_option("--seed", c.seed, "Random seed");
    cmd.add_option("--threads", c.threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
    cmd.add_option("--mode", c.mode, "Sketch sizing")->check(CLI::IsMember({"practical", "theoretical"}));
    if (with_format) cmd.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
}

void write_index_list(const Permutation& p, const std::string& path, const char* what) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << "%%MatrixMarket matrix array real general\n";
    out << "% " << what << ": 0-based source indices; entry i is p[i]\n";
    out << p.size() << " 1\n";
    for (std::size_t i = 0; i < p.size(); ++i) out << p[i] << '\n';
    if (!out) throw Error("write to '" + path + "' failed");
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
    std::string kind = "exp_decay";
    std::size_t n = 0;
    std::size_t r = 0;
    std::size_t m = 0;
    std::vector<double> values;
    std::string field = "real";
    std::string output;
};

int run_gen(const GenArgs& g, const Common& c) {
    bench::SpectrumSpec spec;
    spec.kind = g.kind == "step_exp"    ? bench::SpectrumKind::step_exp
                : g.kind == "custom"    ? bench::SpectrumKind::custom
                                        : bench::SpectrumKind::exp_decay;
    spec.n = spec.kind == bench::SpectrumKind::custom ? g.values.size() : g.n;
    spec.r = g.r;
    spec.values = g.values;
    spec.seed = c.seed.value_or(0);
    AnyMatrix a = g.field == "complex" ? AnyMatrix(bench::gen_test_matrix<cplx>(spec, g.m))
                                       : AnyMatrix(bench::gen_test_matrix<double>(spec, g.m));
    mm_write(a, std::filesystem::path(g.output));
    return 0;
}

// --- run -------------------------------------------------------------------

struct RunArgs {
    std::string config;
    std::string output;
};

int run_run(const RunArgs& args, const Common& c, const CLI::App& cmd) {
    bench::ExperimentConfig cfg = bench::parse_config(std::filesystem::path(args.config));
    if (c.seed) cfg.seeds = {*c.seed};
    if (c.threads > 0) cfg.threads = c.threads;
    if (cmd.count("--mode")) cfg.mode = parse_mode(c.mode);
    if (cmd.count("--format")) cfg.format = c.format == "jsonl" ? bench::OutputFormat::jsonl : bench::OutputFormat::csv;
    if (!args.output.empty()) cfg.output = args.output;

    const auto records = bench::run_experiment(cfg);
    if (cfg.output.empty()) {
        if (cfg.format == bench::OutputFormat::csv) bench::write_csv(records, std::cout);
        else bench::write_jsonl(records, std::cout);
    } else {
        bench::emit_results(records, cfg.output, cfg.format);
    }
    std::size_t failed = 0;
    for (const auto& r : records) failed += r.ok ? 0 : 1;
    if (failed > 0) {
        std::cerr << "srlu: " << failed << " of " << records.size() << " cells failed\n";
        return kExitNumerical;
    }
    return 0;
}

// --- cost ------------------------------------------------------------------

struct CostArgs {
    std::size_t m = 0;
    std::size_t n = 0;
    std::optional<std::size_t> nnz;
    std::size_t r = 0;
    std::size_t k1 = 0, l1 = 0, k2 = 0, l2 = 0;
};

int run_cost(const CostArgs& a, const Common& c) {
    RandLuParams p;
    if (a.r > 0) {
        p = default_params(a.r, a.m, a.n, Field::real64, c.seed.value_or(0), parse_mode(c.mode));
    } else if (a.k1 > 0 && a.l1 > 0 && a.k2 > 0 && a.l2 > 0) {
        p.k1 = a.k1;
        p.l1 = a.l1;
        p.k2 = a.k2;
        p.l2 = a.l2;
    } else {
        throw ParameterError("cost needs --r or all of --k1 --l1 --k2 --l2");
    }
    const bool sparse = a.nnz.has_value();
    const auto cost = bench::estimate_cost(a.m, a.n, a.nnz.value_or(0), p, sparse);
    std::printf("m=%zu n=%zu%s k1=%zu l1=%zu k2=%zu l2=%zu\n", a.m, a.n,
                sparse ? (" nnz=" + std::to_string(*a.nnz)).c_str() : "", p.k1, p.l1, p.k2, p.l2);
    for (std::size_t i = 0; i < cost.terms.size(); ++i)
        std::printf("%-16s %.6e\n", std::string(bench::CostBreakdown::kNames[i]).c_str(), cost.terms[i]);
    std::printf("%-16s %.6e\n", "total", cost.total);
    return 0;
}

// --- decompose -------------------------------------------------------------

struct DecomposeArgs {
    std::string input;
    std::size_t r = 0;
    std::string algorithm = "sparse_lu";
    std::string prefix;
};

int run_decompose(const DecomposeArgs& d, const Common& c) {
    const AnyMatrix a = mm_read(std::filesystem::path(d.input));
    const auto params = default_params(d.r, rows_of(a), cols_of(a), field_of_matrix(a), c.seed.value_or(0),
                                       parse_mode(c.mode));
    std::visit(
        [&](const auto& mat) {
            const auto res = d.algorithm == "gaussian_lu" ? gaussian_randomized_lu(mat, params)
                                                          : sparse_randomized_lu(mat, params);
            write_index_list(res.p, d.prefix + "P.mtx", "row permutation");
            write_index_list(res.q, d.prefix + "Q.mtx", "column permutation");
            mm_write(AnyMatrix(res.l), std::filesystem::path(d.prefix + "L.mtx"));
            mm_write(AnyMatrix(res.u), std::filesystem::path(d.prefix + "U.mtx"));
            std::printf("k1=%zu l1=%zu k2=%zu l2=%zu resamples=%d error=%.6e time=%.3fs\n", params.k1, params.l1,
                        params.k2, params.l2, res.resamples, approximation_error(mat, res), res.elapsed.total);
        },
        a);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse randomized LU toolkit"};
    app.require_subcommand(1);

    Common common;
    GenArgs gen;
    RunArgs run;
    CostArgs cost;
    DecomposeArgs dec;

    auto* gen_cmd = app.add_subcommand("gen", "Write a test matrix with a prescribed spectrum");
    gen_cmd->add_option("--kind", gen.kind)->check(CLI::IsMember({"step_exp", "exp_decay", "custom"}));
    gen_cmd->add_option("-n,--n", gen.n, "Columns / spectrum length");
    gen_cmd->add_option("-r,--r", gen.r, "Step rank (step_exp)");
    gen_cmd->add_option("-m,--m", gen.m, "Rows (default n)");
    gen_cmd->add_option("--values", gen.values, "Singular values (custom)")->delimiter(',');
    gen_cmd->add_option("--field", gen.field)->check(CLI::IsMember({"real", "complex"}));
    gen_cmd->add_option("-o,--output", gen.output, "Output .mtx")->required();
    add_common(*gen_cmd, common, false);

    auto* run_cmd = app.add_subcommand("run", "Run an experiment config");
    run_cmd->add_option("config", run.config, "Config file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("-o,--output", run.output, "Results file (default: config's, else stdout)");
    add_common(*run_cmd, common, true);

    auto* cost_cmd = app.add_subcommand("cost", "Itemized operation counts");
    cost_cmd->add_option("-m,--m", cost.m)->required()->check(CLI::PositiveNumber);
    cost_cmd->add_option("-n,--n", cost.n)->required()->check(CLI::PositiveNumber);
    cost_cmd->add_option("--nnz", cost.nnz, "Nonzeros of a sparse A");
    cost_cmd->add_option("-r,--r", cost.r, "Target rank (derives k1, l1, k2, l2)");
    cost_cmd->add_option("--k1", cost.k1);
    cost_cmd->add_option("--l1", cost.l1);
    cost_cmd->add_option("--k2", cost.k2);
    cost_cmd->add_option("--l2", cost.l2);
    add_common(*cost_cmd, common, false);

    auto* dec_cmd = app.add_subcommand("decompose", "Factor a .mtx file as P A Q ~= L U");
    dec_cmd->add_option("input", dec.input, "Input .mtx")->required()->check(CLI::ExistingFile);
    dec_cmd->add_option("-r,--r", dec.r, "Target rank")->required()->check(CLI::PositiveNumber);
    dec_cmd->add_option("--algorithm", dec.algorithm)->check(CLI::IsMember({"sparse_lu", "gaussian_lu"}));
    dec_cmd->add_option("--prefix", dec.prefix, "Output path prefix for P.mtx, Q.mtx, L.mtx, U.mtx");
    add_common(*dec_cmd, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        set_num_threads(common.threads);
        if (*gen_cmd) return run_gen(gen, common);
        if (*run_cmd) return run_run(run, common, *run_cmd);
        if (*cost_cmd) return run_cost(cost, common);
        if (*dec_cmd) return run_decompose(dec, common);
    } catch (const NumericalError& e) {
        std::cerr << "srlu: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const SingularityError& e) {
        std::cerr << "srlu: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "srlu: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
