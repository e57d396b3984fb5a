#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "srlu/bench.hpp"
#include "srlu/factorizations.hpp"

using namespace srlu;
using namespace srlu::bench;

namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::size_t error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

// --- spectra ---------------------------------------------------------------

TEST(Spectrum, StepExp) {
    const auto s = spectrum_values({SpectrumKind::step_exp, 200, 20, {}, 0});
    ASSERT_EQ(s.size(), 200u);
    for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(s[i], 1.0);
    EXPECT_NEAR(s[20], std::exp(-10.0), 1e-18);
    EXPECT_NEAR(s[199] / std::exp(-200.0), 1.0, 1e-12);
}

TEST(Spectrum, ExpDecayHasConstantRatio) {
    const auto s = spectrum_values({SpectrumKind::exp_decay, 100, 0, {}, 0});
    EXPECT_EQ(s[0], 1.0);
    EXPECT_NEAR(s[99] / std::exp(-100.0), 1.0, 1e-12);
    const double ratio = s[1] / s[0];
    for (std::size_t i = 1; i < 99; ++i) EXPECT_NEAR(s[i + 1] / s[i], ratio, 1e-10);
}

TEST(Spectrum, InvalidSpecs) {
    EXPECT_THROW(spectrum_values({SpectrumKind::step_exp, 10, 10, {}, 0}), ParameterError);
    EXPECT_THROW(spectrum_values({SpectrumKind::exp_decay, 0, 0, {}, 0}), ParameterError);
    EXPECT_THROW(spectrum_values({SpectrumKind::custom, 2, 0, {1, 2}, 0}), ParameterError);
    EXPECT_THROW(spectrum_values({SpectrumKind::custom, 2, 0, {1, 0}, 0}), ParameterError);
    EXPECT_THROW(spectrum_values({SpectrumKind::custom, 3, 0, {1, 1}, 0}), ParameterError);
}

TEST(GenTestMatrix, OneByOne) {
    const auto a = gen_test_matrix<double>({SpectrumKind::custom, 1, 0, {1.0}, 5});
    EXPECT_NEAR(std::abs(a(0, 0)), 1.0, 1e-15);
}

TEST(GenTestMatrix, SpectrumIsReproduced) {
    const SpectrumSpec spec{SpectrumKind::step_exp, 200, 20, {}, 3};
    const auto s = singular_values(gen_test_matrix<double>(spec));
    for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(s[i], 1.0, 1e-8);
    EXPECT_NEAR(s[20] / std::exp(-10.0), 1.0, 1e-8);

    const SpectrumSpec custom{SpectrumKind::custom, 5, 0, {4, 3, 2, 1, 0.5}, 1};
    const auto c = singular_values(gen_test_matrix<cplx>(custom, 9));
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(c[i], custom.values[i], 1e-12);
}

TEST(GenTestMatrix, RectangularAndErrors) {
    const auto a = gen_test_matrix<double>({SpectrumKind::exp_decay, 10, 0, {}, 1}, 25);
    EXPECT_EQ(a.rows(), 25u);
    EXPECT_EQ(a.cols(), 10u);
    EXPECT_THROW(gen_test_matrix<double>({SpectrumKind::exp_decay, 10, 0, {}, 1}, 5), ParameterError);
    EXPECT_EQ(gen_test_matrix<double>({SpectrumKind::exp_decay, 10, 0, {}, 1}),
              gen_test_matrix<double>({SpectrumKind::exp_decay, 10, 0, {}, 1}));
}

// --- config ----------------------------------------------------------------

TEST(Config, FullExample) {
    const auto cfg = parse(
        "# comment\n"
        "matrix = step_exp n=100 r=10 seed=4\n"
        "matrix = exp_decay n=50 m=60\n"
        "matrix = zero n=30\n"
        "matrix = custom values=3,2,1\n"
        "ranks = 1, 2\n"
        "algorithms = sparse_lu,svd_oracle\n"
        "seeds = 0,1,2\n"
        "mode = theoretical\n"
        "epsilon = 0.25\n"
        "field = complex\n"
        "threads = 2\n"
        "output = out.jsonl\n"
        "format = jsonl\n");
    ASSERT_EQ(cfg.matrices.size(), 4u);
    EXPECT_EQ(cfg.matrices[0].spectrum.r, 10u);
    EXPECT_EQ(cfg.matrices[0].spectrum.seed, 4u);
    EXPECT_EQ(cfg.matrices[1].m, 60u);
    EXPECT_EQ(cfg.matrices[2].kind, MatrixSource::Kind::zero);
    EXPECT_EQ(cfg.matrices[3].spectrum.n, 3u);
    EXPECT_EQ(cfg.ranks, (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(cfg.algorithms.size(), 2u);
    EXPECT_EQ(cfg.seeds.size(), 3u);
    EXPECT_EQ(cfg.mode, SizingMode::theoretical);
    EXPECT_EQ(cfg.epsilon, 0.25);
    EXPECT_EQ(cfg.field, Field::complex128);
    EXPECT_EQ(cfg.threads, 2);
    EXPECT_EQ(cfg.format, OutputFormat::jsonl);
    EXPECT_EQ(cfg.matrices[0].describe(), "step_exp(n=100,r=10,seed=4)");
}

TEST(Config, ErrorsReportTheLine) {
    EXPECT_EQ(error_line("ranks = 1\nbogus = 3\n"), 2u);
    EXPECT_EQ(error_line("matrix = step_exp n=10\nranks = 1\n"), 1u);
    EXPECT_EQ(error_line("matrix = step_exp n=10 r=10\nranks = 1\n"), 1u);
    EXPECT_EQ(error_line("\n\nalgorithms = qr\n"), 3u);
    EXPECT_EQ(error_line("seeds = 1\nseeds = 2\n"), 2u);
    EXPECT_EQ(error_line("epsilon = 1.5\n"), 1u);
    EXPECT_EQ(error_line("matrix = exp_decay n=10 wat=1\nranks = 1\n"), 1u);
    EXPECT_EQ(error_line("no equals sign\n"), 1u);
    EXPECT_EQ(error_line("matrix = exp_decay n=10\nranks = step\n"), 2u);
    EXPECT_GT(error_line("matrix = exp_decay n=10\n"), 0u);  // no ranks
}

// --- running ---------------------------------------------------------------

TEST(RunExperiment, EmptyConfigGivesNoRecords) { EXPECT_TRUE(run_experiment(ExperimentConfig{}).empty()); }

TEST(RunExperiment, ZeroMatrixHasZeroError) {
    const auto recs = run_experiment(parse("matrix = zero n=40\nranks = 2\nalgorithms = sparse_lu\n"));
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].error, 0.0);
    EXPECT_TRUE(recs[0].exact_rank);
    EXPECT_TRUE(std::isnan(recs[0].ratio));
}

TEST(RunExperiment, OracleAndReproducibility) {
    const std::string text =
        "matrix = step_exp n=80 r=5 seed=2\n"
        "matrix = exp_decay n=60 seed=1\n"
        "ranks = 4,6\n"
        "algorithms = svd_oracle,gaussian_lu,sparse_lu\n"
        "seeds = 3,1\n";
    const auto a = run_experiment(parse(text));
    const auto b = run_experiment(parse(text));
    ASSERT_EQ(a.size(), 2u * 2u * 3u * 2u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].error, b[i].error);
        EXPECT_EQ(a[i].algorithm, b[i].algorithm);
    }
    // sorted by (matrix, r, algorithm, seed)
    EXPECT_EQ(a[0].algorithm, "sparse_lu");
    EXPECT_EQ(a[0].seed, 1u);
    EXPECT_EQ(a[1].seed, 3u);
    for (const auto& r : a) {
        EXPECT_TRUE(r.ok);
        if (r.algorithm == "svd_oracle") {
            EXPECT_EQ(r.error, r.delta_r);
        } else {
            // k1 > r columns can legitimately beat the rank-r optimum, never the rank-k1 one.
            EXPECT_GT(r.error, 0.0);
        }
        EXPECT_NEAR(r.ratio, r.error / r.delta_r, 1e-15 * r.ratio);
    }
}

TEST(RunExperiment, RandomizedErrorNeverBeatsRankK1Optimum) {
    const auto recs = run_experiment(parse("matrix = exp_decay n=120 seed=5\nranks = 5,10\nseeds = 0,1,2\n"));
    const auto sigma = singular_values(gen_test_matrix<double>({SpectrumKind::exp_decay, 120, 0, {}, 5}));
    for (const auto& r : recs) EXPECT_GE(r.error, tail_energy(sigma, r.k1) - 1e-9);
}

TEST(RunExperiment, RankTooLargeIsAConfigError) {
    EXPECT_THROW(run_experiment(parse("matrix = exp_decay n=20\nranks = 15\n")), ConfigError);
}

// --- output ----------------------------------------------------------------

TEST(Output, EmptyCsvIsHeaderOnly) {
    std::ostringstream out;
    write_csv({}, out);
    EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n");
}

TEST(Output, CsvRoundTripIsBitExact) {
    BenchRecord r;
    r.algorithm = "sparse_lu";
    r.matrix = "step_exp(n=10,r=2,seed=0)";
    r.n = 10;
    r.m = 12;
    r.r = 2;
    r.k1 = 10;
    r.seed = 99;
    r.error = 0.1 + 0.2;
    r.delta_r = std::exp(-7.3);
    r.ratio = r.error / r.delta_r;
    r.times.sketch1 = 1e-7 / 3;
    r.times.total = 12.345678901234567;
    BenchRecord nan_rec = r;
    nan_rec.error = std::numeric_limits<double>::quiet_NaN();
    nan_rec.ratio = nan_rec.error;

    std::stringstream buf;
    write_csv({r, nan_rec}, buf);
    const auto back = read_csv(buf);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].matrix, r.matrix);
    EXPECT_EQ(back[0].m, 12u);
    EXPECT_EQ(back[0].seed, 99u);
    EXPECT_EQ(back[0].error, r.error);
    EXPECT_EQ(back[0].delta_r, r.delta_r);
    EXPECT_EQ(back[0].times.sketch1, r.times.sketch1);
    EXPECT_EQ(back[0].times.total, r.times.total);
    EXPECT_NEAR(back[0].ratio, back[0].error / back[0].delta_r, 1e-15 * back[0].ratio);
    EXPECT_TRUE(std::isnan(back[1].error));
    EXPECT_FALSE(back[1].ok);
}

TEST(Output, JsonlHasOneObjectPerLine) {
    BenchRecord r;
    r.algorithm = "svd_oracle";
    r.ratio = std::numeric_limits<double>::quiet_NaN();
    std::ostringstream out;
    write_jsonl({r, r}, out);
    const std::string s = out.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
    EXPECT_NE(s.find("\"ratio\":null"), std::string::npos);
    EXPECT_NE(s.find("\"algorithm\":\"svd_oracle\""), std::string::npos);
}

TEST(Output, ReadCsvRejectsBadInput) {
    std::istringstream bad_header("a,b\n");
    EXPECT_THROW(read_csv(bad_header), ParseError);
    std::istringstream short_row(std::string(kCsvHeader) + "\nsparse_lu,x,1\n");
    EXPECT_THROW(read_csv(short_row), ParseError);
}

// --- cost ------------------------------------------------------------------

TEST(Cost, HandSummedDefaultsForR50) {
    const RandLuParams p{.r = 50, .k1 = 58, .l1 = 232, .k2 = 66, .l2 = 264};
    const double m = 5000, n = 5000, k1 = 58, l1 = 232, k2 = 66, l2 = 264;
    const double want = (n + l1 * k1) + (m * n + m * l1 * std::log2(k1)) + (m * k1 * k1) + (m + l2 * k2) +
                        (m * k1 + k1 * l2 * std::log2(k2) + k2 * k1 * k1) +
                        (m * n + n * l2 * std::log2(k2) + k2 * k1 * n) + (k2 * k2 * n) + (m * k1 * k1);
    const auto c = estimate_cost(5000, 5000, 0, p, false);
    EXPECT_NEAR(c.total, want, 1e-9 * want);
    double sum = 0;
    for (double t : c.terms) sum += t;
    EXPECT_EQ(sum, c.total);
}

TEST(Cost, DegenerateAndSparseConsistency) {
    const RandLuParams ones{.r = 1, .k1 = 1, .l1 = 1, .k2 = 1, .l2 = 1};
    const auto c = estimate_cost(1, 1, 1, ones, false);
    EXPECT_TRUE(std::isfinite(c.total));
    const RandLuParams p{.r = 5, .k1 = 13, .l1 = 52, .k2 = 21, .l2 = 84};
    EXPECT_EQ(estimate_cost(300, 200, 60000, p, true).total, estimate_cost(300, 200, 0, p, false).total);
}

TEST(Cost, MonotoneInEveryArgument) {
    const RandLuParams base{.r = 5, .k1 = 13, .l1 = 52, .k2 = 21, .l2 = 84};
    const double t0 = estimate_cost(300, 200, 500, base, true).total;
    EXPECT_GE(estimate_cost(301, 200, 500, base, true).total, t0);
    EXPECT_GE(estimate_cost(300, 201, 500, base, true).total, t0);
    EXPECT_GE(estimate_cost(300, 200, 501, base, true).total, t0);
    for (int field = 0; field < 4; ++field) {
        auto p = base;
        std::size_t* f[] = {&p.k1, &p.l1, &p.k2, &p.l2};
        ++*f[field];
        EXPECT_GE(estimate_cost(300, 200, 500, p, true).total, t0);
    }
}
