#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "srlu/matrix.hpp"
#include "srlu/randlu.hpp"

namespace srlu::bench {

// ---------------------------------------------------------------------------
// Test matrices with prescribed spectra
// ---------------------------------------------------------------------------

enum class SpectrumKind {
    step_exp,  ///< sigma_1..sigma_r = 1, the rest log-linear from e^-10 down to e^-200
    exp_decay, ///< log-linear from 1 down to e^-100
    custom     ///< explicit values
};

struct SpectrumSpec {
    SpectrumKind kind = SpectrumKind::exp_decay;
    std::size_t n = 0;
    std::size_t r = 0;          ///< step rank, step_exp only
    std::vector<double> values; ///< custom only
    std::uint64_t seed = 0;
};

/// The n prescribed singular values, descending. Throws ParameterError for an
/// invalid spec (n = 0, r >= n for step_exp, non-positive or increasing custom
/// values, size mismatch).
std::vector<double> spectrum_values(const SpectrumSpec& spec);

/// A = W diag(sigma) Z^* with W (m x n) and Z (n x n) orthonormalized seeded
/// Gaussian matrices. m = 0 means m = n; m < n is rejected.
template <Scalar T>
DenseMatrix<T> gen_test_matrix(const SpectrumSpec& spec, std::size_t m = 0);

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

enum class Algorithm { sparse_lu, gaussian_lu, svd_oracle };
enum class OutputFormat { csv, jsonl };

std::string_view to_string(Algorithm a) noexcept;
std::string_view to_string(SpectrumKind k) noexcept;

/// Where one experiment matrix comes from.
struct MatrixSource {
    enum class Kind { spectrum, zero, file };
    Kind kind = Kind::spectrum;
    SpectrumSpec spectrum;
    std::size_t m = 0; ///< rows (0: same as n); zero and spectrum kinds
    std::size_t n = 0; ///< zero kind
    std::filesystem::path path;

    /// Short descriptor written to the `matrix` column, e.g. "step_exp(n=1000,r=50,seed=7)".
    std::string describe() const;
};

/// Parsed experiment configuration.
///
/// The file is flat `key = value` lines; `#` starts a comment. Keys:
///   matrix     = step_exp n=<int> r=<int> [m=<int>] [seed=<int>]
///              | exp_decay n=<int> [m=<int>] [seed=<int>]
///              | custom values=<v1,v2,...> [m=<int>] [seed=<int>]
///              | zero n=<int> [m=<int>]
///              | file path=<file.mtx>
///              (repeatable; one matrix per line)
///   ranks      = <r1,r2,...> | step    (step: each step_exp matrix's own r)
///   algorithms = comma list of sparse_lu, gaussian_lu, svd_oracle
///   seeds      = <s1,s2,...>
///   mode       = practical | theoretical
///   epsilon    = <real>          (default 0.5)
///   delta      = <real>          (default 0.1)
///   field      = real | complex  (generated matrices; default real)
///   threads    = <int>
///   output     = <path>
///   format     = csv | jsonl
struct ExperimentConfig {
    std::vector<MatrixSource> matrices;
    std::vector<std::size_t> ranks;
    bool ranks_from_step = false;
    std::vector<Algorithm> algorithms{Algorithm::sparse_lu};
    std::vector<std::uint64_t> seeds{0};
    SizingMode mode = SizingMode::practical;
    double epsilon = 0.5;
    double delta = 0.1;
    Field field = Field::real64;
    int threads = 0;
    std::filesystem::path output;
    OutputFormat format = OutputFormat::csv;
};

/// Bad configuration; carries the line number like ParseError.
class ConfigError : public ParseError {
public:
    using ParseError::ParseError;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config(const std::filesystem::path& path);

/// One (matrix, r, algorithm, seed) cell.
struct BenchRecord {
    std::string algorithm;
    std::string matrix;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t r = 0;
    std::size_t k1 = 0, l1 = 0, k2 = 0, l2 = 0;
    std::uint64_t seed = 0;
    double error = 0;   ///< ||LU - PAQ||_F, or delta_r for svd_oracle
    double delta_r = 0; ///< tail energy of A's spectrum at r
    double ratio = 0;   ///< error / delta_r; NaN when delta_r <= 1e-300
    StageTimes times;
    bool ok = true;
    bool exact_rank = false; ///< delta_r <= 1e-300
    std::string message;     ///< failure diagnostic
};

/// Runs every cell; cells are independent, records come back sorted by
/// (matrix index, r, algorithm, seed). A decomposition that fails after
/// resampling yields a record with ok = false and NaN error, not an exception.
std::vector<BenchRecord> run_experiment(const ExperimentConfig& config);
std::vector<BenchRecord> run_experiment(const std::filesystem::path& config_path);

inline constexpr std::string_view kCsvHeader =
    "algorithm,matrix,n,m,r,k1,l1,k2,l2,seed,error,delta_r,ratio,"
    "t_sketch1,t_lu1,t_sketch2,t_pinv,t_lu2,t_total";

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out);
void write_jsonl(const std::vector<BenchRecord>& records, std::ostream& out);
/// Parses what write_csv produced.
std::vector<BenchRecord> read_csv(std::istream& in);
void emit_results(const std::vector<BenchRecord>& records, const std::filesystem::path& path, OutputFormat format);

// ---------------------------------------------------------------------------
// Operation counts
// ---------------------------------------------------------------------------

/// Unit-constant operation counts of the eight algorithm steps.
struct CostBreakdown {
    static constexpr std::array<std::string_view, 8> kNames{
        "build_omega1", "sketch_b", "lu_b", "build_omega2", "omega2_l1_pinv", "step6_product", "step6_lu",
        "final_l"};
    std::array<double, 8> terms{};
    double total = 0;
};

/// With `sparse`, nnz replaces m*n in the two terms that touch A.
CostBreakdown estimate_cost(std::size_t m, std::size_t n, std::size_t nnz, const RandLuParams& params,
                            bool sparse);

}  // namespace srlu::bench
