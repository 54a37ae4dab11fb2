#pragma once

// Numerical verification of formulas against exact coefficients, and the
// n <= 100, k <= 10 reproduction table.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "circle/evaluator.hpp"
#include "circle/formula.hpp"
#include "circle/qseries.hpp"

namespace circle {

struct VerificationReport {
    std::string name;
    std::int64_t n_lo = 1;
    std::int64_t n_hi = 1;
    std::int64_t K = 10;
    BigInt value_at_nmax;
    Real formula_at_nmax;
    Real max_abs_error;
    std::int64_t worst_n = 0;
    bool all_round_correct = false;
    /// formula(n) - oracle(n) for n_lo..n_hi, filled when requested.
    std::vector<Real> errors;
};

struct VerifyOptions {
    Precision precision = default_precision();
    bool keep_errors = false;
    /// Coefficients to compare against; expanded from the formula's oracle when empty.
    std::optional<IntSeries> oracle;
};

VerificationReport verify_formula(const RademacherFormula& f, std::int64_t n_lo,
                                  std::int64_t n_hi, std::int64_t K,
                                  const VerifyOptions& opts = {});

/// Oracle coefficients to `order`, read from or written to `cache_dir` as CSV when given.
IntSeries oracle_series(const RademacherFormula& f, std::size_t order,
                        const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

nlohmann::json to_json(const VerificationReport& r);

struct TableRow {
    std::string function;
    std::string formula;
    /// Known values, set only for the standard n_hi = 100, K = 10 run.
    std::optional<BigInt> reference_value;
    std::optional<double> reference_max_error;
    VerificationReport report;

    /// Every n rounds correctly, so the value at n_hi equals the exact coefficient.
    bool pass() const;
    /// The exact coefficient at n_hi equals the reference value.
    bool reference_matches() const;
    /// Max error within 0.02 of the reference max error.
    bool max_error_close() const;
};

struct TableOptions {
    std::int64_t K = 10;
    std::int64_t n_hi = 100;
    Precision precision = default_precision();
    std::optional<std::filesystem::path> cache_dir;
};

struct Table {
    std::int64_t K = 10;
    std::int64_t n_hi = 100;
    std::vector<TableRow> rows;

    bool all_pass() const;
};

Table reproduce_table(const TableOptions& opts = {});

std::string to_markdown(const Table& t);
std::string to_csv(const Table& t);
nlohmann::json to_json(const Table& t);

}  // namespace circle
