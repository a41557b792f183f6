#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "repfam/pcover.hpp"
#include "repfam/representative.hpp"

namespace repfam {

/// Suites: "c-sweep" (fixed partial cover instances at c = 1.0, 1.2, 1.447,
/// 2.0), "pcover" (small random instances checked against the brute-force
/// solver) and "empty".
std::vector<std::string> bench_suites();

struct BenchOptions {
    std::string suite = "c-sweep";
    std::uint64_t seed = 0;
    Strategy strategy = Strategy::kVerified;
    std::size_t threads = 1;
    bool debug_verify = false;
    double budget_seconds = 600.0;
};

struct BenchRow {
    std::string instance;
    double c = 0.0;
    std::size_t t = 0;  // separator_set_count at the suite's reference shape
    std::optional<std::size_t> answer;
    std::optional<std::size_t> oracle;  // brute-force answer, pcover suite only
    std::size_t max_cell = 0;
    std::size_t max_inner = 0;
    std::size_t separator_sets = 0;  // sets over every separator the run built
    std::optional<bool> verification_passed;
    double filter_seconds = 0.0;
    double solver_seconds = 0.0;
};

struct BenchTable {
    std::string suite;
    SeparatorParams reference;  // shape at which the t column is evaluated (c varies)
    std::vector<BenchRow> rows;
    bool truncated = false;  // budget ran out before every row was produced
};

/// The partial cover instances the c-sweep runs on.
std::vector<PCInstance> c_sweep_instances(std::uint64_t seed);
inline const std::vector<double> kCSweepValues{1.0, 1.2, 1.447, 2.0};

/// Throws InputError on an unknown suite.
BenchTable run_bench(const BenchOptions& options);

}  // namespace repfam
