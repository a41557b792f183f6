#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "repfam/separator.hpp"

namespace repfam {

/// A quantity evaluated in log space. `value` is empty when it overflows a double.
struct LogValue {
    double log2 = 0.0;
    std::optional<double> value;

    static LogValue from_log2(double log2);
};

/// One leading term of the separator refinement chain. The hidden factor is
/// kept as text (for example "2^{O(k/log log k)}") and never folded into the number.
struct ChainEntry {
    std::string stage;     // "C1" .. "C6", "Delta1" .., "tau_chi6"
    std::string formula;   // leading term that was evaluated
    LogValue leading;
    std::string slack;
};

struct BoundReport {
    SeparatorParams params;
    double t_formula = 0.0;  // real-valued set count before rounding
    LogValue lead;           // (ck)^k / (p^p (ck-p)^(k-p))
    LogValue c_star;         // lead * log2 n
    LogValue tau_f_star;     // lead * n log2 n
    LogValue tau_chi_star;   // (ck/(ck-p))^(k-p) * log2 n
    double delta_expected = 0.0;  // t (p/ck)^p
    std::string star_slack = "2^{o(k)}";
    std::size_t s = 1;         // floor(log2(k)^2), at least 1
    std::size_t t_blocks = 1;  // ceil(k / s)
    /// Tuples of t_blocks values in [0, s] summing to p; empty on overflow.
    std::optional<std::uint64_t> z_count;
    double z_bound_log2 = 0.0;  // t_blocks * log2(p + t_blocks)
    std::vector<ChainEntry> chain;
};

/// Evaluates the size and time bound terms for (n, k, p, c). Throws
/// InputError on invalid parameters.
BoundReport bounds(const SeparatorParams& params);

/// Generalized binomial coefficient C(x, y) = Gamma(x+1) / (Gamma(y+1) Gamma(x-y+1)), in log2.
double log2_binomial(double x, double y);

enum class BaseShape { kPartialCover, kCycle };

std::string_view to_string(BaseShape shape);
/// Accepts "pc" and "cycle" in any case.
BaseShape parse_base_shape(std::string_view text);

struct OptimizedBase {
    double alpha = 0.0;  // maximizing fraction t/k
    double base = 0.0;   // per-k exponential base at that fraction
};

/// Per-k base of the filter cost at fraction alpha = p/k.
/// kPartialCover: c^(2-a) / (a^a (c-a)^(2(1-a))), the k-th root of
///   (ck)^k / (p^p (ck-p)^(k-p)) * (ck/(ck-p))^(k-p).
/// kCycle: (2c)^(4-a) / (a^a (2c-a)^(2(2-a))), the same product for a family
///   of size p = ak inside rank 2k.
double tradeoff_base(double c, double alpha, BaseShape shape);

/// Maximizes tradeoff_base over alpha in [0, 1]: grid scan, then golden-section refinement.
OptimizedBase optimize_base(double c, BaseShape shape);

/// Base for internal out-branching: the partial-cover base squared (rank k+t with t <= k).
double kiob_base(double c);

}  // namespace repfam
