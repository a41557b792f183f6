#include "repfam/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "repfam/errors.hpp"

namespace repfam {

namespace {

double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

double xlnx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

// x log2 y with 0 log2 0 = 0.
double xlog2y(double x, double y) { return x == 0 ? 0.0 : x * std::log2(y); }

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Number of (t_blocks)-tuples with entries in [0, s] summing to p.
std::optional<std::uint64_t> count_z(std::size_t p, std::size_t s, std::size_t t_blocks) {
    std::vector<std::uint64_t> ways(p + 1, 0);
    ways[0] = 1;
    bool overflow = false;
    for (std::size_t block = 0; block < t_blocks; ++block) {
        std::vector<std::uint64_t> next(p + 1, 0);
        for (std::size_t sum = 0; sum <= p; ++sum) {
            if (ways[sum] == 0) {
                continue;
            }
            for (std::size_t v = 0; v <= s && sum + v <= p; ++v) {
                if (next[sum + v] > UINT64_MAX - ways[sum]) {
                    overflow = true;
                    next[sum + v] = UINT64_MAX;
                } else {
                    next[sum + v] += ways[sum];
                }
            }
        }
        ways = std::move(next);
    }
    if (overflow) {
        return std::nullopt;
    }
    return ways[p];
}

}  // namespace

LogValue LogValue::from_log2(double log2) {
    LogValue v{log2, std::nullopt};
    if (log2 == kNegInf) {
        v.value = 0.0;
    } else if (log2 < 1000.0) {
        v.value = std::exp2(log2);
    }
    return v;
}

double log2_binomial(double x, double y) {
    if (y < 0 || y > x) {
        return kNegInf;
    }
    const double ln = std::lgamma(x + 1) - std::lgamma(y + 1) - std::lgamma(x - y + 1);
    return ln / std::log(2.0);
}

BoundReport bounds(const SeparatorParams& params) {
    validate(params);
    BoundReport r;
    r.params = params;
    const double k = static_cast<double>(params.k);
    const double p = static_cast<double>(params.p);
    const double c = params.c;
    const double ck = c * k;
    const double n = static_cast<double>(params.n);
    const double log2_log_n = params.n > 1 ? std::log2(std::log2(n)) : kNegInf;

    const double lead = k * std::log2(ck) - xlog2x(p) - xlog2y(k - p, ck - p);
    const double delta_lead = params.p == params.k ? 0.0 : (k - p) * (std::log2(ck) - std::log2(ck - p));
    const double binom_form = log2_binomial(ck, p) + xlog2y((c - 1) * k, 1 - (ck > 0 ? p / ck : 0.0));

    r.t_formula = separator_size_formula(params);
    r.lead = LogValue::from_log2(lead);
    r.c_star = LogValue::from_log2(lead + log2_log_n);
    r.tau_f_star = LogValue::from_log2(lead + (params.n > 0 ? std::log2(n) : kNegInf) + log2_log_n);
    r.tau_chi_star = LogValue::from_log2(delta_lead + log2_log_n);
    r.delta_expected = params.p == 0 ? 1.0 : r.t_formula * std::pow(p / ck, p);

    const double log_k = params.k > 0 ? std::log2(k) : 0.0;
    r.s = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(log_k * log_k)));
    r.t_blocks = std::max<std::size_t>(1, (params.k + r.s - 1) / r.s);
    r.z_count = count_z(params.p, r.s, r.t_blocks);
    r.z_bound_log2 = static_cast<double>(r.t_blocks) * std::log2(p + static_cast<double>(r.t_blocks));

    const std::string lead_text = "(ck)^k/(p^p(ck-p)^(k-p))";
    const std::string binom_text = "C(ck,p)(1-p/ck)^((c-1)k)";
    const std::string delta_text = "(ck/(ck-p))^(k-p)";
    const std::string block_slack = "2^{O(t log n)}";
    const std::string mid_slack = "2^{O(k/log k)}";
    const std::string late_slack = "2^{O(t log n + k/log log k)}";
    const std::string final_slack = "2^{O(k/log log k)}";
    auto add = [&](std::string stage, const std::string& formula, double log2, std::string slack) {
        r.chain.push_back({std::move(stage), formula, LogValue::from_log2(log2), std::move(slack)});
    };
    add("C1", lead_text + " log n", lead + log2_log_n, "k^{O(1)}");
    add("Delta1", delta_text + " log n", delta_lead + log2_log_n, "k^{O(1)}");
    add("C2", binom_text + " log n", binom_form + log2_log_n, "k^{O(1)}");
    add("Delta2", delta_text + " log n", delta_lead + log2_log_n, "k^{O(1)}");
    add("C3", binom_text, binom_form, block_slack);
    add("Delta3", delta_text, delta_lead, block_slack);
    add("C4", binom_text + " log n", binom_form + log2_log_n, mid_slack);
    add("Delta4", delta_text + " log n", delta_lead + log2_log_n, mid_slack);
    add("C5", lead_text, lead, late_slack);
    add("Delta5", delta_text, delta_lead, late_slack);
    add("C6", lead_text + " log n", lead + log2_log_n, final_slack);
    add("tau_chi6", delta_text + " log n", delta_lead + log2_log_n, final_slack);
    return r;
}

std::string_view to_string(BaseShape shape) { return shape == BaseShape::kCycle ? "cycle" : "pc"; }

BaseShape parse_base_shape(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "pc") {
        return BaseShape::kPartialCover;
    }
    if (lower == "cycle") {
        return BaseShape::kCycle;
    }
    throw InputError("unknown shape '" + std::string(text) + "' (expected pc or cycle)");
}

double tradeoff_base(double c, double alpha, BaseShape shape) {
    if (!(c >= 1.0)) {
        throw InputError("tradeoff parameter c must be >= 1");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw InputError("fraction alpha must lie in [0, 1]");
    }
    // width of the rank relative to k: 1 for pc, 2 for cycle
    const double w = shape == BaseShape::kCycle ? 2.0 : 1.0;
    const double wc = w * c;
    const double ln = (2 * w - alpha) * std::log(wc) - xlnx(alpha) - 2 * (w - alpha) * std::log(wc - alpha);
    // (wc - alpha)^0 when both vanish
    if (wc == alpha) {
        return std::exp((2 * w - alpha) * std::log(wc) - xlnx(alpha));
    }
    return std::exp(ln);
}

OptimizedBase optimize_base(double c, BaseShape shape) {
    constexpr int kGrid = 2000;
    auto f = [&](double a) { return tradeoff_base(c, a, shape); };
    int best = 0;
    double best_value = f(0.0);
    for (int i = 1; i <= kGrid; ++i) {
        const double v = f(static_cast<double>(i) / kGrid);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    double lo = std::max(0, best - 1) / static_cast<double>(kGrid);
    double hi = std::min(kGrid, best + 1) / static_cast<double>(kGrid);
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    OptimizedBase out{(lo + hi) / 2, f((lo + hi) / 2)};
    // the maximum may sit on the interval boundary
    for (double edge : {0.0, 1.0}) {
        const double v = f(edge);
        if (v > out.base) {
            out = {edge, v};
        }
    }
    return out;
}

double kiob_base(double c) {
    const double base = optimize_base(c, BaseShape::kPartialCover).base;
    return base * base;
}

}  // namespace repfam
