#include "repfam/separator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "repfam/errors.hpp"
#include "repfam/parallel.hpp"
#include "repfam/subsets.hpp"

namespace repfam {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// x log x with 0 log 0 = 0.
double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

// x ln y with 0 ln 0 = 0.
double xlogy(double x, double y) { return x == 0 ? 0.0 : x * std::log(y); }

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) {
        return UINT64_MAX;
    }
    return a * b;
}

}  // namespace

void validate(const SeparatorParams& params) {
    if (!(params.c >= 1.0) || !std::isfinite(params.c)) {
        throw InputError("tradeoff parameter c must be a finite value >= 1, got " + std::to_string(params.c));
    }
    if (params.p > params.k || params.p > params.n) {
        throw InputError("separator needs p <= min(k, n); got n=" + std::to_string(params.n) +
                         " k=" + std::to_string(params.k) + " p=" + std::to_string(params.p));
    }
}

double separator_size_formula(const SeparatorParams& params) {
    validate(params);
    const double ck = params.c * static_cast<double>(params.k);
    const double p = static_cast<double>(params.p);
    const double k = static_cast<double>(params.k);
    const double log_lead = k * std::log(ck) - xlogx(p) - xlogy(k - p, ck - p);
    const double log_n = params.n > 1 ? std::log(static_cast<double>(params.n)) : 0.0;
    return std::exp(log_lead) * (k + 1.0) * log_n;
}

std::size_t separator_set_count(const SeparatorParams& params) {
    const double t = separator_size_formula(params);
    if (params.p == 0) {
        return 1;
    }
    if (!(t < 1.8e19)) {
        return SIZE_MAX;
    }
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(t)));
}

double inclusion_probability(const SeparatorParams& params) {
    if (params.k == 0) {
        return 0.0;
    }
    return static_cast<double>(params.p) / (params.c * static_cast<double>(params.k));
}

std::size_t default_max_separator_sets() {
    if (const char* env = std::getenv("REPFAM_MAX_SEPARATOR"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(env, &end, 10);
        if (end != nullptr && *end == '\0') {
            return static_cast<std::size_t>(value);
        }
    }
    return std::size_t{1} << 24;
}

bool keyed_bernoulli(std::uint64_t seed, std::uint64_t set_index, std::uint64_t element, double probability) noexcept {
    const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ set_index) ^ element);
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    return u < probability;
}

Separator::Separator(SeparatorParams params, std::vector<ElementSet> sets)
    : params_(params), sets_(std::move(sets)), words_(words_for(sets_.size())) {
    validate(params_);
    incidence_.assign(params_.n * words_, 0);
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (sets_[i].universe_size() != params_.n) {
            throw InputError("separator set " + std::to_string(i) + " lives in a universe of size " +
                             std::to_string(sets_[i].universe_size()) + ", expected " + std::to_string(params_.n));
        }
        sets_[i].for_each([&](Element e) { incidence_[e * words_ + i / 64] |= Word{1} << (i % 64); });
    }
}

void Separator::check_query(const ElementSet& s) const {
    if (s.universe_size() != params_.n) {
        throw InputError("query set universe size " + std::to_string(s.universe_size()) + " differs from n = " +
                         std::to_string(params_.n));
    }
    if (s.size() != params_.p) {
        throw InputError("chi query needs a set of size p = " + std::to_string(params_.p) + ", got " + s.to_string());
    }
}

std::span<const Separator::Word> Separator::element_mask(Element e) const {
    return {incidence_.data() + static_cast<std::size_t>(e) * words_, words_};
}

std::vector<Separator::Word> Separator::chi_mask(const ElementSet& s) const {
    check_query(s);
    std::vector<Word> mask(words_, ~Word{0});
    if (words_ > 0 && sets_.size() % 64 != 0) {
        mask.back() = (Word{1} << (sets_.size() % 64)) - 1;
    }
    s.for_each([&](Element e) {
        const Word* row = incidence_.data() + static_cast<std::size_t>(e) * words_;
        for (std::size_t w = 0; w < words_; ++w) {
            mask[w] &= row[w];
        }
    });
    return mask;
}

std::vector<std::size_t> Separator::chi(const ElementSet& s) const {
    const auto mask = chi_mask(s);
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < mask.size(); ++w) {
        Word bits = mask[w];
        while (bits != 0) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

std::size_t Separator::chi_size(const ElementSet& s) const {
    std::size_t count = 0;
    for (Word w : chi_mask(s)) {
        count += static_cast<std::size_t>(std::popcount(w));
    }
    return count;
}

Separator build_randomized(const SeparatorParams& params, std::uint64_t seed, const BuildOptions& options) {
    validate(params);
    if (params.p == 0) {
        return Separator(params, {ElementSet(params.n)});
    }
    const std::size_t count = separator_set_count(params);
    if (count > options.max_sets) {
        throw ResourceError("separator for n=" + std::to_string(params.n) + " k=" + std::to_string(params.k) +
                            " p=" + std::to_string(params.p) + " c=" + std::to_string(params.c) + " needs t = " +
                            std::to_string(separator_size_formula(params)) + " sets, cap is " +
                            std::to_string(options.max_sets));
    }
    const double prob = inclusion_probability(params);
    std::vector<ElementSet> sets(count, ElementSet(params.n));
    parallel_for(count, options.threads, [&](std::size_t i) {
        for (Element e = 0; e < params.n; ++e) {
            if (keyed_bernoulli(seed, i, e, prob)) {
                sets[i].insert(e);
            }
        }
    });
    return Separator(params, std::move(sets));
}

std::uint64_t separator_check_cost(const Separator& sep) {
    const auto& params = sep.params();
    const std::size_t y_size = std::min(params.k - params.p, params.n - params.p);
    std::uint64_t cost = binomial(params.n, params.p);
    cost = saturating_mul(cost, binomial(params.n - params.p, y_size));
    cost = saturating_mul(cost, std::max<std::uint64_t>(1, sep.mask_words()));
    return saturating_mul(cost, y_size + 1);
}

SeparatorCheck verify_separator(const Separator& sep, std::uint64_t budget) {
    const std::uint64_t cost = separator_check_cost(sep);
    if (cost > budget) {
        throw ResourceError("separator check needs about " + std::to_string(cost) + " word operations, budget is " +
                            std::to_string(budget));
    }
    const auto& params = sep.params();
    const Universe universe{params.n};
    const std::size_t y_size = std::min(params.k - params.p, params.n - params.p);
    const std::size_t words = sep.mask_words();

    SeparatorCheck result{true, std::nullopt};
    std::vector<Separator::Word> blocked(words);
    for_each_subset(universe, params.p, [&](const ElementSet& x) {
        const auto cover = sep.chi_mask(x);
        for_each_subset(universe, y_size, x, [&](const ElementSet& y) {
            std::fill(blocked.begin(), blocked.end(), 0);
            y.for_each([&](Element e) {
                const auto row = sep.element_mask(e);
                for (std::size_t w = 0; w < words; ++w) {
                    blocked[w] |= row[w];
                }
            });
            for (std::size_t w = 0; w < words; ++w) {
                if ((cover[w] & ~blocked[w]) != 0) {
                    return true;
                }
            }
            result = {false, SeparatorWitness{x, y}};
            return false;
        });
        return result.covers;
    });
    return result;
}

VerifiedBuild build_verified(const SeparatorParams& params, std::uint64_t seed, std::size_t max_attempts,
                             const BuildOptions& options, std::uint64_t check_budget) {
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        Separator sep = build_randomized(params, seed + attempt, options);
        if (verify_separator(sep, check_budget)) {
            return {std::move(sep), seed + attempt, attempt + 1};
        }
    }
    throw ConstructionError("no covering separator for n=" + std::to_string(params.n) + " k=" +
                            std::to_string(params.k) + " p=" + std::to_string(params.p) + " after " +
                            std::to_string(max_attempts) + " attempts from seed " + std::to_string(seed));
}

std::string_view to_string(Verified v) {
    switch (v) {
        case Verified::kYes:
            return "yes";
        case Verified::kNo:
            return "no";
        case Verified::kUnchecked:
            break;
    }
    return "unchecked";
}

SeparatorStats measure_separator(const Separator& sep, std::size_t samples, std::uint64_t seed, Verified verified) {
    const auto& params = sep.params();
    SeparatorStats stats;
    stats.sets = sep.size();
    stats.verified = verified;
    stats.delta_expected = params.p == 0
                               ? 1.0
                               : separator_size_formula(params) * std::pow(inclusion_probability(params),
                                                                           static_cast<double>(params.p));
    if (samples == 0) {
        return stats;
    }
    std::mt19937_64 rng(seed);
    std::vector<Element> pool(params.n);
    for (Element e = 0; e < params.n; ++e) {
        pool[e] = e;
    }
    double total = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        // partial Fisher-Yates for a uniform p-subset
        for (std::size_t i = 0; i < params.p; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, params.n - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
        const auto set = ElementSet::from_elements(params.n, std::span(pool.data(), params.p));
        const std::size_t size = sep.chi_size(set);
        stats.delta_max_sampled = std::max(stats.delta_max_sampled, size);
        total += static_cast<double>(size);
    }
    stats.delta_mean_sampled = total / static_cast<double>(samples);
    return stats;
}

}  // namespace repfam
