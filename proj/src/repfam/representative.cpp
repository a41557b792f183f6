#include "repfam/representative.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstring>
#include <numeric>
#include <string>

#include "repfam/errors.hpp"

namespace repfam {

namespace {

std::uint64_t mix(std::uint64_t x) noexcept {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    return x ^ (x >> 33);
}

void atomic_max(std::atomic<std::size_t>& slot, std::size_t value) {
    std::size_t current = slot.load();
    while (current < value && !slot.compare_exchange_weak(current, value)) {
    }
}

}  // namespace

std::string_view to_string(Strategy strategy) {
    return strategy == Strategy::kRandomized ? "randomized" : "verified";
}

Strategy parse_strategy(std::string_view text) {
    if (text == "randomized") {
        return Strategy::kRandomized;
    }
    if (text == "verified") {
        return Strategy::kVerified;
    }
    throw InputError("unknown strategy '" + std::string(text) + "' (expected randomized or verified)");
}

std::uint64_t separator_seed(std::uint64_t seed, const SeparatorParams& params) noexcept {
    std::uint64_t c_bits = 0;
    std::memcpy(&c_bits, &params.c, sizeof c_bits);
    std::uint64_t h = mix(seed);
    for (std::uint64_t part : {std::uint64_t{params.n}, std::uint64_t{params.k}, std::uint64_t{params.p}, c_bits}) {
        h = mix(h ^ part);
    }
    return h;
}

std::shared_ptr<const Separator> SeparatorCache::get(const SeparatorParams& params) {
    const Key key{params.n, params.k, params.p, params.c};
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) {
        return it->second.separator;
    }
    const BuildOptions options{config_.threads, config_.max_separator_sets};
    const std::uint64_t seed = separator_seed(config_.seed, params);
    Entry entry;
    if (config_.strategy == Strategy::kVerified) {
        auto built = build_verified(params, seed, config_.max_attempts, options, config_.check_budget);
        entry.info = {params, built.separator.size(), built.seed, built.attempts, Verified::kYes};
        entry.separator = std::make_shared<const Separator>(std::move(built.separator));
    } else {
        auto sep = build_randomized(params, seed, options);
        entry.info = {params, sep.size(), seed, 1, Verified::kUnchecked};
        entry.separator = std::make_shared<const Separator>(std::move(sep));
    }
    auto separator = entry.separator;
    entries_.emplace(key, std::move(entry));
    return separator;
}

std::vector<SeparatorInfo> SeparatorCache::entries() const {
    std::lock_guard lock(mutex_);
    std::vector<SeparatorInfo> out;
    out.reserve(entries_.size());
    for (const auto& [key, entry] : entries_) {
        out.push_back(entry.info);
    }
    return out;
}

WeightedFamily compute_representative_with(const Separator& sep, const WeightedFamily& family, RepMode mode) {
    if (family.empty()) {
        return family;
    }
    const auto& params = sep.params();
    if (params.n != family.universe_size() || params.p != family.set_size()) {
        throw InputError("separator shape (n=" + std::to_string(params.n) + ", p=" + std::to_string(params.p) +
                         ") does not match family (n=" + std::to_string(family.universe_size()) +
                         ", p=" + std::to_string(family.set_size()) + ")");
    }
    if (mode != RepMode::kUnweighted && !family.weighted()) {
        throw InputError("weighted mode " + std::string(to_string(mode)) + " needs a weighted family");
    }

    std::vector<std::size_t> order(family.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (mode == RepMode::kMax) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return family.weight(a) > family.weight(b); });
    } else if (mode == RepMode::kMin) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return family.weight(a) < family.weight(b); });
    }

    WeightedFamily out(family.universe_size(), family.set_size(), family.weighted());
    std::vector<Separator::Word> used(sep.mask_words(), 0);
    for (std::size_t i : order) {
        const auto chi = sep.chi_mask(family.member(i));
        bool fresh = false;
        for (std::size_t w = 0; w < chi.size(); ++w) {
            fresh = fresh || (chi[w] & ~used[w]) != 0;
            used[w] |= chi[w];
        }
        if (!fresh) {
            continue;
        }
        if (family.weighted()) {
            out.add(family.member(i), family.weight(i));
        } else {
            out.add(family.member(i));
        }
    }
    return out;
}

WeightedFamily compute_representative(Universe universe, std::size_t k, const WeightedFamily& family, RepMode mode,
                                      const RepConfig& config, SeparatorCache* cache) {
    if (family.set_size() > k) {
        throw InputError("set size " + std::to_string(family.set_size()) + " exceeds rank " + std::to_string(k));
    }
    if (family.empty()) {
        return family;
    }
    if (family.universe_size() != universe.n) {
        throw InputError("family universe size " + std::to_string(family.universe_size()) + " differs from n = " +
                         std::to_string(universe.n));
    }
    const SeparatorParams params{universe.n, k, family.set_size(), config.c};
    const std::size_t threshold = config.skip_threshold.value_or(separator_set_count(params));
    if (family.size() <= threshold) {
        return family;
    }
    if (cache != nullptr) {
        return compute_representative_with(*cache->get(params), family, mode);
    }
    SeparatorCache local(config);
    return compute_representative_with(*local.get(params), family, mode);
}

WeightedFamily RepresentativeFilter::operator()(Universe universe, std::size_t k, const WeightedFamily& family,
                                                RepMode mode) {
    const auto start = std::chrono::steady_clock::now();
    auto out = compute_representative(universe, k, family, mode, config_, &cache_);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    nanos_.fetch_add(static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count()));
    calls_.fetch_add(1);
    if (out.size() < family.size()) {
        filtered_.fetch_add(1);
    }
    input_members_.fetch_add(family.size());
    output_members_.fetch_add(out.size());
    atomic_max(max_input_, family.size());
    atomic_max(max_output_, out.size());
    return out;
}

FilterStats RepresentativeFilter::stats() const {
    return {calls_.load(), filtered_.load(), input_members_.load(), output_members_.load(), max_input_.load(),
            max_output_.load(), static_cast<double>(nanos_.load()) * 1e-9};
}

}  // namespace repfam
