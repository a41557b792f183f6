#include "repfam/representation.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "repfam/errors.hpp"
#include "repfam/subsets.hpp"

namespace repfam {

namespace {

void require_subfamily(const WeightedFamily& family, const WeightedFamily& subfamily) {
    if (subfamily.empty()) {
        return;
    }
    if (subfamily.universe_size() != family.universe_size() || subfamily.set_size() != family.set_size()) {
        throw InputError("subfamily shape differs from family");
    }
    std::map<std::pair<ElementSet, double>, std::size_t> available;
    for (std::size_t i = 0; i < family.size(); ++i) {
        ++available[{family.member(i), family.weight(i)}];
    }
    for (std::size_t i = 0; i < subfamily.size(); ++i) {
        auto it = available.find({subfamily.member(i), subfamily.weight(i)});
        if (it == available.end() || it->second == 0) {
            throw InputError("subfamily member " + subfamily.member(i).to_string() + " is not in the family");
        }
        --it->second;
    }
}

// Index of the best member of `family` disjoint from y, if any. Ties keep the
// earliest member.
std::optional<std::size_t> best_avoiding(const WeightedFamily& family, const ElementSet& y, RepMode mode) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!family.member(i).is_disjoint(y)) {
            continue;
        }
        if (!best) {
            best = i;
            if (mode == RepMode::kUnweighted) {
                return best;
            }
            continue;
        }
        const double w = family.weight(i);
        const double incumbent = family.weight(*best);
        if ((mode == RepMode::kMax && w > incumbent) || (mode == RepMode::kMin && w < incumbent)) {
            best = i;
        }
    }
    return best;
}

}  // namespace

RepresentationCheck verify_representation(const WeightedFamily& family, const WeightedFamily& subfamily,
                                          std::size_t k, RepMode mode, std::uint64_t budget) {
    const std::size_t p = family.set_size();
    if (p > k) {
        throw InputError("set size " + std::to_string(p) + " exceeds rank " + std::to_string(k));
    }
    require_subfamily(family, subfamily);
    if (family.empty()) {
        return {true, std::nullopt};
    }

    const Universe universe{family.universe_size()};
    const std::size_t max_y = std::min(k - p, universe.n);
    std::uint64_t work = 0;
    for (std::size_t y = 0; y <= max_y; ++y) {
        work += binomial(universe.n, y) * (family.size() + subfamily.size());
        if (work > budget) {
            throw ResourceError("representation check needs about " + std::to_string(work) +
                                " set comparisons, budget is " + std::to_string(budget));
        }
    }

    RepresentationCheck result{true, std::nullopt};
    for (std::size_t y_size = 0; y_size <= max_y && result.represents; ++y_size) {
        for_each_subset(universe, y_size, [&](const ElementSet& y) {
            const auto x = best_avoiding(family, y, mode);
            if (!x) {
                return true;
            }
            const auto candidate = best_avoiding(subfamily, y, mode);
            if (candidate && dominates(mode, subfamily.weight(*candidate), family.weight(*x))) {
                return true;
            }
            result = {false, RepresentationWitness{family.member(*x), y}};
            return false;
        });
    }
    return result;
}

}  // namespace repfam
