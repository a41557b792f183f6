#include "repfam/family.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "repfam/errors.hpp"

namespace repfam {

std::string_view to_string(RepMode mode) {
    switch (mode) {
        case RepMode::kMax:
            return "max";
        case RepMode::kMin:
            return "min";
        case RepMode::kUnweighted:
            return "unweighted";
    }
    return "unknown";
}

RepMode parse_rep_mode(std::string_view text) {
    if (text == "max") {
        return RepMode::kMax;
    }
    if (text == "min") {
        return RepMode::kMin;
    }
    if (text == "unweighted") {
        return RepMode::kUnweighted;
    }
    throw InputError("unknown mode '" + std::string(text) + "' (expected max, min or unweighted)");
}

bool dominates(RepMode mode, double candidate, double target) noexcept {
    switch (mode) {
        case RepMode::kMax:
            return candidate >= target;
        case RepMode::kMin:
            return candidate <= target;
        case RepMode::kUnweighted:
            return true;
    }
    return false;
}

void WeightedFamily::check_member(const ElementSet& set) const {
    if (set.universe_size() != universe_size_) {
        throw InputError("member universe size " + std::to_string(set.universe_size()) +
                         " does not match family universe " + std::to_string(universe_size_));
    }
    if (set.size() != set_size_) {
        throw InputError("member " + set.to_string() + " has size " + std::to_string(set.size()) +
                         ", family set size is " + std::to_string(set_size_));
    }
}

void WeightedFamily::add(ElementSet set) {
    if (weighted_) {
        throw InputError("weighted family requires a weight for every member");
    }
    check_member(set);
    members_.push_back(std::move(set));
}

void WeightedFamily::add(ElementSet set, double weight) {
    if (!weighted_) {
        throw InputError("unweighted family cannot store weights");
    }
    check_member(set);
    members_.push_back(std::move(set));
    weights_.push_back(weight);
}

void WeightedFamily::reserve(std::size_t count) {
    members_.reserve(count);
    if (weighted_) {
        weights_.reserve(count);
    }
}

void WeightedFamily::clear() noexcept {
    members_.clear();
    weights_.clear();
}

void WeightedFamily::append(const WeightedFamily& other) {
    if (other.universe_size_ != universe_size_ || other.set_size_ != set_size_ || other.weighted_ != weighted_) {
        throw InputError("cannot append families of different shape");
    }
    members_.insert(members_.end(), other.members_.begin(), other.members_.end());
    weights_.insert(weights_.end(), other.weights_.begin(), other.weights_.end());
}

WeightedFamily deduplicate(const WeightedFamily& family, RepMode mode) {
    std::unordered_map<ElementSet, std::size_t, ElementSetHash> best;
    best.reserve(family.size());
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < family.size(); ++i) {
        auto [it, inserted] = best.try_emplace(family.member(i), i);
        if (inserted) {
            order.push_back(i);
            continue;
        }
        const double incumbent = family.weight(it->second);
        const double challenger = family.weight(i);
        const bool better = (mode == RepMode::kMax && challenger > incumbent) ||
                            (mode == RepMode::kMin && challenger < incumbent);
        if (better) {
            it->second = i;
        }
    }
    WeightedFamily out(family.universe_size(), family.set_size(), family.weighted());
    out.reserve(order.size());
    for (std::size_t first : order) {
        const std::size_t chosen = best.at(family.member(first));
        if (family.weighted()) {
            out.add(family.member(chosen), family.weight(chosen));
        } else {
            out.add(family.member(chosen));
        }
    }
    return out;
}

WeightedFamily canonicalize(const WeightedFamily& family) {
    std::vector<std::size_t> order(family.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return family.member(a) < family.member(b); });
    WeightedFamily out(family.universe_size(), family.set_size(), family.weighted());
    out.reserve(order.size());
    for (std::size_t i : order) {
        if (family.weighted()) {
            out.add(family.member(i), family.weight(i));
        } else {
            out.add(family.member(i));
        }
    }
    return out;
}

}  // namespace repfam
