#include "repfam/pcover.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "repfam/errors.hpp"
#include "repfam/parallel.hpp"
#include "repfam/representation.hpp"
#include "repfam/subsets.hpp"

namespace repfam {

namespace {

using Row = std::vector<std::vector<WeightedFamily>>;  // [j][l]

WeightedFamily empty_family(std::size_t n, std::size_t p) { return WeightedFamily(n, p); }

WeightedFamily from_set(std::size_t n, std::size_t p, const std::set<ElementSet>& sets) {
    WeightedFamily f(n, p);
    f.reserve(sets.size());
    for (const auto& s : sets) {
        f.add(s);
    }
    return f;
}

std::string cell_name(std::size_t i, std::size_t j, std::size_t l) {
    return "M[" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(l) + "]";
}

void check_represents(VerificationSummary& summary, const WeightedFamily& truth, const WeightedFamily& stored,
                      std::size_t k, std::uint64_t budget, const std::string& what) {
    try {
        const auto check = verify_representation(truth, stored, k, RepMode::kUnweighted, budget);
        std::string message = what + " does not represent its solution family";
        if (check.witness) {
            message += " (X=" + check.witness->x.to_string() + ", Y=" + check.witness->y.to_string() + ")";
        }
        summary.record(check.represents, message);
    } catch (const InputError& e) {
        summary.record(false, what + " holds a set outside its solution family: " + e.what());
    }
}

// Sol_{i,j,l}: j-subsets of the union of some l sets among the first i.
std::set<ElementSet> solution_family(const PCInstance& inst, const std::vector<ElementSet>& unions, std::size_t j) {
    std::set<ElementSet> out;
    for (const auto& u : unions) {
        for_each_subset(inst.universe, j, ElementSet::full(inst.universe.n) - u,
                        [&](const ElementSet& s) { out.insert(s); });
    }
    return out;
}

// Distinct unions of l-subfamilies of the first i sets.
std::vector<ElementSet> subfamily_unions(const PCInstance& inst, std::size_t i, std::size_t l) {
    std::set<ElementSet> unions;
    for_each_subset(Universe{i}, l, [&](const ElementSet& chosen) {
        ElementSet u(inst.universe.n);
        chosen.for_each([&](Element idx) { u |= inst.sets[idx]; });
        unions.insert(u);
    });
    return {unions.begin(), unions.end()};
}

// A*_{r',j'}: sets S u S' of size j' with S from `base` and S' from `prefix`.
std::set<ElementSet> extended_family(const std::vector<ElementSet>& base, const ElementSet& prefix, std::size_t j,
                                     std::size_t n) {
    std::set<ElementSet> out;
    for (const auto& s : base) {
        if (s.size() > j) {
            continue;
        }
        const ElementSet avail = prefix - s;
        for_each_subset(Universe{n}, j - s.size(), ElementSet::full(n) - avail,
                        [&](const ElementSet& extra) { out.insert(s | extra); });
    }
    return out;
}

}  // namespace

void validate(const PCInstance& inst) {
    if (inst.k == 0) {
        throw InputError("coverage target k must be at least 1");
    }
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        if (inst.sets[i].universe_size() != inst.universe.n) {
            throw InputError("set " + std::to_string(i) + " lives in a universe of size " +
                             std::to_string(inst.sets[i].universe_size()) + ", expected " +
                             std::to_string(inst.universe.n));
        }
    }
}

PCResult solve_partial_cover(const PCInstance& inst, const PCOptions& options) {
    validate(inst);
    PCResult result;
    for (const auto& s : inst.sets) {
        if (s.size() >= inst.k) {
            result.answer = 1;
            result.shortcut = true;
            return result;
        }
    }

    const std::size_t n = inst.universe.n;
    const std::size_t k = inst.k;
    const std::size_t m = inst.sets.size();
    RepresentativeFilter filter(options.rep);
    if (options.debug_verify) {
        result.verification.emplace();
    }

    auto make_row = [&] {
        Row row(k + 1);
        for (std::size_t j = 0; j <= k; ++j) {
            row[j].assign(k + 1, empty_family(n, j));
        }
        return row;
    };
    Row prev = make_row();

    for (std::size_t i = 1; i <= m; ++i) {
        const ElementSet& current = inst.sets[i - 1];
        const std::vector<Element> elements = current.elements();
        Row row = make_row();
        const std::size_t max_l = std::min(i, k);
        std::vector<std::size_t> inner_max(max_l + 1, 0);
        std::vector<VerificationSummary> inner_checks(max_l + 1);

        // A_{r',j'} does not depend on j, so one pass per (i, l) serves every j.
        parallel_for(max_l, options.rep.threads, [&](std::size_t idx) {
            const std::size_t l = idx + 1;
            std::vector<WeightedFamily> a(k + 1);
            a[0] = empty_family(n, 0);
            a[0].add(ElementSet(n));
            for (std::size_t j = 1; j <= k; ++j) {
                a[j] = prev[j][l - 1];
            }

            std::vector<ElementSet> base;  // union of M[i-1, *, l-1] and the empty set
            if (options.debug_verify) {
                base.emplace_back(n);
                for (std::size_t j = 1; j <= k; ++j) {
                    const auto& members = prev[j][l - 1].members();
                    base.insert(base.end(), members.begin(), members.end());
                }
            }

            ElementSet prefix(n);
            for (std::size_t r = 1; r <= elements.size(); ++r) {
                const Element s = elements[r - 1];
                prefix.insert(s);
                std::vector<WeightedFamily> next(k + 1);
                next[0] = a[0];
                for (std::size_t j = 1; j <= k; ++j) {
                    WeightedFamily candidates = a[j];
                    for (const auto& set : a[j - 1].members()) {
                        if (!set.contains(s)) {
                            ElementSet grown = set;
                            grown.insert(s);
                            candidates.add(std::move(grown));
                        }
                    }
                    next[j] = filter(inst.universe, k, deduplicate(candidates, RepMode::kUnweighted),
                                     RepMode::kUnweighted);
                    inner_max[l] = std::max(inner_max[l], next[j].size());
                }
                a = std::move(next);
                if (options.debug_verify) {
                    for (std::size_t j = 0; j <= k; ++j) {
                        const auto truth = from_set(n, j, extended_family(base, prefix, j, n));
                        check_represents(inner_checks[l], truth, a[j], k, options.oracle_budget,
                                         "A[" + std::to_string(r) + "," + std::to_string(j) + "] of " +
                                             cell_name(i, j, l));
                    }
                }
            }

            for (std::size_t j = 1; j <= k; ++j) {
                WeightedFamily merged = prev[j][l];
                merged.append(a[j]);
                row[j][l] = filter(inst.universe, k, deduplicate(merged, RepMode::kUnweighted), RepMode::kUnweighted);
            }
        });

        for (std::size_t l = 1; l <= max_l; ++l) {
            result.max_inner_size = std::max(result.max_inner_size, inner_max[l]);
            if (result.verification) {
                result.verification->merge(inner_checks[l]);
            }
        }
        for (std::size_t j = 1; j <= k; ++j) {
            for (std::size_t l = 0; l <= k; ++l) {
                const std::size_t size = row[j][l].size();
                result.cells_filled += size > 0 ? 1 : 0;
                result.max_cell_size = std::max(result.max_cell_size, size);
            }
        }
        if (result.verification) {
            for (std::size_t l = 1; l <= max_l; ++l) {
                const auto unions = subfamily_unions(inst, i, l);
                for (std::size_t j = 1; j <= k; ++j) {
                    const auto truth = from_set(n, j, solution_family(inst, unions, j));
                    check_represents(*result.verification, truth, row[j][l], k, options.oracle_budget,
                                     cell_name(i, j, l));
                }
            }
        }
        prev = std::move(row);
    }

    for (std::size_t l = 1; l <= k; ++l) {
        if (!prev[k][l].empty()) {
            result.answer = l;
            break;
        }
    }
    result.filter = filter.stats();
    result.separators = filter.cache().entries();
    return result;
}

std::optional<std::size_t> brute_force_pcover(const PCInstance& inst, std::size_t max_sets) {
    validate(inst);
    const std::size_t m = inst.sets.size();
    if (m > max_sets) {
        throw ResourceError("brute-force partial cover enumerates 2^" + std::to_string(m) +
                            " subfamilies; limit is " + std::to_string(max_sets) + " sets");
    }
    for (std::size_t l = 1; l <= m; ++l) {
        bool found = false;
        for_each_subset(Universe{m}, l, [&](const ElementSet& chosen) {
            ElementSet u(inst.universe.n);
            chosen.for_each([&](Element idx) { u |= inst.sets[idx]; });
            found = u.size() >= inst.k;
            return !found;
        });
        if (found) {
            return l;
        }
    }
    return std::nullopt;
}

PCInstance dominating_set_reduce(const Digraph& g, std::size_t k) {
    PCInstance inst{Universe{g.size()}, {}, k};
    inst.sets.reserve(g.size());
    for (Node v = 0; v < g.size(); ++v) {
        ElementSet closed = g.out_set(v);
        closed.insert(v);
        for (Node u : g.in(v)) {
            closed.insert(u);
        }
        inst.sets.push_back(std::move(closed));
    }
    return inst;
}

}  // namespace repfam
