// Acceptance battery: one PASS/FAIL line per criterion; exits 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "repfam/bench.hpp"
#include "repfam/bounds.hpp"
#include "repfam/cli.hpp"
#include "repfam/kpath.hpp"
#include "repfam/ktree.hpp"
#include "repfam/pcover.hpp"
#include "repfam/report.hpp"
#include "repfam/representation.hpp"
#include "repfam/representative.hpp"
#include "repfam/subsets.hpp"
#include "support/oracles.hpp"

using namespace repfam;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = seconds < limit_seconds;
    const bool pass = outcome.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s [%d] %s: %s (%.2f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", id, name,
                outcome.detail.c_str(), seconds, limit_seconds, in_time ? "" : ", over time");
    std::fflush(stdout);
}

Digraph random_digraph(std::mt19937_64& rng, std::size_t n, double density) {
    std::bernoulli_distribution arc(density);
    std::vector<std::pair<Node, Node>> arcs;
    for (Node a = 0; a < n; ++a) {
        for (Node b = 0; b < n; ++b) {
            if (a != b && arc(rng)) {
                arcs.emplace_back(a, b);
            }
        }
    }
    return Digraph(n, arcs);
}

// Digraph on n nodes whose arcs are the set bits of `code` over the n(n-1) ordered pairs.
Digraph digraph_from_code(std::size_t n, std::uint64_t code) {
    std::vector<std::pair<Node, Node>> arcs;
    std::size_t bit = 0;
    for (Node a = 0; a < n; ++a) {
        for (Node b = 0; b < n; ++b) {
            if (a != b) {
                if ((code >> bit) & 1) {
                    arcs.emplace_back(a, b);
                }
                ++bit;
            }
        }
    }
    return Digraph(n, arcs);
}

RepConfig forced_config(std::uint64_t seed) {
    RepConfig config;
    config.seed = seed;
    config.skip_threshold = 0;
    return config;
}

Outcome representation_battery() {
    std::mt19937_64 rng(1001);
    const int instances = 210;
    int passed = 0;
    int checks = 0;
    int filtered = 0;
    SeparatorCache cache(forced_config(7));
    for (int i = 0; i < instances; ++i) {
        const std::size_t n = 4 + rng() % 9;
        const std::size_t k = 1 + rng() % std::min<std::size_t>(6, n);
        const std::size_t p = rng() % (k + 1);
        const std::size_t m = 1 + rng() % 100;
        WeightedFamily family(n, p, true);
        const auto all = enumerate_subsets(Universe{n}, p, ElementSet(n));
        for (std::size_t j = 0; j < m; ++j) {
            family.add(all[rng() % all.size()], static_cast<double>(rng() % 1000) / 10.0);
        }
        bool ok = true;
        for (auto mode : {RepMode::kMax, RepMode::kMin, RepMode::kUnweighted}) {
            const auto sub = compute_representative(Universe{n}, k, family, mode, forced_config(7), &cache);
            filtered += sub.size() < family.size() ? 1 : 0;
            ++checks;
            const bool library = verify_representation(family, sub, k, mode).represents;
            const bool reference = oracle::represents(family, sub, k, mode) && oracle::is_subfamily(family, sub);
            ok = ok && library && reference;
        }
        passed += ok ? 1 : 0;
    }
    return {passed == instances, fmt::format("{}/{} instances pass in all three modes ({} filter calls, {} shrank)",
                                             passed, instances, checks, filtered)};
}

Outcome constants() {
    const auto pc = optimize_base(1.447, BaseShape::kPartialCover);
    const auto cycle = optimize_base(1.5, BaseShape::kCycle);
    const double iob = kiob_base(1.447);
    const double unit = optimize_base(1.0, BaseShape::kPartialCover).base;
    const bool ok = std::abs(pc.base - 2.61804) <= 1e-3 && std::abs(pc.alpha - 0.55277) <= 1e-3 &&
                    std::abs(cycle.base - 6.75) <= 1e-3 && std::abs(cycle.alpha - 1.0) <= 1e-3 &&
                    std::abs(iob - 6.85414) <= 1e-3 && std::abs(unit - 2.85043) <= 1e-3;
    return {ok, fmt::format("pc base {:.5f} alpha {:.5f}; cycle base {:.5f} at {:.4f}; kiob {:.5f}; c=1 base {:.5f}",
                            pc.base, pc.alpha, cycle.base, cycle.alpha, iob, unit)};
}

Outcome separator_statistics() {
    const SeparatorParams params{12, 4, 2, 1.447};
    int covers = 0;
    double sum_sampled = 0.0;
    double sum_scan = 0.0;
    double expected = 0.0;
    std::mt19937_64 rng(3003);
    const auto pairs = enumerate_subsets(Universe{12}, 2, ElementSet(12));
    const int seeds = 100;
    for (int seed = 0; seed < seeds; ++seed) {
        const Separator sep = build_randomized(params, static_cast<std::uint64_t>(seed));
        covers += verify_separator(sep) ? 1 : 0;
        const auto stats = measure_separator(sep, 1000, static_cast<std::uint64_t>(seed));
        sum_sampled += stats.delta_mean_sampled;
        expected = stats.delta_expected;
        // independent count by scanning the sets
        double scanned = 0.0;
        for (int s = 0; s < 200; ++s) {
            const auto& x = pairs[rng() % pairs.size()];
            for (const auto& f : sep.sets()) {
                scanned += x.is_subset_of(f) ? 1 : 0;
            }
        }
        sum_scan += scanned / 200;
    }
    const double mean = sum_sampled / seeds;
    const double scan = sum_scan / seeds;
    const double rate = static_cast<double>(covers) / seeds;
    auto within = [&](double v) { return v >= expected / 3 && v <= expected * 3; };
    return {rate >= 0.9 && within(mean) && within(scan),
            fmt::format("pass rate {:.2f}; mean |chi(S)| {:.2f} sampled, {:.2f} scanned, expected {:.2f}", rate, mean,
                        scan, expected)};
}

Outcome pcover_battery() {
    std::mt19937_64 rng(4004);
    const int instances = 300;
    int agree = 0;
    int shortcut_cases = 0;
    int shortcut_ok = 0;
    for (int i = 0; i < instances; ++i) {
        const std::size_t n = 2 + rng() % 9;
        const std::size_t m = 1 + rng() % 8;
        const std::size_t k = 2 + rng() % 5;
        PCInstance inst{Universe{n}, {}, k};
        std::vector<oracle::Mask> masks;
        bool has_big = false;
        for (std::size_t j = 0; j < m; ++j) {
            ElementSet s(n);
            const std::size_t size = rng() % (std::min<std::size_t>(n, 3) + 1);
            while (s.size() < size) {
                s.insert(static_cast<Element>(rng() % n));
            }
            has_big = has_big || s.size() >= k;
            inst.sets.push_back(s);
            masks.push_back(oracle::to_mask(s));
        }
        PCOptions options;
        options.rep = forced_config(static_cast<std::uint64_t>(i));
        const PCResult r = solve_partial_cover(inst, options);
        const auto brute = brute_force_pcover(inst);
        agree += r.answer == brute && brute == oracle::min_partial_cover(masks, k) ? 1 : 0;
        if (has_big) {
            ++shortcut_cases;
            shortcut_ok += r.answer == std::optional<std::size_t>{1} && r.shortcut ? 1 : 0;
        }
    }
    return {agree == instances && shortcut_ok == shortcut_cases,
            fmt::format("{}/{} match brute force; shortcut {}/{}", agree, instances, shortcut_ok, shortcut_cases)};
}

Outcome tree_battery() {
    std::mt19937_64 rng(5005);
    std::vector<Digraph> graphs;
    // every digraph on at most 3 nodes, then samples on 4 and 5 nodes
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * (n - 1))); ++code) {
            graphs.push_back(digraph_from_code(n, code));
        }
    }
    while (graphs.size() < 500) {
        const std::size_t n = 4 + rng() % 2;
        graphs.push_back(digraph_from_code(n, rng() & ((std::uint64_t{1} << (n * (n - 1))) - 1)));
    }
    const std::size_t small = graphs.size();
    std::uniform_real_distribution<double> density(0.15, 0.45);
    for (int i = 0; i < 100; ++i) {
        graphs.push_back(random_digraph(rng, 6 + rng() % 2, density(rng)));
    }
    std::size_t tree_queries = 0;
    std::size_t tree_ok = 0;
    std::size_t iob_queries = 0;
    std::size_t iob_ok = 0;
    std::size_t yes = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const Digraph& g = graphs[i];
        const Node r = static_cast<Node>(rng() % g.size());
        TreeOptions options;
        options.rep = forced_config(i);
        options.d = 2;
        const auto profiles = out_tree_profiles(g, r);
        const bool cross = g.arc_count() <= 14;
        const auto reference = cross ? oracle::out_tree_profiles(g, r) : profiles;
        for (std::size_t k = 1; k <= 5; ++k) {
            for (std::size_t t = 1; k + t <= 6; ++t) {
                const bool expected = brute_force_kt_tree(g, r, k, t);
                const bool got = solve_kt_tree(g, r, k, t, options).answer;
                ++tree_queries;
                yes += expected ? 1 : 0;
                tree_ok += got == expected && expected == (reference.count({k, t}) > 0) ? 1 : 0;
            }
            const bool expected = brute_force_kiob(g, k);
            const auto best = oracle::max_internal_branching(g);
            ++iob_queries;
            iob_ok += solve_kiob(g, k, options).answer == expected &&
                              (!cross || expected == (best && *best >= k))
                          ? 1
                          : 0;
        }
    }
    return {tree_ok == tree_queries && iob_ok == iob_queries,
            fmt::format("{} graphs ({} on <= 5 nodes): (k,t)-tree {}/{} ({} yes), k-IOB {}/{}", graphs.size(), small,
                        tree_ok, tree_queries, yes, iob_ok, iob_queries)};
}

// A random out-tree of g rooted at r with `size` nodes, grown one arc at a time.
std::optional<OutTree> random_out_tree(std::mt19937_64& rng, const Digraph& g, Node r, std::size_t size) {
    OutTree tree{r, ElementSet(g.size(), {r}), std::vector<Node>(g.size(), kNoParent)};
    while (tree.size() < size) {
        std::vector<std::pair<Node, Node>> frontier;
        tree.nodes.for_each([&](Node x) {
            for (Node y : g.out(x)) {
                if (!tree.nodes.contains(y)) {
                    frontier.emplace_back(x, y);
                }
            }
        });
        if (frontier.empty()) {
            return std::nullopt;
        }
        const auto [x, y] = frontier[rng() % frontier.size()];
        tree.nodes.insert(y);
        tree.parent[y] = x;
    }
    return tree;
}

bool some_guide_complies(const Digraph& g, const OutTree& tree, Node u) {
    const std::size_t k = tree.internal_count();
    const std::size_t t = tree.leaf_count();
    GuideTreeLimits limits;
    limits.max_nodes = 4 * 2;
    limits.labels = tree.nodes;
    bool found = false;
    for_each_guide_tree(g.size(), tree.root, u, limits, [&](const GuideTree& guide) {
        found = complies(tree, guide, k, t, 2);
        return !found;
    });
    return found;
}

Outcome coverage_battery() {
    std::mt19937_64 rng(6006);
    std::size_t trees = 0;
    std::size_t covered = 0;
    std::size_t leaf_checks = 0;
    std::size_t leaf_covered = 0;
    std::vector<std::size_t> by_size(9, 0);
    while (trees < 600) {
        const std::size_t size = 3 + rng() % 6;
        const std::size_t n = size + rng() % (9 - size);
        const Digraph g = random_digraph(rng, n, 0.3 + 0.4 * static_cast<double>(rng() % 100) / 100);
        const Node r = static_cast<Node>(rng() % n);
        const auto tree = random_out_tree(rng, g, r, size);
        if (!tree) {
            continue;
        }
        ++trees;
        ++by_size[size];
        covered += some_guide_complies(g, *tree, r) ? 1 : 0;
        std::vector<Node> leaves;
        tree->nodes.for_each([&](Node x) {
            if (x != r && !tree->has_children(x)) {
                leaves.push_back(x);
            }
        });
        const Node u = leaves[rng() % leaves.size()];
        ++leaf_checks;
        leaf_covered += some_guide_complies(g, *tree, u) ? 1 : 0;
    }
    std::string sizes;
    for (std::size_t s = 3; s <= 8; ++s) {
        sizes += fmt::format("{}{}:{}", s == 3 ? "" : " ", s, by_size[s]);
    }
    return {covered == trees && leaf_covered == leaf_checks,
            fmt::format("{}/{} trees covered with u = root, {}/{} with u a leaf (sizes {})", covered, trees,
                        leaf_covered, leaf_checks, sizes)};
}

Outcome kpath_battery() {
    std::mt19937_64 rng(7007);
    std::uniform_real_distribution<double> weight(0.1, 10.0);
    const int instances = 300;
    int agree = 0;
    int found = 0;
    for (int i = 0; i < instances; ++i) {
        const std::size_t n = 2 + rng() % 9;
        const bool directed = rng() % 2;
        const double density = 0.2 + 0.4 * static_cast<double>(rng() % 100) / 100;
        WeightedGraph g(n, directed);
        for (Node a = 0; a < n; ++a) {
            for (Node b = directed ? 0 : a + 1; b < n; ++b) {
                if (a != b && static_cast<double>(rng() % 1000) / 1000 < density) {
                    g.add_edge(a, b, weight(rng));
                }
            }
        }
        const std::size_t k = 1 + rng() % 6;
        KPathOptions options;
        options.rep = forced_config(static_cast<std::uint64_t>(i));
        const auto got = solve_weighted_kpath(g, k, options).answer;
        const auto brute = brute_force_kpath(g, k);
        const auto perm = oracle::min_path(g, k);
        agree += got == brute && brute == perm ? 1 : 0;
        found += got ? 1 : 0;
    }
    return {agree == instances,
            fmt::format("{}/{} exact weight matches ({} with a path)", agree, instances, found)};
}

Outcome determinism() {
    const std::string data = REPFAM_DATA_DIR;
    const std::vector<std::vector<std::string>> commands{
        {"repfam", data + "/weighted_family.txt", "--skip-threshold", "0"},
        {"repfam", data + "/small_family.txt", "--skip-threshold", "0", "--debug-verify"},
        {"separator", "--n", "12", "--k", "4", "--p", "2", "--verify"},
        {"pcover", data + "/pcover_k4.txt", "--skip-threshold", "0"},
        {"kds", data + "/path4.graph", "--k", "4", "--skip-threshold", "0"},
        {"kttree", data + "/path4.graph", "--k", "2", "--t", "2", "--skip-threshold", "0"},
        {"kiob", data + "/star4.graph", "--k", "1", "--skip-threshold", "0"},
        {"kpath", data + "/triangle.wgraph", "--k", "3", "--skip-threshold", "0"},
        {"bounds", "--k", "40", "--p-frac", "0.55277", "--c", "1.447"},
        {"verify", data + "/small_family.txt", "--sub", data + "/small_subfamily.txt"},
        {"bench", "--suite", "c-sweep"},
        {"bench", "--suite", "pcover"},
    };
    std::size_t stable = 0;
    std::size_t threaded_runs = 0;
    std::string first_bad;
    for (auto args : commands) {
        auto run = [&](const std::vector<std::string>& a) {
            std::ostringstream out;
            std::ostringstream err;
            dispatch(a, out, err);
            return without_timings(Json::parse(out.str())).dump();
        };
        const std::string once = run(args);
        const std::string twice = run(args);
        std::string threaded = once;
        // bounds and verify are single-threaded and take no --threads flag
        if (args[0] != "bounds" && args[0] != "verify") {
            ++threaded_runs;
            args.insert(args.end(), {"--threads", "8"});
            threaded = run(args);
        }
        if (once == twice && once == threaded) {
            ++stable;
        } else if (first_bad.empty()) {
            first_bad = args[0];
        }
    }
    return {stable == commands.size(),
            fmt::format("{}/{} commands byte-identical across repeats, {} of them also under --threads 8{}", stable,
                        commands.size(), threaded_runs,
                        first_bad.empty() ? "" : " (first mismatch: " + first_bad + ")")};
}

Outcome tradeoff() {
    const BenchTable table = run_bench({});
    // t at the reference shape, evaluated from the formula before trusting the table
    bool formula_increasing = true;
    for (std::size_t i = 1; i < kCSweepValues.size(); ++i) {
        SeparatorParams lo = table.reference;
        SeparatorParams hi = table.reference;
        lo.c = kCSweepValues[i - 1];
        hi.c = kCSweepValues[i];
        formula_increasing = formula_increasing && separator_size_formula(lo) < separator_size_formula(hi);
    }
    bool t_increasing = !table.rows.empty();
    std::string cells;
    std::string current;
    std::size_t previous_t = 0;
    for (const auto& row : table.rows) {
        if (row.instance != current) {
            current = row.instance;
            previous_t = 0;
            cells += (cells.empty() ? "" : "; ") + row.instance + " max cell";
        }
        t_increasing = t_increasing && row.t > previous_t;
        previous_t = row.t;
        cells += fmt::format(" {}", row.max_cell);
    }
    std::string ts;
    for (std::size_t i = 0; i < kCSweepValues.size() && i < table.rows.size(); ++i) {
        ts += fmt::format("{}{}", i ? " < " : "", table.rows[i].t);
    }
    return {formula_increasing && t_increasing && !table.truncated,
            fmt::format("t {} over c = 1.0, 1.2, 1.447, 2.0; {} (reported only)", ts, cells)};
}

}  // namespace

int main() {
    criterion(1, "representation correctness", 300, representation_battery);
    criterion(2, "constant reproduction", 1, constants);
    criterion(3, "separator statistics", 120, separator_statistics);
    criterion(4, "k-PC oracle equivalence", 600, pcover_battery);
    criterion(5, "(k,t)-tree and k-IOB oracle equivalence", 1200, tree_battery);
    criterion(6, "guide tree coverage", 600, coverage_battery);
    criterion(7, "weighted k-path oracle equivalence", 300, kpath_battery);
    criterion(8, "determinism", 600, determinism);
    criterion(9, "tradeoff observable", 600, tradeoff);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
