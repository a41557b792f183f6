#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "repfam/element_set.hpp"
#include "repfam/errors.hpp"
#include "repfam/family.hpp"
#include "repfam/family_io.hpp"
#include "repfam/graph.hpp"
#include "repfam/representation.hpp"
#include "repfam/subsets.hpp"
#include "support/oracles.hpp"

using namespace repfam;

namespace {

// a..e as 0..4
constexpr Element a = 0, b = 1, c = 2, d = 3, e = 4;

WeightedFamily sets(std::size_t n, std::size_t p, std::initializer_list<std::initializer_list<Element>> members) {
    WeightedFamily f(n, p);
    for (auto m : members) {
        f.add(ElementSet(n, m));
    }
    return f;
}

WeightedFamily random_family(std::mt19937_64& rng, std::size_t n, std::size_t p, std::size_t m, bool weighted) {
    WeightedFamily f(n, p, weighted);
    auto all = enumerate_subsets(Universe{n}, p, ElementSet(n));
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    std::uniform_int_distribution<int> w(0, 9);
    for (std::size_t i = 0; i < m; ++i) {
        if (weighted) {
            f.add(all[pick(rng)], w(rng));
        } else {
            f.add(all[pick(rng)]);
        }
    }
    return f;
}

}  // namespace

TEST(ElementSet, BasicOperations) {
    ElementSet s(70, {1, 5, 69});
    EXPECT_EQ(s.size(), 3u);
    EXPECT_TRUE(s.contains(69));
    EXPECT_FALSE(s.contains(2));
    ElementSet t(70, {5, 6});
    EXPECT_EQ((s | t).size(), 4u);
    EXPECT_EQ((s & t), ElementSet(70, {5}));
    EXPECT_EQ((s - t), ElementSet(70, {1, 69}));
    EXPECT_FALSE(s.is_disjoint(t));
    EXPECT_TRUE(ElementSet(70, {5}).is_subset_of(s));
    EXPECT_EQ(s.elements(), (std::vector<Element>{1, 5, 69}));
    EXPECT_NE(ElementSet(3, {0}), ElementSet(4, {0}));
}

TEST(ElementSet, RejectsBadElements) {
    const std::vector<Element> dup{0, 0, 1};
    EXPECT_THROW(ElementSet::from_elements(5, dup), InputError);
    const std::vector<Element> big{7};
    EXPECT_THROW(ElementSet::from_elements(5, big), InputError);
}

TEST(Subsets, CountMatchesBinomialAndDistinct) {
    for (std::size_t n = 0; n <= 9; ++n) {
        const ElementSet excluding = n > 2 ? ElementSet(n, {0, 2}) : ElementSet(n);
        for (std::size_t r = 0; r <= n + 1; ++r) {
            const auto subsets = enumerate_subsets(Universe{n}, r, excluding);
            const std::set<ElementSet> distinct(subsets.begin(), subsets.end());
            EXPECT_EQ(subsets.size(), binomial(n - excluding.size(), r));
            EXPECT_EQ(distinct.size(), subsets.size());
            for (const auto& s : subsets) {
                EXPECT_EQ(s.size(), r);
                EXPECT_TRUE(s.is_disjoint(excluding));
            }
        }
    }
}

TEST(Representation, SmallExampleRepresents) {
    const auto family = sets(5, 2, {{a, b}, {b, e}, {b, d}, {a, c}});
    const auto sub = sets(5, 2, {{b, e}, {b, d}, {a, c}});
    EXPECT_TRUE(verify_representation(family, sub, 4, RepMode::kUnweighted).represents);
}

TEST(Representation, SmallExampleMissingSetFails) {
    const auto family = sets(5, 2, {{a, b}, {b, e}, {b, d}, {a, c}});
    const auto sub = sets(5, 2, {{b, e}, {b, d}});
    const auto check = verify_representation(family, sub, 4, RepMode::kUnweighted);
    ASSERT_FALSE(check.represents);
    ASSERT_TRUE(check.witness.has_value());
    const ElementSet x = check.witness->x;
    const ElementSet y = check.witness->y;
    EXPECT_TRUE(x == ElementSet(5, {a, c}) || x == ElementSet(5, {a, b}));
    EXPECT_TRUE(x.is_disjoint(y));
    EXPECT_LE(y.size(), 2u);
    for (const auto& s : sub.members()) {
        EXPECT_FALSE(s.is_disjoint(y));
    }
    // Y = {d, e} is also a blocking choice for X = {a, c}
    for (const auto& s : sub.members()) {
        EXPECT_FALSE(s.is_disjoint(ElementSet(5, {d, e})));
    }
}

TEST(Representation, Reflexive) {
    std::mt19937_64 rng(1);
    for (auto mode : {RepMode::kMax, RepMode::kMin, RepMode::kUnweighted}) {
        for (int i = 0; i < 20; ++i) {
            const auto f = random_family(rng, 7, 1 + i % 3, 6, mode != RepMode::kUnweighted);
            EXPECT_TRUE(verify_representation(f, f, 4, mode).represents);
        }
    }
}

TEST(Representation, FullRankNeedsOneMaximumSet) {
    WeightedFamily f(5, 3, true);
    f.add(ElementSet(5, {0, 1, 2}), 2.0);
    f.add(ElementSet(5, {1, 2, 3}), 5.0);
    f.add(ElementSet(5, {2, 3, 4}), 1.0);
    WeightedFamily best(5, 3, true);
    best.add(ElementSet(5, {1, 2, 3}), 5.0);
    EXPECT_TRUE(verify_representation(f, best, 3, RepMode::kMax).represents);
    WeightedFamily other(5, 3, true);
    other.add(ElementSet(5, {0, 1, 2}), 2.0);
    EXPECT_FALSE(verify_representation(f, other, 3, RepMode::kMax).represents);
}

TEST(Representation, AgreesWithDefinitionOracle) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 150; ++i) {
        const std::size_t n = 4 + rng() % 5;
        const std::size_t k = 1 + rng() % 4;
        const std::size_t p = rng() % (k + 1);
        const RepMode mode = static_cast<RepMode>(rng() % 3);
        const auto f = random_family(rng, n, p, 1 + rng() % 8, mode != RepMode::kUnweighted);
        WeightedFamily sub(n, p, f.weighted());
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (rng() % 2) {
                f.weighted() ? sub.add(f.member(j), f.weight(j)) : sub.add(f.member(j));
            }
        }
        EXPECT_EQ(verify_representation(f, sub, k, mode).represents, oracle::represents(f, sub, k, mode));
    }
}

TEST(Representation, Transitive) {
    std::mt19937_64 rng(3);
    int chains = 0;
    for (int i = 0; i < 400 && chains < 40; ++i) {
        const RepMode mode = static_cast<RepMode>(rng() % 3);
        const auto r = random_family(rng, 6, 2, 8, mode != RepMode::kUnweighted);
        auto pick = [&](const WeightedFamily& from) {
            WeightedFamily out(6, 2, from.weighted());
            for (std::size_t j = 0; j < from.size(); ++j) {
                if (rng() % 3 != 0) {
                    from.weighted() ? out.add(from.member(j), from.weight(j)) : out.add(from.member(j));
                }
            }
            return out;
        };
        const auto t = pick(r);
        const auto s = pick(t);
        if (verify_representation(r, t, 4, mode).represents && verify_representation(t, s, 4, mode).represents) {
            ++chains;
            EXPECT_TRUE(verify_representation(r, s, 4, mode).represents);
        }
    }
    EXPECT_GT(chains, 5);
}

TEST(Representation, RejectsNonSubfamilyAndLargeP) {
    const auto family = sets(5, 2, {{a, b}});
    const auto other = sets(5, 2, {{c, d}});
    EXPECT_THROW(verify_representation(family, other, 4, RepMode::kUnweighted), InputError);
    EXPECT_THROW(verify_representation(family, family, 1, RepMode::kUnweighted), InputError);
}

TEST(Family, DeduplicateKeepsBestWeight) {
    WeightedFamily f(4, 1, true);
    f.add(ElementSet(4, {0}), 1.0);
    f.add(ElementSet(4, {1}), 2.0);
    f.add(ElementSet(4, {0}), 3.0);
    const auto max = deduplicate(f, RepMode::kMax);
    ASSERT_EQ(max.size(), 2u);
    ASSERT_EQ(max.member(0), ElementSet(4, {0}));
    EXPECT_EQ(max.weight(0), 3.0);
    EXPECT_EQ(max.weight(1), 2.0);
    const auto min = deduplicate(f, RepMode::kMin);
    EXPECT_EQ(min.weight(0), 1.0);
}

TEST(FamilyIo, HeaderFieldsMap) {
    std::istringstream in("5 3 4 2\n0 1\n1 4\n2 3\n");
    const FamilyFile f = read_family(in);
    EXPECT_EQ(f.universe.n, 5u);
    EXPECT_EQ(f.k, 4u);
    EXPECT_EQ(f.family.size(), 3u);
    EXPECT_EQ(f.family.set_size(), 2u);
}

TEST(FamilyIo, DuplicateElementNamesLine) {
    std::istringstream in("# comment\n5 2 4 3\n0 1 2\n0 0 1\n");
    try {
        read_family(in);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(FamilyIo, RejectsMalformedInput) {
    for (const char* text : {"5 1 4 2\n0 9\n", "5 1 4 2\n0 1 2\n", "5 2 4 2\n0 1\n", "5 1 4\n0 1\n",
                             "5 2 4 1\n0 w 1\n1\n", "5 1 4 2\n0 x\n"}) {
        std::istringstream in(text);
        EXPECT_THROW(read_family(in), ParseError) << text;
    }
}

TEST(FamilyIo, RoundTripSmallFamily) {
    const FamilyFile f{Universe{5}, 4, sets(5, 2, {{a, b}, {b, e}, {b, d}, {a, c}})};
    std::stringstream io;
    write_family(io, f);
    const FamilyFile back = read_family(io);
    EXPECT_EQ(canonicalize(back.family), canonicalize(f.family));
    EXPECT_EQ(back.k, 4u);
}

TEST(FamilyIo, RoundTripWeightedAndEmptySet) {
    WeightedFamily w(6, 0, true);
    w.add(ElementSet(6), 0.1);
    FamilyFile f{Universe{6}, 2, w};
    std::stringstream io;
    write_family(io, f);
    EXPECT_EQ(read_family(io), f);
}

TEST(FamilyIo, SetSystemAcceptsMixedSizes) {
    std::istringstream in("5 4 4 *\n0 1\n1 2\n3\n4\n");
    const SetSystemFile s = read_set_system(in);
    ASSERT_EQ(s.sets.size(), 4u);
    EXPECT_EQ(s.sets[2], ElementSet(5, {3}));
    EXPECT_EQ(s.k, 4u);
}

TEST(GraphIo, ParsesAndRejects) {
    std::istringstream ok("p 3 2\n0 1 2.5\n1 2 1\n");
    const GraphFile g = read_graph(ok);
    EXPECT_TRUE(g.weighted);
    EXPECT_EQ(g.edges.size(), 2u);
    for (const char* text : {"p 3 1\n0 5\n", "p 3 2\n0 1 1\n1 2\n", "3 1\n0 1\n", "p 3 1\n0 1 nan\n"}) {
        std::istringstream in(text);
        EXPECT_THROW(read_graph(in), ParseError) << text;
    }
}

TEST(Digraph, DropsLoopsAndDuplicates) {
    const Digraph g(3, {{0, 1}, {0, 1}, {1, 1}, {1, 2}});
    EXPECT_EQ(g.arc_count(), 2u);
    EXPECT_EQ(g.reachable_from(0), ElementSet::full(3));
    EXPECT_EQ(g.reachable_from(2), ElementSet(3, {2}));
    const Digraph u = Digraph::undirected(3, {{0, 1}});
    EXPECT_TRUE(u.has_arc(1, 0));
}

TEST(WeightedGraph, KeepsLightestParallelEdge) {
    WeightedGraph g(3, false);
    g.add_edge(0, 1, 4.0);
    g.add_edge(1, 0, 2.0);
    ASSERT_EQ(g.out(0).size(), 1u);
    EXPECT_EQ(g.out(0)[0].weight, 2.0);
    EXPECT_THROW(g.add_edge(0, 2, std::numeric_limits<double>::infinity()), InputError);
}
