#include "adlab/errors.hpp"
#include "adlab/group_lab.hpp"
#include "adlab/random.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace adlab;
using lattice::Int;

namespace {

Ordinal P(const char* s) { return parse_ordinal(s); }

IdealMap chi(const Space& s, std::optional<const char*> lo, const char* hi, int64_t value = 1) {
    std::optional<Ordinal> l;
    if (lo) l = P(*lo);
    return IdealMap::indicator(s, DefinableSet::interval(s.top, l, P(hi)) & s.carrier, value);
}

IdealMap point(const Space& s, const char* x, int64_t value = 1) {
    return IdealMap::indicator(s, DefinableSet::of_points(s.top, {P(x)}), value);
}

IdealMap operator+(const IdealMap& a, const IdealMap& b) { return ideal_mul(a, b); }

DefinableSet successors_in(const Ordinal& top, const char* lo, const char* hi) {
    return DefinableSet::of_cells(top, {Cell{P(lo), P(hi), 0, 0u}});
}

const Space w_space = Space::interval(P("w"));

IdealMap reconstruct(const AtomDecomposition& d, const Space& s, size_t g) {
    IdealMap out(s);
    for (size_t a = 0; a < d.atoms.size(); ++a)
        out = out + IdealMap::indicator(s, d.atoms[a], d.table[g][a]);
    return out;
}

// Groups sample points by value vector; every atom must sit inside one group
// and distinct atoms must carry distinct nonzero vectors.
void check_atoms_against_enumeration(const std::vector<IdealMap>& gens,
                                     const AtomDecomposition& d) {
    const auto& s = gens[0].space();
    std::vector<DefinableSet> family{s.carrier};
    for (const auto& a : d.atoms) family.push_back(a);
    for (const auto& g : gens)
        for (const auto& l : level_sets(g)) family.push_back(l);
    std::map<std::vector<int64_t>, std::vector<size_t>> seen;
    for (const auto& x : canonical_test_points(s.top, family)) {
        if (!s.carrier.contains(x)) continue;
        std::vector<int64_t> vec;
        for (const auto& g : gens) vec.push_back(g.at(x));
        size_t hits = 0, which = 0;
        for (size_t a = 0; a < d.atoms.size(); ++a)
            if (d.atoms[a].contains(x)) {
                ++hits;
                which = a;
            }
        const bool zero = std::all_of(vec.begin(), vec.end(), [](int64_t v) { return v == 0; });
        if (zero) {
            EXPECT_EQ(hits, 0u) << x.to_string();
            continue;
        }
        ASSERT_EQ(hits, 1u) << x.to_string();
        for (size_t g = 0; g < gens.size(); ++g) EXPECT_EQ(d.table[g][which], vec[g]);
        seen[vec].push_back(which);
    }
    for (const auto& [vec, atoms] : seen)
        for (size_t a : atoms) EXPECT_EQ(a, atoms.front());
}

} // namespace

TEST(GroupLab, AtomsOfTwoIntervals) {
    const auto s = Space::interval(P("6"));
    const std::vector<IdealMap> gens{chi(s, std::nullopt, "3"), chi(s, "1", "5")};
    const auto d = atom_decompose(gens);
    ASSERT_EQ(d.atoms.size(), 3u);
    EXPECT_EQ(d.atoms[0], DefinableSet::interval(s.top, std::nullopt, P("1")));
    EXPECT_EQ(d.atoms[1], DefinableSet::interval(s.top, P("1"), P("3")));
    EXPECT_EQ(d.atoms[2], DefinableSet::interval(s.top, P("3"), P("5")));
    EXPECT_EQ(d.table, (std::vector<std::vector<int64_t>>{{1, 1, 0}, {0, 1, 1}}));
    check_atoms_against_enumeration(gens, d);

    const auto b = subgroup_basis(gens);
    EXPECT_EQ(b.rank, 2u);
    EXPECT_EQ(b.divisors, (std::vector<Int>{1, 1}));
    EXPECT_FALSE(subgroup_member(gens, chi(s, "1", "3")).member);
    const auto zero = subgroup_member(gens, IdealMap(s));
    EXPECT_TRUE(zero.member);
    EXPECT_EQ(zero.certificate, (std::vector<Int>{0, 0}));
    const auto sum = subgroup_member(gens, chi(s, std::nullopt, "3") + chi(s, "1", "5", -2));
    ASSERT_TRUE(sum.member);
    EXPECT_EQ(sum.certificate, (std::vector<Int>{1, -2}));
}

TEST(GroupLab, SingleGeneratorAtomsAreLevelSets) {
    const auto v = chi(w_space, std::nullopt, "1", 2) + chi(w_space, "1", "3");
    const auto d = atom_decompose({v});
    ASSERT_EQ(d.atoms.size(), 2u);
    EXPECT_EQ(d.atoms[0], level_set(v, 2));
    EXPECT_EQ(d.atoms[1], level_set(v, 1));
}

TEST(GroupLab, OverrideAtLimitIsSingletonAtom) {
    const std::vector<IdealMap> gens{chi(w_space, "0", "w") + point(w_space, "w"),
                                     chi(w_space, std::nullopt, "4")};
    const auto d = atom_decompose(gens);
    EXPECT_TRUE(std::find(d.atoms.begin(), d.atoms.end(),
                          DefinableSet::of_points(P("w"), {P("w")})) != d.atoms.end());
    check_atoms_against_enumeration(gens, d);
}

TEST(GroupLab, MembershipDetectsIndexTwo) {
    const auto s = Space::interval(P("4"));
    const std::vector<IdealMap> gens{chi(s, std::nullopt, "1", 2)};
    EXPECT_FALSE(subgroup_member(gens, chi(s, std::nullopt, "1")).member);
    EXPECT_TRUE(subgroup_member(gens, chi(s, std::nullopt, "1", -4)).member);
    EXPECT_EQ(subgroup_basis(gens).divisors, (std::vector<Int>{2}));
}

TEST(GroupLab, GlueAndUnglueOnSharpW) {
    const auto m = model_sharp(w_space);
    const auto at_w = point(w_space, "w");
    const auto t = tuple_on_stratum(m, 1, at_w);
    EXPECT_TRUE(ideal_equal(glue(m, t), at_w));

    const auto u = unglue(m, chi(w_space, "0", "w") + at_w);
    ASSERT_EQ(u.components.size(), 2u);
    const auto succ = successors_in(P("w"), "0", "w");
    EXPECT_TRUE(ideal_equal(u.components[0],
                            tuple_on_stratum(m, 0, IdealMap::indicator(w_space, succ)).components[0]));
    EXPECT_EQ(u.components[0].at(P("5")), 1);
    EXPECT_EQ(u.components[0].at(P("0")), 0);
    EXPECT_EQ(u.components[1].at(P("w")), 2);

    // Discontinuous on the whole space, yet continuous on the discrete stratum.
    const auto neg = IdealMap::indicator(w_space, succ, -1);
    EXPECT_FALSE(is_continuous(neg));
    const auto un = unglue(m, neg);
    EXPECT_EQ(un.components[0].at(P("7")), -1);
    EXPECT_EQ(un.components[1].at(P("w")), 0);
    EXPECT_TRUE(ideal_equal(glue(m, un), neg));
}

TEST(GroupLab, UnglueReportsStratumAndWitness) {
    const auto s = Space::interval(P("w^2"));
    const auto m = model_sharp(s);
    // On the sp model stratum 0 is the whole carrier.
    const auto sp = model_sp(s);
    const auto v = chi(s, "0", "w") + point(s, "w");
    try {
        unglue(sp, v);
        FAIL() << "expected UnglueError";
    } catch (const UnglueError& e) {
        EXPECT_EQ(e.stratum(), 0u);
        EXPECT_EQ(e.witness(), DefinableSet::of_points(s.top, {P("w")}));
    }
    EXPECT_NO_THROW(unglue(m, v));
}

TEST(GroupLab, KernelAtStageOne) {
    const auto m = model_sharp(w_space);
    const std::vector<IdealMap> gens{point(w_space, "5"), point(w_space, "w")};
    const auto k = kernel_of_restriction(m, gens, 1);
    ASSERT_EQ(k.rank, 1u);
    EXPECT_TRUE(ideal_equal(basis_element(k, w_space, 0), point(w_space, "5")));
    const auto r = exactness_report(m, gens, 1);
    EXPECT_EQ(r.total_rank, 2u);
    EXPECT_EQ(r.kernel_rank, 1u);
    EXPECT_EQ(r.image_rank, 1u);
    EXPECT_TRUE(r.ok());

    const auto r0 = exactness_report(m, gens, 0);
    EXPECT_EQ(r0.kernel_rank, 0u);
    EXPECT_EQ(r0.image_rank, 2u);
    EXPECT_TRUE(r0.ok());
}

TEST(GroupLab, SigmaRExamples) {
    const auto m = model_sharp(w_space);
    const std::vector<IdealMap> gens{chi(w_space, std::nullopt, "3"), chi(w_space, "0", "w")};
    const auto r = sigma_r_report(m, gens);
    EXPECT_EQ(r.image_rank, 1u);
    EXPECT_EQ(r.critical_points, 1u);
    EXPECT_EQ(r.achievable_rank, 1u);
    EXPECT_TRUE(r.ok());

    const auto sp = sigma_r_report(model_sp(w_space), gens);
    EXPECT_EQ(sp.quotient_rank, 0u);
    EXPECT_TRUE(sp.ok());

    EXPECT_THROW(sigma_r_report(m, {chi(w_space, "0", "w") + point(w_space, "w")}),
                 PreconditionError);
}

TEST(GroupLab, SigmaRGrowsWithInfiniteCriticalSet) {
    const auto s = Space::interval(P("w^2"));
    const auto m = model_sharp(s);
    std::vector<IdealMap> gens;
    size_t last = 0;
    for (const char* hi : {"w", "w*2", "w*3", "w*4"}) {
        gens.push_back(chi(s, std::nullopt, hi));
        const auto r = sigma_r_report(m, gens);
        EXPECT_FALSE(r.critical_points);
        EXPECT_GT(r.image_rank, last);
        last = r.image_rank;
        EXPECT_TRUE(r.torsion_free);
    }
}

TEST(GroupLab, OrderMismatch) {
    const auto m = model_sharp(w_space);
    const auto ex = order_mismatch_demo(m, 42, 50);
    EXPECT_TRUE(ex.incomparable);
    EXPECT_TRUE(ex.glued_not_above);
    EXPECT_TRUE(ex.glued_t1_rejected);
    EXPECT_EQ(ex.cases.size(), 50u);
    EXPECT_TRUE(ex.ok());

    const auto v = chi(w_space, "0", "w") + chi(w_space, "0", "3") + point(w_space, "w");
    EXPECT_TRUE(mi_check(m, v).accepted);
    auto y = domination_witness(v);
    ASSERT_TRUE(y);
    EXPECT_LE(*y, P("3"));

    EXPECT_THROW(order_mismatch_demo(model_sharp(Space::interval(P("w^2"))), 1), PreconditionError);
}

TEST(GroupLabProperty, BasisSpansTheSameGroup) {
    for (uint64_t k = 0; k < 60; ++k) {
        auto rng = case_engine(101, k);
        const auto s = random_space(rng, random_top(rng, 2));
        std::vector<IdealMap> gens;
        const auto n = uniform_int(rng, 1, 4);
        for (int64_t i = 0; i < n; ++i) gens.push_back(random_ideal(rng, s, 5, -3, 3));
        const auto d = atom_decompose(gens);
        check_atoms_against_enumeration(gens, d);
        for (size_t g = 0; g < gens.size(); ++g) EXPECT_TRUE(ideal_equal(reconstruct(d, s, g), gens[g]));

        const auto b = subgroup_basis(gens);
        std::vector<IdealMap> basis;
        for (size_t i = 0; i < b.rank; ++i) basis.push_back(basis_element(b, s, i));
        for (const auto& g : gens) {
            const auto r = subgroup_member(basis, g);
            EXPECT_TRUE(r.member || basis.empty());
        }
        for (const auto& e : basis) {
            const auto r = subgroup_member(gens, e);
            ASSERT_TRUE(r.member);
            IdealMap back(s);
            for (size_t g = 0; g < gens.size(); ++g)
                back = back + ideal_scale(gens[g], r.certificate[g].convert_to<int64_t>());
            EXPECT_TRUE(ideal_equal(back, e));
        }
        // Shuffled and recombined generators give the same rank.
        auto shuffled = gens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        if (shuffled.size() >= 2) shuffled[0] = shuffled[0] + ideal_scale(shuffled[1], 3);
        EXPECT_EQ(subgroup_basis(shuffled).rank, b.rank);
    }
}

TEST(GroupLabProperty, GlueUnglueRoundTripAndAdditivity) {
    const auto s = Space::interval(P("w^2"));
    const auto m = model_sharp(s);
    for (uint64_t k = 0; k < 30; ++k) {
        auto rng = case_engine(202, k);
        auto make = [&] {
            StratTuple t;
            const auto st = strata(m);
            for (size_t i = 0; i <= m.last(); ++i) {
                const auto sub = Space::with_carrier(s.top, m.stage(i));
                t.components.push_back(ideal_mask(random_continuous(rng, sub, 4, -3, 3), st[i]));
            }
            return t;
        };
        const auto a = make(), b = make();
        EXPECT_TRUE(tuple_equal(unglue(m, glue(m, a)), a));
        EXPECT_TRUE(ideal_equal(glue(m, tuple_add(a, b)), glue(m, a) + glue(m, b)));
    }
}

TEST(GroupLabProperty, ExactnessOnSharpModels) {
    for (const char* top : {"w", "w^2"}) {
        const auto s = Space::interval(P(top));
        const auto m = model_sharp(s);
        for (uint64_t k = 0; k < 20; ++k) {
            auto rng = case_engine(303, k);
            std::vector<IdealMap> gens;
            const auto n = uniform_int(rng, 1, 5);
            for (int64_t i = 0; i < n; ++i) gens.push_back(random_integral(rng, s, 4, 3));
            for (size_t st = 0; st <= m.last() + 1; ++st) {
                const auto r = exactness_report(m, gens, st);
                EXPECT_TRUE(r.ok()) << top << " stage " << st;
                // Each kernel basis element vanishes on the stage.
                const auto kb = kernel_of_restriction(m, gens, st);
                for (size_t i = 0; i < kb.rank; ++i)
                    EXPECT_TRUE(set_subset(m.stage(st), zero_set(basis_element(kb, s, i))));
            }
        }
    }
}

TEST(GroupLab, CancelledReduction) {
    std::stop_source src;
    src.request_stop();
    const auto s = Space::interval(P("6"));
    EXPECT_THROW(subgroup_basis({chi(s, std::nullopt, "3")}, src.get_token()), Cancelled);
}
