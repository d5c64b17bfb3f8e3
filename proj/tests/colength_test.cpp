#include "adlab/colength.hpp"
#include "adlab/errors.hpp"
#include "adlab/random.hpp"

#include <gtest/gtest.h>

using namespace adlab;

namespace {

Ordinal P(const char* s) { return parse_ordinal(s); }

IdealMap chi(const Space& s, std::optional<const char*> lo, const char* hi, int64_t value = 1) {
    std::optional<Ordinal> l;
    if (lo) l = P(*lo);
    return IdealMap::indicator(s, DefinableSet::interval(s.top, l, P(hi)) & s.carrier, value);
}

IdealMap operator+(const IdealMap& a, const IdealMap& b) { return ideal_mul(a, b); }

const Space w_space = Space::interval(P("w"));
const ColengthModel at_w = ColengthModel::make(w_space, DefinableSet::of_points(P("w"), {P("w")}));

// Reference: scan delta's points directly when finite, else fall back on
// sampling the intersection's least point.
bool hits(const IdealMap& v, const DefinableSet& delta) {
    if (auto pts = delta.points())
        return std::any_of(pts->begin(), pts->end(), [&](const Ordinal& x) { return v.at(x) >= 1; });
    return !(v_set(v) & delta).is_empty();
}

} // namespace

TEST(Colength, Examples) {
    EXPECT_EQ(colength(at_w, chi(w_space, "1", "3")), ExtNat::zero());
    EXPECT_EQ(colength(at_w, chi(w_space, "0", "w")), ExtNat::inf());
    EXPECT_EQ(colength(at_w, IdealMap(w_space)), ExtNat::zero());
    EXPECT_THROW(colength(at_w, chi(w_space, "0", "w", -1)), NotIntegral);
    EXPECT_EQ(ExtNat::inf().to_string(), "inf");
    EXPECT_EQ(ExtNat::zero() + ExtNat::zero(), ExtNat::zero());
    EXPECT_EQ(ExtNat::zero() + ExtNat::inf(), ExtNat::inf());
    EXPECT_LT(ExtNat::zero(), ExtNat::inf());
}

TEST(Colength, Stages) {
    const auto m = model_sharp(w_space);
    const auto v = chi(w_space, "0", "w");
    EXPECT_EQ(colength_stage(at_w, m, 0, v), colength(at_w, v));
    EXPECT_EQ(colength_stage(at_w, m, 1, v), ExtNat::inf());
    EXPECT_EQ(colength_stage(at_w, m, 2, v), ExtNat::zero());
    EXPECT_THROW(colength_stage(at_w, m, 3, v), PreconditionError);
}

TEST(Colength, Identities) {
    const auto m = model_sharp(w_space);
    EXPECT_TRUE(check_sum(at_w, chi(w_space, "0", "w"), chi(w_space, "1", "3")));
    EXPECT_TRUE(check_potpan(at_w, chi(w_space, std::nullopt, "3"), chi(w_space, std::nullopt, "3", 2), 2));
    EXPECT_TRUE(check_length_identity(at_w, m, 1, chi(w_space, "0", "w")));
    EXPECT_THROW(check_potpan(at_w, chi(w_space, std::nullopt, "3"), chi(w_space, std::nullopt, "3", 3), 2),
                 PreconditionError);
    EXPECT_THROW(check_viomega(at_w, m, 1, chi(w_space, "0", "w")), PreconditionError);
    EXPECT_TRUE(check_viomega(at_w, m, 1, IdealMap::indicator(w_space, m.stage(1), 3)));
}

TEST(Colength, DeltaMustLieInCarrier) {
    const auto s = Space::with_carrier(P("w"), DefinableSet::of_points(P("w"), {P("1"), P("2")}));
    EXPECT_THROW(ColengthModel::make(s, DefinableSet::of_points(P("w"), {P("3")})), ValidationError);
}

TEST(ColengthProperty, RandomInstances) {
    for (uint64_t k = 0; k < 200; ++k) {
        auto rng = case_engine(404, k);
        const auto s = Space::interval(random_top(rng, 2));
        const auto m = model_sharp(s);
        const auto cm = ColengthModel::make(s, set_closure(DefinableSet::of_cells(s.top, random_cells(rng, s.top, 3))));
        const auto v = random_integral(rng, s, 5, 3);
        const auto u = random_integral(rng, s, 5, 3);
        const size_t i = static_cast<size_t>(uniform_int(rng, 0, static_cast<int64_t>(m.last()) + 1));

        EXPECT_EQ(colength(cm, v).is_inf(), hits(v, cm.delta));
        EXPECT_TRUE(check_sum(cm, v, u));
        EXPECT_TRUE(check_potpan(cm, v, ideal_mul(v, ideal_mask(v, at_least(u, 1))), 2));
        EXPECT_TRUE(check_length_identity(cm, m, i, v));
        EXPECT_EQ(colength(cm, v), colength(cm, radical(v)));
        const auto inside = ideal_mask(v, m.stage(i));
        EXPECT_TRUE(check_viomega(cm, m, i, inside));
        // Monotone and antitone.
        const auto bigger = ideal_mul(v, u);
        if (colength(cm, v).is_inf()) EXPECT_TRUE(colength(cm, bigger).is_inf());
        for (size_t j = 0; j + 1 <= m.last() + 1; ++j)
            EXPECT_LE(colength_stage(cm, m, j + 1, v), colength_stage(cm, m, j, v));
    }
}
