#include "adlab/errors.hpp"
#include "adlab/ordinal.hpp"
#include "adlab/random.hpp"

#include <gtest/gtest.h>

using namespace adlab;

namespace {

Ordinal P(const char* s) { return parse_ordinal(s); }

} // namespace

TEST(Ordinal, ParsesCantorNormalForm) {
    const Ordinal x = P("w^2*3+w*2+5");
    const std::vector<Term> expected{{2, 3}, {1, 2}, {0, 5}};
    EXPECT_EQ(x.terms(), expected);
    EXPECT_TRUE(P("0").is_zero());
    EXPECT_EQ(P("w").terms(), (std::vector<Term>{{1, 1}}));
    EXPECT_EQ(P("w^3").terms(), (std::vector<Term>{{3, 1}}));
    EXPECT_EQ(P(" w*4 + 1 ").terms(), (std::vector<Term>{{1, 4}, {0, 1}}));
}

TEST(Ordinal, RejectsMalformedLiterals) {
    EXPECT_THROW(P("w^1*1+w^2*1"), ParseError);
    EXPECT_THROW(P(""), ParseError);
    EXPECT_THROW(P("w*0"), ParseError);
    EXPECT_THROW(P("3+w"), ParseError);
    EXPECT_THROW(P("w^"), ParseError);
    EXPECT_THROW(P("w+0"), ParseError);
    EXPECT_THROW(P("x"), ParseError);
    try {
        P("w^1*1+w^2*1");
    } catch (const ParseError& e) {
        EXPECT_EQ(e.token(), "w^2*1");
    }
}

TEST(Ordinal, PrintsCanonically) {
    for (const char* s : {"0", "7", "w", "w*2", "w^2", "w^3*4+w+1", "w^2*3+w*2+5"})
        EXPECT_EQ(P(s).to_string(), s);
    EXPECT_EQ(P("w^1*1").to_string(), "w");
    EXPECT_EQ(P("w^0*3").to_string(), "3");
}

TEST(Ordinal, RoundTripsRandomValues) {
    for (uint64_t i = 0; i < 300; ++i) {
        auto rng = case_engine(7, i);
        const Ordinal x = random_ordinal(rng, P("w^4*9"), 50);
        EXPECT_EQ(P(x.to_string().c_str()), x);
    }
}

TEST(Ordinal, AdditionAbsorbsLowerTerms) {
    EXPECT_EQ(P("w+3") + P("w"), P("w*2"));
    EXPECT_EQ(P("3") + P("w"), P("w"));
    EXPECT_EQ(P("w") + P("3"), P("w+3"));
    EXPECT_EQ(P("w^2+w*5+1") + P("w^2*2+4"), P("w^2*3+4"));
    EXPECT_EQ(P("w^2") + P("0"), P("w^2"));
    EXPECT_EQ(ord_succ(P("w")), P("w+1"));
}

TEST(Ordinal, AdditionIsAssociative) {
    for (uint64_t i = 0; i < 300; ++i) {
        auto rng = case_engine(11, i);
        const Ordinal top = P("w^3*9");
        const Ordinal a = random_ordinal(rng, top), b = random_ordinal(rng, top),
                      c = random_ordinal(rng, top);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_LE(a, b + a);
        EXPECT_LT(a, a + b + Ordinal(1));
    }
}

TEST(Ordinal, DegreeAndLimits) {
    EXPECT_EQ(ord_deg(P("w^2+5")), 0u);
    EXPECT_EQ(ord_deg(P("w^2*3")), 2u);
    EXPECT_EQ(ord_deg(P("0")), 0u);
    EXPECT_TRUE(ord_is_limit(P("w^2")));
    EXPECT_FALSE(ord_is_limit(P("7")));
    EXPECT_FALSE(ord_is_limit(P("0")));
}

TEST(Ordinal, ComparisonIsLexicographicOnTerms) {
    EXPECT_LT(P("w*5+100"), P("w*6"));
    EXPECT_LT(P("w^2"), P("w^2+1"));
    EXPECT_LT(P("1000"), P("w"));
    EXPECT_EQ(ord_cmp(P("w"), P("w")), std::strong_ordering::equal);
}

TEST(Ordinal, NextWithDegree) {
    EXPECT_EQ(P("w+3").next_with_degree(0), P("w+4"));
    EXPECT_EQ(P("w+3").next_with_degree(1), P("w*2"));
    EXPECT_EQ(P("w+3").next_with_degree(2), P("w^2"));
    EXPECT_EQ(P("w*4").next_with_degree(2), P("w^2"));
    EXPECT_EQ(P("w").next_with_degree(1), P("w*2"));
    EXPECT_EQ(P("w^2*2").next_with_degree(2), P("w^2*3"));
    EXPECT_EQ(P("w^2").next_with_degree(1), P("w^2+w"));
    EXPECT_EQ(P("0").next_with_degree(0), P("1"));
    // Brute force over small ordinals: nothing of degree d lies strictly between.
    for (uint64_t i = 0; i < 200; ++i) {
        auto rng = case_engine(13, i);
        const Ordinal x = random_ordinal(rng, P("w^3"), 4);
        for (uint32_t d = 0; d <= 3; ++d) {
            const Ordinal y = x.next_with_degree(d);
            EXPECT_LT(x, y);
            EXPECT_EQ(y.degree(), d);
        }
    }
}

TEST(Ordinal, DropLastUnit) {
    EXPECT_EQ(P("w*2").drop_last_unit(), P("w"));
    EXPECT_EQ(P("w^2+w").drop_last_unit(), P("w^2"));
    EXPECT_EQ(P("5").drop_last_unit(), P("4"));
    EXPECT_EQ(P("w").drop_last_unit(), P("0"));
}
