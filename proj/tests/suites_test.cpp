#include "adlab/errors.hpp"
#include "adlab/suites.hpp"

#include <gtest/gtest.h>

using namespace adlab;

TEST(Suites, EverySuitePassesASmallRun) {
    for (const auto& name : suite_names()) {
        const auto r = run_suite(name, 7, 40);
        EXPECT_EQ(r.cases, 40u);
        EXPECT_LT(r.skipped, 40u) << name;
        for (const auto& f : r.failures) ADD_FAILURE() << name << " case " << f.index << ": " << f.witness;
    }
}

TEST(Suites, ReportsDoNotDependOnThreadCount) {
    for (const char* name : {"nu-laws", "chains", "mi-check"}) {
        const auto a = run_suite(name, 99, 60, 1);
        const auto b = run_suite(name, 99, 60, 8);
        EXPECT_EQ(a.skipped, b.skipped);
        ASSERT_EQ(a.failures.size(), b.failures.size());
        for (size_t i = 0; i < a.failures.size(); ++i) {
            EXPECT_EQ(a.failures[i].index, b.failures[i].index);
            EXPECT_EQ(a.failures[i].witness, b.failures[i].witness);
        }
    }
}

TEST(Suites, RejectsUnknownNameAndZeroCount) {
    EXPECT_THROW(run_suite("no-such-suite", 1, 10), PreconditionError);
    EXPECT_THROW(run_suite("nu-laws", 1, 0), PreconditionError);
    EXPECT_FALSE(is_suite("no-such-suite"));
}
