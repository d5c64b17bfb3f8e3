#include "adlab/errors.hpp"
#include "adlab/lattice.hpp"

#include <gtest/gtest.h>

#include <boost/integer/common_factor.hpp>

#include <functional>
#include <random>

using namespace adlab::lattice;

namespace {

Matrix M(std::vector<std::vector<int64_t>> rows) { return from_int64(rows); }

// Laplace expansion; inputs here are at most 6x6.
Int det(const Matrix& a) {
    const size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    Int out = 0;
    for (size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        Matrix minor;
        for (size_t i = 1; i < n; ++i) {
            Vector r;
            for (size_t k = 0; k < n; ++k)
                if (k != j) r.push_back(a[i][k]);
            minor.push_back(r);
        }
        const Int term = a[0][j] * det(minor);
        out += (j % 2 == 0) ? term : Int(-term);
    }
    return out;
}

std::vector<std::vector<size_t>> subsets(size_t n, size_t k) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (size_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// gcd of all k x k minors; d_1 * ... * d_k equals it.
Int minor_gcd(const Matrix& a, size_t cols, size_t k) {
    Int g = 0;
    for (const auto& rs : subsets(a.size(), k))
        for (const auto& cs : subsets(cols, k)) {
            Matrix sub;
            for (size_t r : rs) {
                Vector row;
                for (size_t c : cs) row.push_back(a[r][c]);
                sub.push_back(row);
            }
            g = boost::integer::gcd(g, abs(det(sub)));
        }
    return g;
}

Matrix random_matrix(std::mt19937_64& rng, size_t rows, size_t cols, int64_t bound) {
    std::uniform_int_distribution<int64_t> d(-bound, bound);
    Matrix m(rows, Vector(cols));
    for (auto& r : m)
        for (auto& x : r) x = d(rng);
    // Repeat a combination of rows now and then to force rank deficiency.
    if (rows >= 3 && rng() % 3 == 0)
        for (size_t j = 0; j < cols; ++j) m[rows - 1][j] = 2 * m[0][j] - m[1][j];
    return m;
}

Matrix multiply(const Matrix& u, const Matrix& a, size_t cols) {
    Matrix out;
    for (const auto& row : u) out.push_back(combine(row, a, cols));
    return out;
}

} // namespace

TEST(Lattice, HermiteOfSmallExample) {
    const auto a = M({{1, 1, 0}, {0, 1, 1}});
    const auto hf = hermite(a, 3);
    EXPECT_EQ(hf.rank, 2u);
    EXPECT_EQ(hf.h, M({{1, 0, -1}, {0, 1, 1}}));
    EXPECT_EQ(smith_divisors(a, 3), (Vector{1, 1}));
}

TEST(Lattice, SmithOfDiagonalNeedsFixUp) {
    EXPECT_EQ(smith_divisors(M({{2, 0}, {0, 3}}), 2), (Vector{1, 6}));
    EXPECT_EQ(smith_divisors(M({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}), 3), (Vector{2, 6, 12}));
    EXPECT_TRUE(smith_divisors(M({{0, 0}}), 2).empty());
}

TEST(Lattice, SolveAndKernel) {
    const auto a = M({{2, 4}, {1, 2}, {0, 3}});
    const auto hf = hermite(a, 2);
    auto c = solve(hf, Vector{1, 5});
    ASSERT_TRUE(c);
    EXPECT_EQ(combine(*c, a, 2), (Vector{1, 5}));
    EXPECT_FALSE(solve(hermite(M({{2, 0}}), 2), Vector{1, 0}));
    const auto k = left_kernel(hf);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(combine(k[0], a, 2), (Vector{0, 0}));
}

TEST(LatticeProperty, HermiteShapeAndTransform) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        const size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
        const auto a = random_matrix(rng, rows, cols, 6);
        const auto hf = hermite(a, cols);
        EXPECT_EQ(multiply(hf.u, a, cols), hf.h);
        EXPECT_EQ(abs(det(hf.u)), 1);
        for (size_t k = 0; k < hf.rank; ++k) {
            const size_t p = hf.pivots[k];
            if (k > 0) EXPECT_GT(p, hf.pivots[k - 1]);
            EXPECT_GT(hf.h[k][p], 0);
            for (size_t j = 0; j < p; ++j) EXPECT_EQ(hf.h[k][j], 0);
            for (size_t i = 0; i < k; ++i) {
                EXPECT_GE(hf.h[i][p], 0);
                EXPECT_LT(hf.h[i][p], hf.h[k][p]);
            }
        }
        for (size_t k = hf.rank; k < rows; ++k)
            for (const auto& x : hf.h[k]) EXPECT_EQ(x, 0);
        for (const auto& c : left_kernel(hf)) EXPECT_EQ(combine(c, a, cols), Vector(cols, 0));
    }
}

TEST(LatticeProperty, SmithMatchesMinorGcds) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 150; ++t) {
        const size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        const auto a = random_matrix(rng, rows, cols, 5);
        const auto d = smith_divisors(a, cols);
        Int prod = 1;
        for (size_t k = 0; k < d.size(); ++k) {
            if (k > 0) EXPECT_EQ(d[k] % d[k - 1], 0);
            prod *= d[k];
            EXPECT_EQ(prod, minor_gcd(a, cols, k + 1));
        }
        if (d.size() < std::min(rows, cols)) EXPECT_EQ(minor_gcd(a, cols, d.size() + 1), 0);
        EXPECT_EQ(d.size(), hermite(a, cols).rank);
    }
}

TEST(LatticeProperty, SolveFindsRowCombinations) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int64_t> coef(-4, 4);
    for (int t = 0; t < 200; ++t) {
        const size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
        const auto a = random_matrix(rng, rows, cols, 6);
        Vector c(rows);
        for (auto& x : c) x = coef(rng);
        const auto target = combine(c, a, cols);
        const auto hf = hermite(a, cols);
        auto got = solve(hf, target);
        ASSERT_TRUE(got);
        EXPECT_EQ(combine(*got, a, cols), target);
    }
}

TEST(Lattice, LargeEntriesDoNotOverflow) {
    const auto a = M({{INT64_MAX, INT64_MAX - 1}, {INT64_MAX - 2, INT64_MAX}});
    const auto hf = hermite(a, 2);
    EXPECT_EQ(hf.rank, 2u);
    EXPECT_EQ(multiply(hf.u, a, 2), hf.h);
    const auto d = smith_divisors(a, 2);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0] * d[1], abs(det(a)));
}

TEST(Lattice, CancellationThrows) {
    std::stop_source src;
    src.request_stop();
    EXPECT_THROW(hermite(M({{1, 2}, {3, 4}}), 2, src.get_token()), adlab::Cancelled);
    EXPECT_THROW(smith_divisors(M({{1, 2}, {3, 4}}), 2, src.get_token()), adlab::Cancelled);
}
