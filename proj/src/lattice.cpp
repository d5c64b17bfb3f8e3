#include "adlab/lattice.hpp"

#include "adlab/errors.hpp"

#include <algorithm>
#include <utility>

namespace adlab::lattice {

namespace {

void check(const std::stop_token& stop) {
    if (stop.stop_requested()) throw Cancelled();
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// row_i -= q * row_j in both matrices.
void sub_row(Matrix& m, size_t i, size_t j, const Int& q) {
    if (q == 0) return;
    for (size_t k = 0; k < m[i].size(); ++k) m[i][k] -= q * m[j][k];
}

void negate_row(Matrix& m, size_t i) {
    for (auto& x : m[i]) x = -x;
}

} // namespace

Hermite hermite(const Matrix& a, size_t cols, std::stop_token stop) {
    Hermite r;
    r.h = a;
    r.cols = cols;
    const size_t n = a.size();
    r.u.assign(n, Vector(n, 0));
    for (size_t i = 0; i < n; ++i) r.u[i][i] = 1;

    size_t row = 0;
    for (size_t col = 0; col < cols && row < n; ++col) {
        check(stop);
        // Euclid on column `col` over rows row..n-1 until one nonzero entry remains.
        for (;;) {
            size_t best = n;
            for (size_t i = row; i < n; ++i)
                if (r.h[i][col] != 0 && (best == n || abs(r.h[i][col]) < abs(r.h[best][col])))
                    best = i;
            if (best == n) break;
            std::swap(r.h[row], r.h[best]);
            std::swap(r.u[row], r.u[best]);
            bool done = true;
            for (size_t i = row + 1; i < n; ++i) {
                if (r.h[i][col] == 0) continue;
                const Int q = r.h[i][col] / r.h[row][col];
                sub_row(r.h, i, row, q);
                sub_row(r.u, i, row, q);
                if (r.h[i][col] != 0) done = false;
            }
            if (done) break;
            check(stop);
        }
        if (r.h[row][col] == 0) continue;
        if (r.h[row][col] < 0) {
            negate_row(r.h, row);
            negate_row(r.u, row);
        }
        for (size_t i = 0; i < row; ++i) {
            const Int q = floor_div(r.h[i][col], r.h[row][col]);
            sub_row(r.h, i, row, q);
            sub_row(r.u, i, row, q);
        }
        r.pivots.push_back(col);
        ++row;
    }
    r.rank = row;
    return r;
}

std::vector<Int> smith_divisors(const Matrix& a, size_t cols, std::stop_token stop) {
    Matrix m = a;
    const size_t rows = m.size();
    std::vector<Int> out;
    for (size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            check(stop);
            // Smallest nonzero entry of the trailing block goes to (t, t).
            size_t bi = rows, bj = cols;
            for (size_t i = t; i < rows; ++i)
                for (size_t j = t; j < cols; ++j)
                    if (m[i][j] != 0 && (bi == rows || abs(m[i][j]) < abs(m[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == rows) {
                std::sort(out.begin(), out.end());
                return out;
            }
            std::swap(m[t], m[bi]);
            for (auto& r : m) std::swap(r[t], r[bj]);
            const Int p = m[t][t];
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                const Int q = m[i][t] / p;
                sub_row(m, i, t, q);
                if (m[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                const Int q = m[t][j] / p;
                if (q != 0)
                    for (size_t i = 0; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // The pivot must divide the rest of the block; fold in an offending row otherwise.
            size_t bad = rows;
            for (size_t i = t + 1; i < rows && bad == rows; ++i)
                for (size_t j = t + 1; j < cols; ++j)
                    if (m[i][j] % p != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) {
                out.push_back(abs(p));
                break;
            }
            for (size_t j = t; j < cols; ++j) m[t][j] += m[bad][j];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Vector> solve(const Hermite& hf, const Vector& target) {
    Vector rest = target;
    Vector y(hf.rank, 0);
    for (size_t k = 0; k < hf.rank; ++k) {
        const size_t col = hf.pivots[k];
        // Columns before this pivot must already be cleared.
        const size_t prev = k == 0 ? 0 : hf.pivots[k - 1] + 1;
        for (size_t j = prev; j < col; ++j)
            if (rest[j] != 0) return std::nullopt;
        if (rest[col] % hf.h[k][col] != 0) return std::nullopt;
        y[k] = rest[col] / hf.h[k][col];
        for (size_t j = col; j < hf.cols; ++j) rest[j] -= y[k] * hf.h[k][j];
    }
    for (const auto& x : rest)
        if (x != 0) return std::nullopt;
    Vector c(hf.u.size(), 0);
    for (size_t k = 0; k < hf.rank; ++k)
        for (size_t i = 0; i < c.size(); ++i) c[i] += y[k] * hf.u[k][i];
    return c;
}

Matrix left_kernel(const Hermite& hf) {
    return Matrix(hf.u.begin() + static_cast<std::ptrdiff_t>(hf.rank), hf.u.end());
}

Vector combine(const Vector& c, const Matrix& a, size_t cols) {
    Vector out(cols, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < cols; ++j) out[j] += c[i] * a[i][j];
    }
    return out;
}

Matrix from_int64(const std::vector<std::vector<int64_t>>& rows) {
    Matrix m;
    m.reserve(rows.size());
    for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
    return m;
}

std::string to_string(const Int& x) { return x.str(); }

} // namespace adlab::lattice
