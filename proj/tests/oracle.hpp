#pragma once

// Brute-force reference implementations used to check the step-map kernel.
// None of these touch the segment representation: they work from raw cell
// lists and explicit point samples only.

#include "adlab/definable_set.hpp"
#include "adlab/ordinal.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace oracle {

using adlab::Cell;
using adlab::Ordinal;
using adlab::Term;

using Membership = std::function<bool(const Ordinal&)>;

inline bool raw_contains(const std::vector<Cell>& cells, const Ordinal& x) {
    return std::any_of(cells.begin(), cells.end(), [&](const Cell& c) { return c.contains(x); });
}

inline Membership raw_set(std::vector<Cell> cells) {
    return [cells = std::move(cells)](const Ordinal& x) { return raw_contains(cells, x); };
}

/// Every ordinal <= top whose CNF coefficients are at most max_coef.
inline std::vector<Ordinal> grid(const Ordinal& top, uint64_t max_coef = 3) {
    const uint32_t n = top.leading_exponent() + 1;
    std::vector<uint64_t> digits(n, 0);
    std::vector<Ordinal> out;
    for (;;) {
        std::vector<Term> terms;
        for (uint32_t i = 0; i < n; ++i) {
            const uint32_t e = n - 1 - i;
            if (digits[e]) terms.push_back({e, digits[e]});
        }
        Ordinal x(std::move(terms));
        if (x <= top) out.push_back(x);
        uint32_t k = 0;
        while (k < n && digits[k] == max_coef) digits[k++] = 0;
        if (k == n) break;
        ++digits[k];
    }
    if (std::find(out.begin(), out.end(), top) == out.end()) out.push_back(top);
    std::sort(out.begin(), out.end());
    return out;
}

/// Grid points plus the library's separating points for the family.
inline std::vector<Ordinal> probe_points(const Ordinal& top,
                                         const std::vector<adlab::DefinableSet>& family) {
    auto pts = grid(top);
    auto extra = adlab::canonical_test_points(top, family);
    pts.insert(pts.end(), extra.begin(), extra.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// x is a limit point of A iff A contains points of some fixed degree d < deg x
/// arbitrarily close below x. Sampled at x' + w^(e-1)*N (+ w^d) with N far
/// beyond every coefficient a finite description can mention.
inline bool limit_point(const Membership& in, const Ordinal& x, uint64_t far = 1000) {
    if (!x.is_limit()) return false;
    const uint32_t e = x.degree();
    const Ordinal base = x.drop_last_unit();
    for (uint32_t d = 0; d < e; ++d) {
        bool all = true;
        for (uint64_t n : {far, far + 1, far * 3 + 7}) {
            Ordinal y = base + Ordinal::omega_pow(e - 1, n);
            if (d < e - 1) y = y + Ordinal::omega_pow(d);
            if (!in(y)) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

using Valuation = std::function<int64_t(const Ordinal&)>;

/// A map on a subspace is locally constant at x iff every degree class that
/// accumulates at x inside the subspace carries the value at x. Sampled the
/// same way as limit_point.
inline bool locally_constant(const Valuation& v, const Membership& subspace, const Ordinal& x,
                             uint64_t far = 1000) {
    if (!x.is_limit()) return true;
    const uint32_t e = x.degree();
    const Ordinal base = x.drop_last_unit();
    const int64_t here = v(x);
    for (uint32_t d = 0; d < e; ++d) {
        for (uint64_t n : {far, far + 1, far * 3 + 7}) {
            Ordinal y = base + Ordinal::omega_pow(e - 1, n);
            if (d < e - 1) y = y + Ordinal::omega_pow(d);
            if (subspace(y) && v(y) != here) return false;
        }
    }
    return true;
}

} // namespace oracle
