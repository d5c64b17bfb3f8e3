#include "adlab/definable_set.hpp"

#include "adlab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace adlab {

using detail::StepMap;

bool Cell::contains(const Ordinal& x) const {
    if (hi < x) return false;
    if (lo) {
        if (!(*lo < x)) return false;
    } else if (x.is_zero()) {
        return dmin == 0;
    }
    const uint32_t d = x.degree();
    return d >= dmin && (!dmax || d <= *dmax);
}

Cell Cell::point(const Ordinal& x) {
    if (x.is_zero()) return {std::nullopt, Ordinal{}, 0, 0u};
    return {x.drop_last_unit(), x, x.degree(), std::nullopt};
}

DefinableSet::DefinableSet(Ordinal top) : map_(std::move(top), 0) {}

DefinableSet::DefinableSet(StepMap<uint8_t> m) : map_(std::move(m)) { map_.canonicalize(0); }

DefinableSet DefinableSet::full(const Ordinal& top) {
    return DefinableSet(StepMap<uint8_t>(top, 1));
}

DefinableSet DefinableSet::of_cells(const Ordinal& top, const std::vector<Cell>& cells) {
    StepMap<uint8_t> m(top, 0);
    for (const auto& c : cells) {
        if (top < c.hi) throw PreconditionError("cell endpoint " + c.hi.to_string() +
                                                " exceeds top " + top.to_string());
        m.apply_cell(c.lo, c.hi, c.dmin, c.dmax.value_or(m.max_degree()),
                     [](uint8_t) -> uint8_t { return 1; });
    }
    return DefinableSet(std::move(m));
}

DefinableSet DefinableSet::of_points(const Ordinal& top, const std::vector<Ordinal>& points) {
    std::vector<Cell> cells;
    cells.reserve(points.size());
    for (const auto& p : points) cells.push_back(Cell::point(p));
    return of_cells(top, cells);
}

DefinableSet DefinableSet::interval(const Ordinal& top, std::optional<Ordinal> lo,
                                    const Ordinal& hi) {
    return of_cells(top, {Cell::interval(std::move(lo), hi)});
}

bool DefinableSet::contains(const Ordinal& x) const {
    if (top() < x) return false;
    return map_.value(x) != 0;
}

bool DefinableSet::is_empty() const {
    if (map_.at_zero()) return false;
    for (const auto& s : map_.segments())
        for (auto v : s.by_degree)
            if (v) return false;
    return true;
}

std::optional<Ordinal> DefinableSet::least_point() const {
    if (map_.at_zero()) return Ordinal{};
    std::optional<Ordinal> best;
    map_.for_each_segment([&](const Ordinal& lo, const auto& seg, const std::vector<bool>& r) {
        if (best) return;
        for (size_t d = 0; d < r.size(); ++d) {
            if (!r[d] || !seg.by_degree[d]) continue;
            Ordinal x = lo.next_with_degree(static_cast<uint32_t>(d));
            if (!best || x < *best) best = x;
        }
    });
    return best;
}

std::optional<std::vector<Ordinal>> DefinableSet::points(size_t limit) const {
    if (!derived(*this).is_empty()) return std::nullopt;
    std::vector<Ordinal> out;
    if (map_.at_zero()) out.emplace_back();
    bool overflow = false;
    map_.for_each_segment([&](const Ordinal& lo, const auto& seg, const std::vector<bool>& r) {
        for (size_t d = 0; d < r.size() && !overflow; ++d) {
            if (!r[d] || !seg.by_degree[d]) continue;
            for (Ordinal x = lo.next_with_degree(static_cast<uint32_t>(d)); x <= seg.hi;
                 x = x.next_with_degree(static_cast<uint32_t>(d))) {
                if (out.size() >= limit) {
                    overflow = true;
                    break;
                }
                out.push_back(x);
            }
        }
    });
    if (overflow) return std::nullopt;
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

std::pair<int, Ordinal> count_cell_points(const Cell& c, uint32_t max_degree) {
    int n = 0;
    Ordinal first;
    if (!c.lo && c.dmin == 0) n = 1;
    const Ordinal lo = c.lo.value_or(Ordinal{});
    const uint32_t dmax = std::min(c.dmax.value_or(max_degree), max_degree);
    auto next_after = [&](const Ordinal& from) -> std::optional<Ordinal> {
        std::optional<Ordinal> best;
        for (uint32_t d = c.dmin; d <= dmax; ++d) {
            Ordinal y = from.next_with_degree(d);
            if (y <= c.hi && (!best || y < *best)) best = y;
        }
        return best;
    };
    if (auto p = next_after(lo)) {
        if (n == 0) first = *p;
        ++n;
        if (n < 2 && next_after(*p)) ++n;
    }
    return {n, first};
}

} // namespace detail

std::vector<Cell> DefinableSet::cells() const {
    std::vector<Cell> out;
    for (auto& [c, v] : detail::step_cells<uint8_t>(map_, 0)) out.push_back(std::move(c));
    return out;
}

std::string DefinableSet::to_string() const {
    auto cs = cells();
    if (cs.empty()) return "{}";
    std::ostringstream os;
    bool first = true;
    for (const auto& c : cs) {
        if (!first) os << " u ";
        first = false;
        if (c.lo && c.dmin == c.hi.degree() && c.lo == c.hi.drop_last_unit() && !c.dmax) {
            os << "{" << c.hi << "}";
            continue;
        }
        if (!c.lo && c.hi.is_zero()) {
            os << "{0}";
            continue;
        }
        os << (c.lo ? "(" + c.lo->to_string() : std::string("[0")) << "," << c.hi << "]";
        if (c.dmin != 0 || c.dmax)
            os << "deg[" << c.dmin << "," << (c.dmax ? std::to_string(*c.dmax) : "inf") << "]";
    }
    return os.str();
}

namespace {

void require_same_top(const DefinableSet& a, const DefinableSet& b) {
    if (!(a.top() == b.top()))
        throw SpaceMismatch("definable sets over [0," + a.top().to_string() + "] and [0," +
                            b.top().to_string() + "]");
}

} // namespace

DefinableSet DefinableSet::operator|(const DefinableSet& o) const {
    require_same_top(*this, o);
    return DefinableSet(map_.combine(o.map_, [](uint8_t x, uint8_t y) -> uint8_t { return x | y; }));
}

DefinableSet DefinableSet::operator&(const DefinableSet& o) const {
    require_same_top(*this, o);
    return DefinableSet(map_.combine(o.map_, [](uint8_t x, uint8_t y) -> uint8_t { return x & y; }));
}

DefinableSet DefinableSet::operator-(const DefinableSet& o) const {
    require_same_top(*this, o);
    return DefinableSet(
        map_.combine(o.map_, [](uint8_t x, uint8_t y) -> uint8_t { return x && !y; }));
}

DefinableSet DefinableSet::operator~() const {
    return DefinableSet(map_.transform([](uint8_t x) -> uint8_t { return !x; }));
}

bool operator==(const DefinableSet& a, const DefinableSet& b) { return set_equal(a, b); }

Space Space::interval(const Ordinal& top) { return {top, DefinableSet::full(top)}; }

Space Space::with_carrier(const Ordinal& top, const DefinableSet& carrier) {
    if (!(carrier.top() == top))
        throw SpaceMismatch("carrier top " + carrier.top().to_string() + " differs from " +
                            top.to_string());
    if (carrier.is_empty()) throw ValidationError("empty-carrier", std::nullopt, "{}", "carrier is empty");
    auto missing = derived(carrier) - carrier;
    if (!missing.is_empty())
        throw ValidationError("carrier-not-closed", std::nullopt,
                              missing.least_point()->to_string(), "carrier is not closed");
    return {top, carrier};
}

bool same_space(const Space& a, const Space& b) {
    return a.top == b.top && set_equal(a.carrier, b.carrier);
}

DefinableSet set_union(const DefinableSet& a, const DefinableSet& b) { return a | b; }
DefinableSet set_intersect(const DefinableSet& a, const DefinableSet& b) { return a & b; }
DefinableSet set_difference(const DefinableSet& a, const DefinableSet& b) { return a - b; }
DefinableSet set_complement(const DefinableSet& a) { return ~a; }
DefinableSet set_complement_in(const DefinableSet& a, const DefinableSet& s) { return s - a; }
bool set_membership(const DefinableSet& a, const Ordinal& x) { return a.contains(x); }
bool set_is_empty(const DefinableSet& a) { return a.is_empty(); }
bool set_subset(const DefinableSet& a, const DefinableSet& b) { return (a - b).is_empty(); }

bool set_equal(const DefinableSet& a, const DefinableSet& b) {
    require_same_top(a, b);
    return (a - b).is_empty() && (b - a).is_empty();
}

DefinableSet derived(const DefinableSet& a) {
    // Inside a segment (lo, hi] a point of degree e has left neighbourhoods
    // containing points of every degree below e and nothing else; so it is a
    // limit point of A iff A meets some degree class below e there.
    StepMap<uint8_t> m(a.top(), 0);
    auto& out = m.segments();
    out.clear();
    a.map().for_each_segment([&](const Ordinal&, const auto& seg, const std::vector<bool>& r) {
        detail::Segment<uint8_t> s{seg.hi, std::vector<uint8_t>(r.size(), 0)};
        size_t least = r.size();
        for (size_t d = 0; d < r.size(); ++d)
            if (r[d] && seg.by_degree[d]) {
                least = d;
                break;
            }
        for (size_t e = least + 1; e < r.size(); ++e) s.by_degree[e] = 1;
        out.push_back(std::move(s));
    });
    return DefinableSet(std::move(m));
}

DefinableSet derived_in(const DefinableSet& a, const DefinableSet& s) {
    if (!set_subset(a, s)) throw PreconditionError("derived_in: A is not a subset of S");
    if (!set_subset(derived(s), s)) throw PreconditionError("derived_in: S is not closed");
    return derived(a) & s;
}

DefinableSet set_closure(const DefinableSet& a) { return a | derived(a); }

DefinableSet set_interior(const DefinableSet& a) { return ~set_closure(~a); }

DefinableSet set_interior_in(const DefinableSet& a, const DefinableSet& s) {
    return s - set_closure(s - a);
}

bool is_closed_in(const DefinableSet& a, const DefinableSet& s) {
    return set_subset(derived(a) & s, a);
}

bool is_clopen_in(const DefinableSet& a, const DefinableSet& s) {
    if (!set_subset(a, s)) throw PreconditionError("is_clopen_in: A is not a subset of S");
    return is_closed_in(a, s) && is_closed_in(s - a, s);
}

bool is_compact(const DefinableSet& a) { return set_subset(derived(a), a); }

DefinableSet isolated_points(const DefinableSet& s) { return s - derived(s); }

std::vector<DefinableSet> cb_chain(const DefinableSet& s) {
    if (!is_compact(s)) throw PreconditionError("cb_chain: set is not closed");
    std::vector<DefinableSet> chain{s};
    while (!chain.back().is_empty()) chain.push_back(derived(chain.back()));
    return chain;
}

uint32_t cb_rank(const DefinableSet& s) { return static_cast<uint32_t>(cb_chain(s).size() - 1); }

std::vector<Ordinal> canonical_test_points(const Ordinal& top,
                                           const std::vector<DefinableSet>& family) {
    if (family.empty()) return top.is_zero() ? std::vector<Ordinal>{top} : std::vector<Ordinal>{{}, top};
    StepMap<uint8_t> refinement(top, 0);
    for (const auto& a : family) {
        if (!(a.top() == top)) throw SpaceMismatch("test points: family over a different top");
        for (const auto& s : a.map().segments()) refinement.split_at(s.hi);
    }
    std::vector<Ordinal> pts{Ordinal{}, top};
    auto add = [&](const Ordinal& x) {
        if (x <= top) pts.push_back(x);
    };
    auto add_endpoint = [&](const Ordinal& b) {
        add(b);
        add(b.successor());
        if (b.is_successor()) add(b.drop_last_unit());
        if (b.is_limit()) add(b.drop_last_unit() + Ordinal::omega_pow(b.degree() - 1));
    };
    add_endpoint(Ordinal{});
    refinement.for_each_segment([&](const Ordinal& lo, const auto& seg, const std::vector<bool>& r) {
        add_endpoint(seg.hi);
        for (size_t d = 0; d < r.size(); ++d) {
            if (!r[d]) continue;
            Ordinal w = lo.next_with_degree(static_cast<uint32_t>(d));
            add(w);
            if (w.is_limit()) add(w.drop_last_unit() + Ordinal::omega_pow(w.degree() - 1));
        }
        (void)lo;
    });
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace adlab
