#include "adlab/ideal_map.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace adlab {

using detail::StepMap;

namespace {

int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("ideal value overflow");
    return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("ideal value overflow");
    return r;
}

void require_same_space(const IdealMap& a, const IdealMap& b) {
    if (!same_space(a.space(), b.space()))
        throw SpaceMismatch("ideal maps on different spaces");
}

template <class F>
IdealMap pointwise(const IdealMap& a, const IdealMap& b, F&& f) {
    require_same_space(a, b);
    return IdealMap(a.space(), a.map().combine(b.map(), f));
}

// Step set of the points where pred(value) holds, intersected with the carrier.
template <class P>
DefinableSet where(const IdealMap& v, P&& pred) {
    auto m = v.map().transform([&](int64_t x) -> uint8_t { return pred(x) ? 1 : 0; });
    return DefinableSet(std::move(m)) & v.space().carrier;
}

} // namespace

IdealMap::IdealMap(Space space) : space_(std::move(space)), map_(space_.top, 0) {}

IdealMap::IdealMap(Space space, StepMap<int64_t> m) : space_(std::move(space)), map_(std::move(m)) {
    map_.canonicalize(0);
}

IdealMap IdealMap::from_pieces(Space space, const std::vector<Piece>& pieces,
                               const std::vector<Override>& overrides) {
    StepMap<int64_t> m(space.top, 0);
    DefinableSet covered(space.top);
    for (size_t i = 0; i < pieces.size(); ++i) {
        const auto& p = pieces[i];
        const auto cell = DefinableSet::of_cells(space.top, {p.cell});
        if (auto overlap = (cell & covered).least_point())
            throw ValidationError("overlapping-pieces", static_cast<int>(i), overlap->to_string(),
                                  "piece " + std::to_string(i) + " overlaps an earlier piece");
        if (auto outside = (cell - space.carrier).least_point())
            throw ValidationError("piece-outside-carrier", static_cast<int>(i),
                                  outside->to_string(),
                                  "piece " + std::to_string(i) + " leaves the carrier");
        covered = covered | cell;
        m.apply_cell(p.cell.lo, p.cell.hi, p.cell.dmin, p.cell.dmax.value_or(m.max_degree()),
                     [&](int64_t) { return p.value; });
    }
    for (const auto& [x, value] : overrides) {
        if (!space.carrier.contains(x))
            throw ValidationError("override-outside-carrier", std::nullopt, x.to_string(),
                                  "override point is not in the carrier");
        const Cell c = Cell::point(x);
        m.apply_cell(c.lo, c.hi, c.dmin, c.dmax.value_or(m.max_degree()),
                     [&](int64_t) { return value; });
    }
    return IdealMap(std::move(space), std::move(m));
}

IdealMap IdealMap::indicator(Space space, const DefinableSet& set, int64_t value) {
    if (!set_subset(set, space.carrier))
        throw PreconditionError("indicator set is not inside the carrier");
    auto m = set.map().transform([&](uint8_t b) -> int64_t { return b ? value : 0; });
    return IdealMap(std::move(space), std::move(m));
}

int64_t IdealMap::at(const Ordinal& x) const {
    if (!space_.carrier.contains(x))
        throw PreconditionError("point " + x.to_string() + " is outside the carrier");
    return map_.value(x);
}

std::vector<IdealMap::Piece> IdealMap::pieces() const {
    std::vector<Piece> out;
    for (auto& [cell, value] : detail::step_cells<int64_t>(map_, 0)) {
        const bool singleton = cell.lo ? (cell.dmin == cell.hi.degree() && !cell.dmax &&
                                          *cell.lo == cell.hi.drop_last_unit())
                                       : cell.hi.is_zero();
        if (!singleton) out.push_back({cell, value});
    }
    return out;
}

std::vector<IdealMap::Override> IdealMap::overrides() const {
    std::vector<Override> out;
    for (auto& [cell, value] : detail::step_cells<int64_t>(map_, 0)) {
        const bool singleton = cell.lo ? (cell.dmin == cell.hi.degree() && !cell.dmax &&
                                          *cell.lo == cell.hi.drop_last_unit())
                                       : cell.hi.is_zero();
        if (singleton) out.emplace_back(cell.hi, value);
    }
    return out;
}

std::string IdealMap::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& p : pieces()) {
        if (!first) os << " + ";
        first = false;
        os << p.value << "*" << DefinableSet::of_cells(space_.top, {p.cell}).to_string();
    }
    for (const auto& [x, value] : overrides()) {
        if (!first) os << " + ";
        first = false;
        os << value << "*{" << x << "}";
    }
    if (first) os << "0";
    return os.str();
}

std::vector<int64_t> IdealMap::range() const {
    std::set<int64_t> values;
    auto joint = map_.combine(space_.carrier.map(), [](int64_t v, uint8_t in) {
        return std::pair<int64_t, uint8_t>(v, in);
    });
    if (joint.at_zero().second) values.insert(joint.at_zero().first);
    joint.for_each_segment([&](const Ordinal&, const auto& seg, const std::vector<bool>& r) {
        for (size_t d = 0; d < r.size(); ++d)
            if (r[d] && seg.by_degree[d].second) values.insert(seg.by_degree[d].first);
    });
    return {values.begin(), values.end()};
}

int64_t IdealMap::max_value() const { return range().back(); }
int64_t IdealMap::min_value() const { return range().front(); }

int64_t ideal_value(const IdealMap& v, const Ordinal& x) { return v.at(x); }

std::vector<DefinableSet> level_sets(const IdealMap& v) {
    std::vector<DefinableSet> out;
    for (int64_t value : v.range()) out.push_back(level_set(v, value));
    return out;
}

namespace {

std::vector<Ordinal> joint_test_points(const IdealMap& v, const IdealMap& u) {
    auto family = level_sets(v);
    auto more = level_sets(u);
    family.insert(family.end(), more.begin(), more.end());
    auto pts = canonical_test_points(v.space().top, family);
    std::erase_if(pts, [&](const Ordinal& x) { return !v.space().carrier.contains(x); });
    return pts;
}

} // namespace

bool ideal_equal(const IdealMap& v, const IdealMap& u) {
    require_same_space(v, u);
    for (const auto& x : joint_test_points(v, u))
        if (v.at(x) != u.at(x)) return false;
    return true;
}

bool ideal_leq(const IdealMap& v, const IdealMap& u) {
    require_same_space(v, u);
    for (const auto& x : joint_test_points(v, u))
        if (v.at(x) > u.at(x)) return false;
    return true;
}

IdealMap ideal_mul(const IdealMap& v, const IdealMap& u) { return pointwise(v, u, checked_add); }

IdealMap ideal_inv(const IdealMap& v) {
    return IdealMap(v.space(), v.map().transform([](int64_t x) { return checked_mul(x, -1); }));
}

IdealMap ideal_sum(const IdealMap& v, const IdealMap& u) {
    return pointwise(v, u, [](int64_t a, int64_t b) { return std::min(a, b); });
}

IdealMap ideal_cap(const IdealMap& v, const IdealMap& u) {
    return pointwise(v, u, [](int64_t a, int64_t b) { return std::max(a, b); });
}

IdealMap ideal_mask(const IdealMap& v, const DefinableSet& set) {
    if (!(set.top() == v.space().top)) throw SpaceMismatch("mask over a different top");
    return IdealMap(v.space(),
                    v.map().combine(set.map(), [](int64_t x, uint8_t in) { return in ? x : 0; }));
}

IdealMap ideal_scale(const IdealMap& v, int64_t k) {
    return IdealMap(v.space(), v.map().transform([k](int64_t x) { return checked_mul(x, k); }));
}

DefinableSet level_set(const IdealMap& v, int64_t value) {
    return where(v, [value](int64_t x) { return x == value; });
}

DefinableSet at_least(const IdealMap& v, int64_t n) {
    return where(v, [n](int64_t x) { return x >= n; });
}

DefinableSet zero_set(const IdealMap& v) { return level_set(v, 0); }

DefinableSet support(const IdealMap& v) {
    return set_closure(where(v, [](int64_t x) { return x != 0; }));
}

DefinableSet v_set(const IdealMap& v) { return at_least(v, 1); }

bool is_integral(const IdealMap& v) { return v.min_value() >= 0; }

bool is_radical(const IdealMap& v) {
    auto r = v.range();
    return std::all_of(r.begin(), r.end(), [](int64_t x) { return x == 0 || x == 1; });
}

IdealMap radical(const IdealMap& v) {
    if (!is_integral(v)) throw NotIntegral();
    return IdealMap::indicator(v.space(), v_set(v));
}

DefinableSet discontinuity_set_in(const IdealMap& v, const DefinableSet& subspace) {
    if (!(subspace.top() == v.space().top)) throw SpaceMismatch("subspace over a different top");
    // Near a point of degree e inside a segment, the subspace accumulates
    // exactly its own degree classes below e; v is locally constant there iff
    // all of those classes carry v's value at the point.
    auto joint = v.map().combine(subspace.map(), [](int64_t x, uint8_t in) {
        return std::pair<int64_t, uint8_t>(x, in);
    });
    StepMap<uint8_t> bad(v.space().top, 0);
    auto& segs = bad.segments();
    segs.clear();
    joint.for_each_segment([&](const Ordinal&, const auto& seg, const std::vector<bool>& r) {
        detail::Segment<uint8_t> s{seg.hi, std::vector<uint8_t>(r.size(), 0)};
        for (size_t e = 1; e < r.size(); ++e) {
            if (!r[e] || !seg.by_degree[e].second) continue;
            for (size_t d = 0; d < e; ++d)
                if (seg.by_degree[d].second && seg.by_degree[d].first != seg.by_degree[e].first) {
                    s.by_degree[e] = 1;
                    break;
                }
        }
        segs.push_back(std::move(s));
    });
    return DefinableSet(std::move(bad));
}

DefinableSet discontinuity_set(const IdealMap& v) {
    return discontinuity_set_in(v, v.space().carrier);
}

bool is_continuous(const IdealMap& v) { return discontinuity_set(v).is_empty(); }

bool is_continuous_on(const IdealMap& v, const DefinableSet& subspace) {
    return discontinuity_set_in(v, subspace).is_empty();
}

bool level_sets_clopen(const IdealMap& v) {
    for (const auto& level : level_sets(v))
        if (!is_clopen_in(level, v.space().carrier)) return false;
    return true;
}

PosNegSplit pos_neg_split(const IdealMap& v) {
    return {IdealMap(v.space(), v.map().transform([](int64_t x) { return std::max<int64_t>(x, 0); })),
            IdealMap(v.space(), v.map().transform([](int64_t x) {
                         return std::max<int64_t>(checked_mul(x, -1), 0);
                     }))};
}

std::vector<DefinableSet> radical_factor(const IdealMap& v) {
    if (!is_integral(v)) throw NotIntegral();
    const auto& carrier = v.space().carrier;
    std::vector<DefinableSet> factors;
    const int64_t k = v.max_value();
    for (int64_t n = 1; n <= k; ++n) {
        auto level = at_least(v, n);
        if (!is_clopen_in(level, carrier) || !is_compact(level)) {
            const auto rest = carrier - level;
            auto boundary = (derived(rest) & level) | (derived(level) & rest);
            throw NotContinuous(std::move(boundary), n);
        }
        factors.push_back(std::move(level));
    }
    return factors;
}

IdealMap radical_recompose(const std::vector<DefinableSet>& factors, const Space& space) {
    IdealMap total(space);
    for (size_t i = 0; i < factors.size(); ++i) {
        const auto& x = factors[i];
        if (!set_subset(x, space.carrier) || !is_clopen_in(x, space.carrier) || !is_compact(x)) {
            const auto rest = space.carrier - x;
            auto boundary = (derived(rest) & x) | (derived(x) & rest) | (x - space.carrier);
            throw ValidationError("non-clopen-factor", static_cast<int>(i),
                                  boundary.to_string(),
                                  "factor " + std::to_string(i) + " is not clopen in the carrier");
        }
        total = ideal_mul(total, IdealMap::indicator(space, x));
    }
    return total;
}

IdealMap restrict_ideal(const IdealMap& v, const DefinableSet& c) {
    if (!is_compact(c)) throw PreconditionError("restriction target is not closed");
    if (!set_subset(c, v.space().carrier))
        throw PreconditionError("restriction target is not inside the carrier");
    auto sub = Space::with_carrier(v.space().top, c);
    auto masked = ideal_mask(v, c);
    return IdealMap(std::move(sub), masked.map());
}

} // namespace adlab
