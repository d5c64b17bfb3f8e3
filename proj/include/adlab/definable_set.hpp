#pragma once

#include "adlab/ordinal.hpp"
#include "adlab/step_map.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adlab {

/// {x : lo < x <= hi, dmin <= deg x <= dmax}. A missing `lo` is the bottom
/// marker: the point 0 also belongs to the cell (when dmin == 0, since deg 0 = 0).
/// A missing `dmax` is unbounded.
struct Cell {
    std::optional<Ordinal> lo;
    Ordinal hi;
    uint32_t dmin = 0;
    std::optional<uint32_t> dmax;

    bool contains(const Ordinal& x) const;

    static Cell interval(std::optional<Ordinal> lo, Ordinal hi) {
        return {std::move(lo), std::move(hi), 0, std::nullopt};
    }
    static Cell point(const Ordinal& x);

    bool operator==(const Cell&) const = default;
};

namespace detail {

/// Number of points of a cell, saturated at 2, and its least point.
std::pair<int, Ordinal> count_cell_points(const Cell& c, uint32_t max_degree);

/// Renders a step map as disjoint cells carrying its values, skipping
/// `neutral`. Adjacent degree classes with equal values share one cell and
/// cells holding a single point come out as point cells.
template <class V>
std::vector<std::pair<Cell, V>> step_cells(const StepMap<V>& m, const V& neutral) {
    std::vector<std::pair<Cell, V>> out;
    const uint32_t max_d = m.max_degree();
    bool zero_pending = !(m.at_zero() == neutral);
    m.for_each_segment([&](const Ordinal& lo, const auto& seg, const std::vector<bool>& r) {
        const size_t n = r.size();
        size_t d = 0;
        while (d < n) {
            if (!r[d] || seg.by_degree[d] == neutral) {
                ++d;
                continue;
            }
            const V value = seg.by_degree[d];
            // Extend the run across equal-valued or empty degree classes.
            size_t last = d;
            size_t e = d + 1;
            while (e < n && (!r[e] || seg.by_degree[e] == value)) {
                if (r[e]) last = e;
                ++e;
            }
            bool open_top = true;
            for (size_t k = last + 1; k < n; ++k)
                if (r[k]) open_top = false;
            Cell c{lo, seg.hi, static_cast<uint32_t>(d),
                   open_top ? std::nullopt : std::optional<uint32_t>(static_cast<uint32_t>(last))};
            if (zero_pending && lo.is_zero() && d == 0 && m.at_zero() == value) {
                c.lo.reset();
                zero_pending = false;
            }
            auto [count, first] = count_cell_points(c, max_d);
            if (count == 1 && c.lo) c = Cell::point(first);
            out.emplace_back(std::move(c), value);
            d = e;
        }
    });
    if (zero_pending) out.insert(out.begin(), {Cell::point(Ordinal{}), m.at_zero()});
    return out;
}

} // namespace detail

/// A finite union of cells inside the ambient interval [0, top].
///
/// Stored normalized as a step map over disjoint segments, so membership,
/// emptiness and equality are exact. The class is closed under the Boolean
/// operations, closure, interior and derived set.
class DefinableSet {
public:
    DefinableSet() = default;
    explicit DefinableSet(Ordinal top);

    static DefinableSet full(const Ordinal& top);
    static DefinableSet of_cells(const Ordinal& top, const std::vector<Cell>& cells);
    static DefinableSet of_points(const Ordinal& top, const std::vector<Ordinal>& points);
    /// (lo, hi], or [0, hi] for a missing lo.
    static DefinableSet interval(const Ordinal& top, std::optional<Ordinal> lo, const Ordinal& hi);

    const Ordinal& top() const { return map_.top(); }
    bool contains(const Ordinal& x) const;
    bool is_empty() const;
    std::optional<Ordinal> least_point() const;
    /// All points, or nullopt if the set is infinite (or has more than `limit` points).
    std::optional<std::vector<Ordinal>> points(size_t limit = 4096) const;

    /// Disjoint cells covering exactly this set; singleton cells are point cells.
    std::vector<Cell> cells() const;
    std::string to_string() const;

    DefinableSet operator|(const DefinableSet& o) const;
    DefinableSet operator&(const DefinableSet& o) const;
    DefinableSet operator-(const DefinableSet& o) const;
    /// Complement inside [0, top].
    DefinableSet operator~() const;

    const detail::StepMap<uint8_t>& map() const { return map_; }
    explicit DefinableSet(detail::StepMap<uint8_t> m);

private:
    detail::StepMap<uint8_t> map_;
};

/// Structural equality after normalization; see set_equal for the decision procedure.
bool operator==(const DefinableSet& a, const DefinableSet& b);

/// A compact ordinal space: a closed, nonempty carrier inside [0, top].
struct Space {
    Ordinal top;
    DefinableSet carrier;

    /// The whole interval [0, top].
    static Space interval(const Ordinal& top);
    /// Throws ValidationError if the carrier is not closed or is empty.
    static Space with_carrier(const Ordinal& top, const DefinableSet& carrier);
};

bool same_space(const Space& a, const Space& b);

// Boolean algebra. All operands must share the same ambient top (SpaceMismatch otherwise).
DefinableSet set_union(const DefinableSet& a, const DefinableSet& b);
DefinableSet set_intersect(const DefinableSet& a, const DefinableSet& b);
DefinableSet set_difference(const DefinableSet& a, const DefinableSet& b);
DefinableSet set_complement(const DefinableSet& a);
/// S \ A.
DefinableSet set_complement_in(const DefinableSet& a, const DefinableSet& s);
bool set_membership(const DefinableSet& a, const Ordinal& x);
bool set_is_empty(const DefinableSet& a);
bool set_subset(const DefinableSet& a, const DefinableSet& b);
/// Decided by emptiness of the symmetric difference.
bool set_equal(const DefinableSet& a, const DefinableSet& b);

// Topology of [0, top] with the order topology.
/// Limit points of A in the ambient interval.
DefinableSet derived(const DefinableSet& a);
/// Limit points of A inside the subspace S; requires A within S and S closed.
DefinableSet derived_in(const DefinableSet& a, const DefinableSet& s);
DefinableSet set_closure(const DefinableSet& a);
DefinableSet set_interior(const DefinableSet& a);
/// Interior of A relative to the subspace S.
DefinableSet set_interior_in(const DefinableSet& a, const DefinableSet& s);
bool is_closed_in(const DefinableSet& a, const DefinableSet& s);
bool is_clopen_in(const DefinableSet& a, const DefinableSet& s);
bool is_compact(const DefinableSet& a);
DefinableSet isolated_points(const DefinableSet& s);

/// S, derived(S), derived(derived(S)), ... down to (and including) the empty set.
std::vector<DefinableSet> cb_chain(const DefinableSet& s);
/// Least k with the k-th derived set empty.
uint32_t cb_rank(const DefinableSet& s);

/// A finite point set on which any two sets of the Boolean algebra generated
/// by `family` agree iff they are equal. With an empty family: {0, top}.
std::vector<Ordinal> canonical_test_points(const Ordinal& top,
                                           const std::vector<DefinableSet>& family);

} // namespace adlab
