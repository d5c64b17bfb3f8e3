#pragma once

// Piecewise-constant maps on [0, top] over the interval-and-degree partition.
//
// The interval (0, top] is cut into consecutive segments (lo, hi]; inside a
// segment a map is constant on each degree class. Every definable set and
// every ideal map in the library is one of these, so Boolean operations,
// pointwise arithmetic and level sets all reduce to a merge of breakpoints.

#include "adlab/ordinal.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace adlab::detail {

/// realized[d] is true iff some x in (lo, hi] has degree d.
inline std::vector<bool> realized_degrees(const Ordinal& lo, const Ordinal& hi,
                                          uint32_t max_degree) {
    std::vector<bool> r(max_degree + 1, false);
    if (!(lo < hi)) return r;
    for (uint32_t d = 0; d <= max_degree; ++d) r[d] = lo.next_with_degree(d) <= hi;
    return r;
}

template <class V>
struct Segment {
    Ordinal hi;
    std::vector<V> by_degree;
};

template <class V>
class StepMap {
public:
    StepMap() = default;

    StepMap(Ordinal top, V fill) : top_(std::move(top)), at_zero_(fill) {
        if (!top_.is_zero())
            segments_.push_back({top_, std::vector<V>(max_degree() + 1, fill)});
    }

    const Ordinal& top() const { return top_; }
    uint32_t max_degree() const { return top_.leading_exponent(); }

    const V& at_zero() const { return at_zero_; }
    V& at_zero() { return at_zero_; }
    const std::vector<Segment<V>>& segments() const { return segments_; }
    std::vector<Segment<V>>& segments() { return segments_; }

    Ordinal segment_lo(size_t i) const { return i == 0 ? Ordinal{} : segments_[i - 1].hi; }

    /// Index of the segment containing x > 0.
    size_t locate(const Ordinal& x) const {
        auto it = std::lower_bound(segments_.begin(), segments_.end(), x,
                                   [](const Segment<V>& s, const Ordinal& p) { return s.hi < p; });
        if (it == segments_.end()) throw std::out_of_range("point beyond top: " + x.to_string());
        return static_cast<size_t>(it - segments_.begin());
    }

    const V& value(const Ordinal& x) const {
        if (x.is_zero()) return at_zero_;
        return segments_[locate(x)].by_degree[x.degree()];
    }

    /// Ensures b is a segment endpoint (no-op for 0 or existing endpoints).
    void split_at(const Ordinal& b) {
        if (b.is_zero()) return;
        const size_t i = locate(b);
        if (segments_[i].hi == b) return;
        Segment<V> left{b, segments_[i].by_degree};
        segments_.insert(segments_.begin() + static_cast<std::ptrdiff_t>(i), std::move(left));
    }

    /// Applies f to the value of every point of the cell
    /// {x : lo < x <= hi, dmin <= deg x <= dmax}; a missing lo means 0 is included.
    template <class F>
    void apply_cell(const std::optional<Ordinal>& lo, const Ordinal& hi, uint32_t dmin,
                    uint32_t dmax, F&& f) {
        if (top_ < hi) throw std::out_of_range("cell endpoint beyond top: " + hi.to_string());
        if (!lo && dmin == 0) at_zero_ = f(at_zero_);
        const Ordinal start = lo ? *lo : Ordinal{};
        if (!(start < hi)) return;
        split_at(start);
        split_at(hi);
        dmax = std::min(dmax, max_degree());
        for (size_t i = start.is_zero() ? 0 : locate(start) + 1; i < segments_.size(); ++i) {
            for (uint32_t d = dmin; d <= dmax; ++d)
                segments_[i].by_degree[d] = f(segments_[i].by_degree[d]);
            if (segments_[i].hi == hi) break;
        }
    }

    template <class F>
    auto transform(F&& f) const {
        using W = std::decay_t<decltype(f(std::declval<const V&>()))>;
        StepMap<W> out;
        out.top_ = top_;
        out.at_zero_ = f(at_zero_);
        out.segments_.reserve(segments_.size());
        for (const auto& s : segments_) {
            Segment<W> t{s.hi, {}};
            t.by_degree.reserve(s.by_degree.size());
            for (const auto& v : s.by_degree) t.by_degree.push_back(f(v));
            out.segments_.push_back(std::move(t));
        }
        return out;
    }

    /// Pointwise combination on the common refinement of both partitions.
    template <class B, class F>
    auto combine(const StepMap<B>& other, F&& f) const {
        using W = std::decay_t<decltype(f(std::declval<const V&>(), std::declval<const B&>()))>;
        if (!(top_ == other.top()))
            throw std::invalid_argument("step maps over different intervals");
        StepMap<W> out;
        out.top_ = top_;
        out.at_zero_ = f(at_zero_, other.at_zero());
        const auto& os = other.segments();
        size_t i = 0, j = 0;
        while (i < segments_.size() && j < os.size()) {
            const auto& a = segments_[i];
            const auto& b = os[j];
            Segment<W> s{a.hi < b.hi ? a.hi : b.hi, {}};
            s.by_degree.reserve(a.by_degree.size());
            for (size_t d = 0; d < a.by_degree.size(); ++d)
                s.by_degree.push_back(f(a.by_degree[d], b.by_degree[d]));
            const bool adv_a = !(b.hi < a.hi);
            const bool adv_b = !(a.hi < b.hi);
            out.segments_.push_back(std::move(s));
            if (adv_a) ++i;
            if (adv_b) ++j;
        }
        return out;
    }

    /// Resets values on degree classes with no points to `neutral` and merges
    /// neighbouring segments that describe the same function on their union.
    void canonicalize(const V& neutral = V{}) {
        std::vector<Segment<V>> merged;
        std::vector<bool> merged_realized;
        Ordinal lo;
        for (auto& s : segments_) {
            auto r = realized_degrees(lo, s.hi, max_degree());
            for (size_t d = 0; d < r.size(); ++d)
                if (!r[d]) s.by_degree[d] = neutral;
            lo = s.hi;
            if (!merged.empty()) {
                auto& m = merged.back();
                bool compatible = true;
                for (size_t d = 0; d < r.size() && compatible; ++d)
                    if (r[d] && merged_realized[d] && !(m.by_degree[d] == s.by_degree[d]))
                        compatible = false;
                if (compatible) {
                    for (size_t d = 0; d < r.size(); ++d) {
                        if (r[d] && !merged_realized[d]) m.by_degree[d] = s.by_degree[d];
                        merged_realized[d] = merged_realized[d] || r[d];
                    }
                    m.hi = s.hi;
                    continue;
                }
            }
            merged.push_back(std::move(s));
            merged_realized = std::move(r);
        }
        segments_ = std::move(merged);
    }

    /// Calls f(lo, segment, realized) for every segment.
    template <class F>
    void for_each_segment(F&& f) const {
        Ordinal lo;
        for (const auto& s : segments_) {
            f(lo, s, realized_degrees(lo, s.hi, max_degree()));
            lo = s.hi;
        }
    }

private:
    template <class>
    friend class StepMap;

    Ordinal top_;
    V at_zero_{};
    std::vector<Segment<V>> segments_;
};

} // namespace adlab::detail
