#include "adlab/random.hpp"

#include "adlab/domain_model.hpp"
#include "adlab/ideal_map.hpp"

#include <algorithm>

namespace adlab {

Engine case_engine(uint64_t seed, uint64_t case_index) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(case_index), static_cast<uint32_t>(case_index >> 32),
                      0x5eedu};
    return Engine(seq);
}

int64_t uniform_int(Engine& rng, int64_t lo, int64_t hi) {
    // Plain modular draw: libstdc++ and libc++ distributions differ, and
    // reports must be reproducible across toolchains.
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(rng() % span);
}

Ordinal random_ordinal(Engine& rng, const Ordinal& top, uint64_t max_coef) {
    const uint32_t max_e = top.leading_exponent();
    std::vector<Term> terms;
    for (int e = static_cast<int>(max_e); e >= 0; --e) {
        // Sparse terms keep every degree class reachable.
        if (uniform_int(rng, 0, 2) == 0) continue;
        terms.push_back({static_cast<uint32_t>(e),
                         static_cast<uint64_t>(uniform_int(rng, 1, static_cast<int64_t>(max_coef)))});
    }
    Ordinal x(std::move(terms));
    return top < x ? top : x;
}

Ordinal random_top(Engine& rng, uint32_t max_exponent) {
    const auto e = static_cast<uint32_t>(uniform_int(rng, 0, max_exponent));
    if (e == max_exponent) return Ordinal::omega_pow(e, static_cast<uint64_t>(uniform_int(rng, 1, 2)));
    std::vector<Term> terms{{e, static_cast<uint64_t>(uniform_int(rng, 1, e == 0 ? 20 : 4))}};
    if (e > 0 && uniform_int(rng, 0, 1) == 0)
        terms.push_back({0, static_cast<uint64_t>(uniform_int(rng, 1, 5))});
    return Ordinal(std::move(terms));
}

Cell random_cell(Engine& rng, const Ordinal& top) {
    Ordinal a = random_ordinal(rng, top);
    Ordinal b = random_ordinal(rng, top);
    if (b < a) std::swap(a, b);
    Cell c;
    if (uniform_int(rng, 0, 3) != 0) c.lo = a;
    c.hi = b;
    const auto max_d = static_cast<int64_t>(top.leading_exponent());
    c.dmin = static_cast<uint32_t>(uniform_int(rng, 0, max_d));
    if (uniform_int(rng, 0, 1) == 0)
        c.dmax = static_cast<uint32_t>(uniform_int(rng, c.dmin, max_d));
    if (uniform_int(rng, 0, 2) == 0) c.dmin = 0;
    return c;
}

std::vector<Cell> random_cells(Engine& rng, const Ordinal& top, size_t max_cells) {
    std::vector<Cell> out(static_cast<size_t>(uniform_int(rng, 0, static_cast<int64_t>(max_cells))));
    for (auto& c : out) c = random_cell(rng, top);
    return out;
}

Cell random_interval(Engine& rng, const Ordinal& top) {
    Cell c = random_cell(rng, top);
    c.dmin = 0;
    c.dmax.reset();
    return c;
}

Space random_space(Engine& rng, const Ordinal& top) {
    if (uniform_int(rng, 0, 1) == 0) return Space::interval(top);
    auto carrier = set_closure(DefinableSet::of_cells(top, random_cells(rng, top, 4)));
    if (carrier.is_empty()) carrier = DefinableSet::of_points(top, {top});
    return Space::with_carrier(top, carrier);
}

std::vector<DefinableSet> random_chain(Engine& rng, const Space& space) {
    std::vector<DefinableSet> chain{space.carrier};
    for (;;) {
        const auto d = derived(chain.back());
        if (d.is_empty() || uniform_int(rng, 0, 3) == 0) break;
        auto next = d;
        if (uniform_int(rng, 0, 1) == 0) {
            auto part = set_closure(DefinableSet::of_cells(space.top, random_cells(rng, space.top, 3)) & d);
            if (!part.is_empty()) next = part;
        }
        chain.push_back(std::move(next));
    }
    return chain;
}

DomainModel random_model(Engine& rng, const Space& space, bool allow_stalled) {
    auto chain = random_chain(rng, space);
    const bool stalled = allow_stalled && uniform_int(rng, 0, 3) == 0;
    return model_custom(space, std::move(chain), stalled ? Terminal::stalled : Terminal::empty);
}

namespace {

Cell within_carrier(Engine& rng, const Space& space, bool interval) {
    return interval ? random_interval(rng, space.top) : random_cell(rng, space.top);
}

} // namespace

IdealMap random_ideal(Engine& rng, const Space& space, size_t max_pieces, int64_t vmin,
                      int64_t vmax) {
    // Later pieces are painted over earlier ones, then clipped to the carrier.
    detail::StepMap<int64_t> m(space.top, 0);
    const auto n = uniform_int(rng, 1, static_cast<int64_t>(max_pieces));
    for (int64_t i = 0; i < n; ++i) {
        const Cell c = within_carrier(rng, space, uniform_int(rng, 0, 1) == 0);
        const int64_t value = uniform_int(rng, vmin, vmax);
        m.apply_cell(c.lo, c.hi, c.dmin, c.dmax.value_or(m.max_degree()),
                     [value](int64_t) { return value; });
    }
    const auto overrides = uniform_int(rng, 0, 2);
    for (int64_t i = 0; i < overrides; ++i) {
        const Cell c = Cell::point(random_ordinal(rng, space.top));
        const int64_t value = uniform_int(rng, vmin, vmax);
        m.apply_cell(c.lo, c.hi, c.dmin, c.dmax.value_or(m.max_degree()),
                     [value](int64_t) { return value; });
    }
    IdealMap full(Space::interval(space.top), std::move(m));
    return IdealMap(space, ideal_mask(full, space.carrier).map());
}

IdealMap random_continuous(Engine& rng, const Space& space, size_t max_pieces, int64_t vmin,
                           int64_t vmax) {
    // Values of a sum of interval indicators are clamped, which keeps every
    // level set a finite union of clopen intervals.
    detail::StepMap<int64_t> m(space.top, 0);
    const auto n = uniform_int(rng, 1, static_cast<int64_t>(max_pieces));
    for (int64_t i = 0; i < n; ++i) {
        const Cell c = random_interval(rng, space.top);
        const int64_t value = uniform_int(rng, vmin, vmax);
        m.apply_cell(c.lo, c.hi, 0, m.max_degree(), [value](int64_t x) { return x + value; });
    }
    auto clamped = m.transform([&](int64_t x) { return std::clamp(x, vmin, vmax); });
    IdealMap full(Space::interval(space.top), std::move(clamped));
    return IdealMap(space, ideal_mask(full, space.carrier).map());
}

IdealMap random_continuous_integral(Engine& rng, const Space& space, size_t max_pieces,
                                    int64_t vmax) {
    return random_continuous(rng, space, max_pieces, 0, vmax);
}

IdealMap random_integral(Engine& rng, const Space& space, size_t max_pieces, int64_t vmax) {
    auto v = random_ideal(rng, space, max_pieces, 0, vmax);
    if (uniform_int(rng, 0, 1) == 0) v = ideal_mul(v, random_continuous_integral(rng, space, 3, 2));
    return v;
}

IdealMap random_mi_candidate(Engine& rng, const DomainModel& m, bool upward) {
    // A continuous base plus, for each deeper stage j, a continuous map cut
    // down to C_j (upward) or to C_0 \ C_j (downward) inside the base's
    // positive set. Every jump at a point of C_j then has the same sign, so
    // two maps of one direction never cancel each other's jumps.
    const auto& space = m.space();
    const auto base = random_continuous_integral(rng, space, 4, 3);
    const auto pos = v_set(base);
    auto v = base;
    for (size_t j = 1; j <= m.last(); ++j) {
        const auto extra = random_continuous_integral(rng, space, 3, 2);
        const auto where = upward ? m.stage(j) : space.carrier - m.stage(j);
        v = ideal_mul(v, ideal_mask(extra, where & pos));
    }
    return v;
}

std::optional<IdealMap> random_mi_accepted(Engine& rng, const DomainModel& m, bool upward,
                                           int tries) {
    for (int t = 0; t < tries; ++t) {
        auto v = random_mi_candidate(rng, m, upward);
        if (mi_check(m, v).accepted) return v;
    }
    return std::nullopt;
}

} // namespace adlab
