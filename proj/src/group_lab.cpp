#include "adlab/group_lab.hpp"

#include "adlab/random.hpp"

#include <algorithm>
#include <numeric>

namespace adlab {

namespace {

using lattice::Int;
using lattice::Matrix;
using lattice::Vector;

void require_common_space(const std::vector<IdealMap>& gens) {
    for (size_t i = 1; i < gens.size(); ++i)
        if (!same_space(gens[0].space(), gens[i].space()))
            throw SpaceMismatch("generators on different spaces");
}

void require_scattered(const DomainModel& m) {
    if (!is_sp_scattered(m)) throw PreconditionError("the model must be scattered");
}

Space stage_space(const DomainModel& m, size_t i) {
    return Space::with_carrier(m.space().top, m.stage(i));
}

Matrix table_matrix(const AtomDecomposition& d) { return lattice::from_int64(d.table); }

Matrix select_columns(const Matrix& a, const std::vector<size_t>& cols) {
    Matrix out;
    out.reserve(a.size());
    for (const auto& row : a) {
        Vector r;
        r.reserve(cols.size());
        for (size_t c : cols) r.push_back(row[c]);
        out.push_back(std::move(r));
    }
    return out;
}

Matrix hermite_rows(const Matrix& a, size_t cols, std::stop_token stop) {
    auto hf = lattice::hermite(a, cols, stop);
    return Matrix(hf.h.begin(), hf.h.begin() + static_cast<std::ptrdiff_t>(hf.rank));
}

bool spans_contain(const Matrix& outer, const Matrix& inner, size_t cols, std::stop_token stop) {
    const auto hf = lattice::hermite(outer, cols, stop);
    for (const auto& row : inner)
        if (!lattice::solve(hf, row)) return false;
    return true;
}

// Invariant factors of span(outer) / span(inner), inner inside outer; `outer`
// must already be a basis.
std::vector<Int> quotient_divisors(const Matrix& outer, const Matrix& inner, size_t cols,
                                   std::stop_token stop) {
    const auto hf = lattice::hermite(outer, cols, stop);
    Matrix coords;
    for (const auto& row : inner) {
        auto c = lattice::solve(hf, row);
        if (!c) throw Error("kernel element outside the span");
        coords.push_back(std::move(*c));
    }
    return lattice::smith_divisors(coords, outer.size(), stop);
}

bool all_units(const std::vector<Int>& d) {
    return std::all_of(d.begin(), d.end(), [](const Int& x) { return x == 1; });
}

// Splits the atoms of gens + chi(C) into those inside C and the rest; the
// indicator row is dropped from the table.
struct StageSplit {
    AtomDecomposition atoms;
    std::vector<size_t> inside;
    std::vector<size_t> outside;
};

StageSplit split_by_stage(const std::vector<IdealMap>& gens, const DefinableSet& c,
                          const Space& space) {
    auto family = gens;
    family.push_back(IdealMap::indicator(space, c & space.carrier));
    StageSplit s;
    s.atoms = atom_decompose(family);
    s.atoms.table.pop_back();
    for (size_t a = 0; a < s.atoms.atoms.size(); ++a)
        (set_subset(s.atoms.atoms[a], c) ? s.inside : s.outside).push_back(a);
    return s;
}

} // namespace

AtomDecomposition atom_decompose(const std::vector<IdealMap>& gens) {
    AtomDecomposition out;
    if (gens.empty()) return out;
    require_common_space(gens);

    struct Class {
        DefinableSet set;
        std::vector<int64_t> values;
    };
    std::vector<Class> classes{{gens[0].space().carrier, {}}};
    for (const auto& g : gens) {
        const auto values = g.range();
        std::vector<Class> next;
        for (const auto& cl : classes) {
            for (int64_t v : values) {
                auto part = cl.set & level_set(g, v);
                if (part.is_empty()) continue;
                auto vals = cl.values;
                vals.push_back(v);
                next.push_back({std::move(part), std::move(vals)});
            }
        }
        classes = std::move(next);
    }
    std::erase_if(classes, [](const Class& c) {
        return std::all_of(c.values.begin(), c.values.end(), [](int64_t v) { return v == 0; });
    });
    std::sort(classes.begin(), classes.end(), [](const Class& a, const Class& b) {
        return *a.set.least_point() < *b.set.least_point();
    });
    out.table.assign(gens.size(), std::vector<int64_t>(classes.size(), 0));
    for (size_t a = 0; a < classes.size(); ++a) {
        for (size_t g = 0; g < gens.size(); ++g) out.table[g][a] = classes[a].values[g];
        out.atoms.push_back(std::move(classes[a].set));
    }
    return out;
}

IntBasis subgroup_basis(const std::vector<IdealMap>& gens, std::stop_token stop) {
    IntBasis b;
    b.atoms = atom_decompose(gens);
    const auto a = table_matrix(b.atoms);
    const size_t cols = b.atoms.atoms.size();
    b.rows = hermite_rows(a, cols, stop);
    b.rank = b.rows.size();
    b.divisors = lattice::smith_divisors(a, cols, stop);
    return b;
}

IdealMap basis_element(const IntBasis& b, const Space& space, size_t k) {
    IdealMap out(space);
    for (size_t a = 0; a < b.atoms.atoms.size(); ++a) {
        const Int& x = b.rows.at(k)[a];
        if (x == 0) continue;
        out = ideal_mul(out, IdealMap::indicator(space, b.atoms.atoms[a], x.convert_to<int64_t>()));
    }
    return out;
}

MembershipResult subgroup_member(const std::vector<IdealMap>& gens, const IdealMap& h,
                                 std::stop_token stop) {
    MembershipResult r;
    if (gens.empty()) {
        r.member = h.range() == std::vector<int64_t>{0} || h.range().empty();
        return r;
    }
    if (!same_space(gens[0].space(), h.space()))
        throw SpaceMismatch("target and generators on different spaces");
    auto family = gens;
    family.push_back(h);
    auto d = atom_decompose(family);
    const Vector target(d.table.back().begin(), d.table.back().end());
    d.table.pop_back();
    const auto hf = lattice::hermite(table_matrix(d), d.atoms.size(), stop);
    if (auto c = lattice::solve(hf, target)) {
        r.member = true;
        r.certificate = std::move(*c);
    }
    return r;
}

StratTuple tuple_add(const StratTuple& a, const StratTuple& b) {
    if (a.components.size() != b.components.size()) throw SpaceMismatch("tuples of different length");
    StratTuple out;
    for (size_t i = 0; i < a.components.size(); ++i)
        out.components.push_back(ideal_mul(a.components[i], b.components[i]));
    return out;
}

bool tuple_equal(const StratTuple& a, const StratTuple& b) {
    if (a.components.size() != b.components.size()) return false;
    for (size_t i = 0; i < a.components.size(); ++i)
        if (!ideal_equal(a.components[i], b.components[i])) return false;
    return true;
}

bool tuple_leq(const StratTuple& a, const StratTuple& b) {
    if (a.components.size() != b.components.size()) throw SpaceMismatch("tuples of different length");
    for (size_t i = 0; i < a.components.size(); ++i)
        if (!ideal_leq(a.components[i], b.components[i])) return false;
    return true;
}

StratTuple tuple_on_stratum(const DomainModel& m, size_t i, const IdealMap& f) {
    StratTuple t;
    const auto s = strata(m);
    for (size_t j = 0; j <= m.last(); ++j) {
        if (j == i) t.components.push_back(ideal_mask(restrict_ideal(f, m.stage(j)), s[j]));
        else t.components.push_back(IdealMap(stage_space(m, j)));
    }
    return t;
}

IdealMap glue(const DomainModel& m, const StratTuple& t) {
    require_scattered(m);
    if (t.components.size() != m.chain().size())
        throw SpaceMismatch("tuple length differs from the number of strata");
    const auto s = strata(m);
    IdealMap out(m.space());
    for (size_t i = 0; i < s.size(); ++i) {
        const auto& c = t.components[i];
        if (!same_space(c.space(), stage_space(m, i)))
            throw SpaceMismatch("component " + std::to_string(i) + " is not on its stage");
        if (!(m.stage(i + 1) - zero_set(c)).is_empty())
            throw PreconditionError("component " + std::to_string(i) +
                                    " does not vanish on the next stage");
        if (auto bad = discontinuity_set_in(c, m.stage(i)) & s[i]; !bad.is_empty())
            throw UnglueError(i, bad);
        out = ideal_mul(out, ideal_mask(IdealMap(m.space(), c.map()), s[i]));
    }
    return out;
}

StratTuple unglue(const DomainModel& m, const IdealMap& v) {
    require_scattered(m);
    if (!same_space(m.space(), v.space())) throw SpaceMismatch("map and model on different spaces");
    const auto s = strata(m);
    StratTuple t;
    for (size_t i = 0; i < s.size(); ++i) {
        const auto r = restrict_ideal(v, m.stage(i));
        if (auto bad = discontinuity_set_in(r, m.stage(i)) & s[i]; !bad.is_empty())
            throw UnglueError(i, bad);
        t.components.push_back(ideal_mask(r, s[i]));
    }
    return t;
}

IntBasis kernel_of_restriction(const DomainModel& m, const std::vector<IdealMap>& gens,
                               size_t stage, std::stop_token stop) {
    require_scattered(m);
    IntBasis b;
    if (gens.empty()) return b;
    const auto split = split_by_stage(gens, m.stage(stage), gens[0].space());
    b.atoms = split.atoms;
    const auto a = table_matrix(split.atoms);
    const size_t cols = split.atoms.atoms.size();
    const auto restricted = select_columns(a, split.inside);
    const auto hb = lattice::hermite(restricted, split.inside.size(), stop);
    Matrix kernel;
    for (const auto& c : lattice::left_kernel(hb)) kernel.push_back(lattice::combine(c, a, cols));
    b.rows = hermite_rows(kernel, cols, stop);
    b.rank = b.rows.size();
    b.divisors = lattice::smith_divisors(b.rows, cols, stop);
    return b;
}

ExactnessReport exactness_report(const DomainModel& m, const std::vector<IdealMap>& gens,
                                 size_t stage, std::stop_token stop) {
    require_scattered(m);
    ExactnessReport r;
    r.stage = stage;
    if (gens.empty()) {
        r.additive = r.torsion_free = r.kernel_matches_vanishing = true;
        return r;
    }
    const auto split = split_by_stage(gens, m.stage(stage), gens[0].space());
    const auto a = table_matrix(split.atoms);
    const size_t cols = split.atoms.atoms.size();
    const auto span = hermite_rows(a, cols, stop);
    const auto kernel = kernel_of_restriction(m, gens, stage, stop);
    r.total_rank = span.size();
    r.kernel_rank = kernel.rank;
    r.image_rank = lattice::hermite(select_columns(a, split.inside), split.inside.size(), stop).rank;
    r.additive = r.total_rank == r.kernel_rank + r.image_rank;
    r.quotient_divisors = quotient_divisors(span, kernel.rows, cols, stop);
    r.torsion_free = all_units(r.quotient_divisors);

    // Echelon form with the stage columns first: the rows with no pivot among
    // them span the part of the lattice vanishing on the stage.
    std::vector<size_t> order = split.inside;
    order.insert(order.end(), split.outside.begin(), split.outside.end());
    const auto hf = lattice::hermite(select_columns(a, order), cols, stop);
    Matrix vanishing;
    for (size_t k = 0; k < hf.rank; ++k) {
        if (hf.pivots[k] < split.inside.size()) continue;
        Vector row(cols, 0);
        for (size_t j = 0; j < cols; ++j) row[order[j]] = hf.h[k][j];
        vanishing.push_back(std::move(row));
    }
    r.kernel_matches_vanishing = spans_contain(vanishing, kernel.rows, cols, stop) &&
                                 spans_contain(kernel.rows, vanishing, cols, stop);
    return r;
}

SigmaRReport sigma_r_report(const DomainModel& m, const std::vector<IdealMap>& gens,
                            std::stop_token stop) {
    require_scattered(m);
    for (size_t g = 0; g < gens.size(); ++g)
        if (!is_continuous(gens[g]))
            throw PreconditionError("generator " + std::to_string(g) + " is not continuous");
    SigmaRReport r;
    const auto crit = m.stage(1);
    if (!gens.empty()) {
        const auto rep = exactness_report(m, gens, 1, stop);
        r.total_rank = rep.total_rank;
        r.avoiding_rank = rep.kernel_rank;
        r.image_rank = rep.image_rank;
        r.quotient_rank = rep.total_rank - rep.kernel_rank;
        r.quotient_divisors = rep.quotient_divisors;
        r.torsion_free = rep.torsion_free;
    } else {
        r.torsion_free = true;
    }
    if (auto pts = crit.points()) {
        r.critical_points = pts->size();
        std::vector<IdealMap> ext;
        std::optional<Ordinal> prev;
        const auto& space = m.space();
        for (const auto& c : *pts) {
            const auto piece = DefinableSet::interval(space.top, prev, c) & space.carrier;
            ext.push_back(IdealMap::indicator(space, piece));
            prev = c;
        }
        if (ext.empty()) {
            r.achievable_rank = 0;
        } else {
            const auto split = split_by_stage(ext, crit, space);
            r.achievable_rank = lattice::hermite(select_columns(table_matrix(split.atoms), split.inside),
                                                 split.inside.size(), stop)
                                    .rank;
        }
    }
    return r;
}

std::optional<Ordinal> domination_witness(const IdealMap& v) {
    return (at_least(v, 2) & isolated_points(v.space().carrier)).least_point();
}

bool OrderMismatchExhibit::ok() const {
    return incomparable && glued_not_above && glued_t1_rejected && !cases.empty() &&
           std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.dominates; });
}

OrderMismatchExhibit order_mismatch_demo(const DomainModel& m, uint64_t seed, size_t count) {
    const Ordinal w = Ordinal::omega_pow(1);
    const auto& space = m.space();
    if (!(space.top == w) || !(space.carrier == DefinableSet::full(w)) || m.chain().size() != 2 ||
        !is_sp_scattered(m) || !(m.stage(1) == DefinableSet::of_points(w, {w})))
        throw PreconditionError("order_mismatch_demo needs the sharp model on [0,w]");

    const auto at_w = DefinableSet::of_points(w, {w});
    const Ordinal y0(1);
    OrderMismatchExhibit ex;
    ex.t1 = tuple_on_stratum(m, 1, IdealMap::indicator(space, at_w));
    ex.t2 = tuple_on_stratum(m, 0, IdealMap::indicator(space, DefinableSet::of_points(w, {y0})));
    ex.incomparable = !tuple_leq(ex.t1, ex.t2) && !tuple_leq(ex.t2, ex.t1);
    const auto g1 = glue(m, ex.t1);
    ex.glued_not_above = !ideal_leq(glue(m, ex.t2), g1);
    ex.glued_t1_rejected = !mi_check(m, g1).accepted;

    for (size_t k = 0; k < count; ++k) {
        auto rng = case_engine(seed, k);
        // Tail value >= 2 on the successors of (c, w), 1 at w, anything small below.
        const auto c = static_cast<uint64_t>(uniform_int(rng, 0, 6));
        const int64_t tail = uniform_int(rng, 2, 4);
        std::vector<IdealMap::Piece> pieces{{Cell{Ordinal(c), w, 0, 0u}, tail}};
        std::vector<IdealMap::Override> overrides{{w, 1}};
        for (uint64_t x = 0; x <= c; ++x) overrides.emplace_back(Ordinal(x), uniform_int(rng, 0, 3));
        auto v = IdealMap::from_pieces(space, pieces, overrides);
        const auto verdict = mi_check(m, v);
        if (!verdict.accepted) throw Error("generated map rejected: " + verdict.detail);
        OrderMismatchCase oc{v, Ordinal{}, false};
        if (auto y = domination_witness(v)) {
            oc.witness = *y;
            oc.dominates = ideal_leq(IdealMap::indicator(space, DefinableSet::of_points(w, {*y})), v);
        }
        ex.cases.push_back(std::move(oc));
    }
    return ex;
}

} // namespace adlab
