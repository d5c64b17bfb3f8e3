#include "adlab/suites.hpp"

#include "adlab/colength.hpp"
#include "adlab/domain_model.hpp"
#include "adlab/errors.hpp"
#include "adlab/group_lab.hpp"
#include "adlab/random.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <thread>

namespace adlab {

namespace {

struct Outcome {
    enum Kind { pass, skip, fail } kind = pass;
    std::string witness;
};

Outcome failed(std::string w) { return {Outcome::fail, std::move(w)}; }
Outcome skipped() { return {Outcome::skip, {}}; }

using CaseFn = std::function<Outcome(Engine&)>;

std::vector<Ordinal> test_points(const std::vector<const IdealMap*>& maps) {
    std::vector<DefinableSet> family;
    for (const auto* m : maps) {
        family.push_back(m->space().carrier);
        for (const auto& l : level_sets(*m)) family.push_back(l);
    }
    std::vector<Ordinal> out;
    for (const auto& x : canonical_test_points(maps[0]->space().top, family))
        if (maps[0]->space().carrier.contains(x)) out.push_back(x);
    return out;
}

Outcome nu_laws(Engine& rng) {
    const auto s = Space::interval(Ordinal::omega_pow(2));
    const auto v = random_ideal(rng, s);
    const auto u = random_ideal(rng, s);
    const auto mul = ideal_mul(v, u), inv = ideal_inv(v), sum = ideal_sum(v, u), cap = ideal_cap(v, u);
    bool pointwise_leq = true;
    for (const auto& x : test_points({&v, &u})) {
        const int64_t a = v.at(x), b = u.at(x);
        auto check = [&](const char* what, int64_t got, int64_t want) -> std::optional<Outcome> {
            if (got == want) return std::nullopt;
            return failed(std::string(what) + " at " + x.to_string() + ": " + std::to_string(got) +
                          " != " + std::to_string(want));
        };
        if (auto f = check("mul", mul.at(x), a + b)) return *f;
        if (auto f = check("inv", inv.at(x), -a)) return *f;
        if (auto f = check("sum", sum.at(x), std::min(a, b))) return *f;
        if (auto f = check("cap", cap.at(x), std::max(a, b))) return *f;
        pointwise_leq = pointwise_leq && a <= b;
    }
    if (ideal_leq(v, u) != pointwise_leq) return failed("leq disagrees with pointwise order");
    if (!ideal_equal(ideal_mul(mul, ideal_inv(u)), v)) return failed("mul by inverse does not cancel");
    return {};
}

Outcome factor_roundtrip(Engine& rng) {
    const auto s = random_space(rng, random_top(rng, 3));
    const auto v = random_continuous_integral(rng, s, 6, 5);
    const auto factors = radical_factor(v);
    if (!ideal_equal(radical_recompose(factors, s), v)) return failed("recompose differs: " + v.to_string());
    for (size_t n = 0; n < factors.size(); ++n) {
        if (factors[n].is_empty()) return failed("empty factor " + std::to_string(n + 1));
        if (n > 0 && !set_subset(factors[n], factors[n - 1]))
            return failed("factor " + std::to_string(n + 1) + " not inside its predecessor");
        if (!(factors[n] == at_least(v, static_cast<int64_t>(n) + 1)))
            return failed("factor " + std::to_string(n + 1) + " is not a level set");
    }
    if (static_cast<int64_t>(factors.size()) != std::max<int64_t>(v.max_value(), 0))
        return failed("wrong number of factors");
    return {};
}

bool factors_ok(const IdealMap& v) {
    try {
        const auto split = pos_neg_split(v);
        radical_factor(split.positive);
        radical_factor(split.negative);
        return true;
    } catch (const NotContinuous&) {
        return false;
    }
}

Outcome continuity(Engine& rng) {
    const auto s = random_space(rng, random_top(rng, 3));
    const auto v = uniform_int(rng, 0, 1) ? random_ideal(rng, s) : random_continuous(rng, s);
    const bool a = discontinuity_set(v).is_empty();
    const bool b = level_sets_clopen(v);
    const bool c = factors_ok(v);
    if (a != b || b != c)
        return failed("local constancy " + std::to_string(a) + ", clopen levels " + std::to_string(b) +
                      ", factorization " + std::to_string(c) + " for " + v.to_string());
    return {};
}

Outcome noncompsupp(Engine& rng) {
    // Nonzero on the successors of (c, w), zero at w.
    const Ordinal w = Ordinal::omega_pow(1);
    const auto s = Space::interval(w);
    const auto c = static_cast<uint64_t>(uniform_int(rng, 0, 9));
    int64_t value = uniform_int(rng, -3, 3);
    if (value == 0) value = 1;
    const auto v = IdealMap::from_pieces(s, {{Cell{Ordinal(c), w, 0, 0u}, value}});
    if (!zero_set(v).contains(w)) return failed("w not in the zero set");
    if (!support(v).contains(w)) return failed("w not in the support");
    if (is_continuous(v)) return failed("map reported continuous");
    if (!is_compact(support(v))) return failed("support not compact");
    return {};
}

Outcome chains(Engine& rng) {
    const auto s = random_space(rng, random_top(rng, 3));
    auto chain = random_chain(rng, s);
    try {
        model_custom(s, chain);
    } catch (const ValidationError& e) {
        return failed(std::string("valid chain rejected: ") + e.what());
    }
    const size_t k = static_cast<size_t>(uniform_int(rng, 0, static_cast<int64_t>(chain.size()) - 1));
    std::string condition;
    Ordinal witness;
    if (uniform_int(rng, 0, 1) == 0) {
        const auto p = isolated_points(chain[k]).least_point();
        if (!p) return skipped();
        const auto extra = DefinableSet::of_points(s.top, {*p});
        if (k + 1 < chain.size()) chain[k + 1] = chain[k + 1] | extra;
        else chain.push_back(extra);
        condition = "containment";
        witness = *p;
    } else {
        if (k == 0) return skipped();
        const auto q = derived(chain[k]).least_point();
        if (!q) return skipped();
        chain[k] = chain[k] - DefinableSet::of_points(s.top, {*q});
        condition = "non-closed-stage";
        witness = *q;
    }
    try {
        model_custom(s, chain);
        return failed("invalid chain accepted (" + condition + " at " + witness.to_string() + ")");
    } catch (const ValidationError& e) {
        if (e.condition() != condition) return failed("condition " + e.condition() + ", expected " + condition);
        if (e.witness() != witness.to_string())
            return failed("witness " + e.witness() + ", expected " + witness.to_string());
    }
    return {};
}

Outcome sp_scattered(Engine& rng) {
    const auto k = static_cast<uint32_t>(uniform_int(rng, 0, 4));
    const auto top = k == 0 ? Ordinal(static_cast<uint64_t>(uniform_int(rng, 0, 5)))
                            : Ordinal::omega_pow(k, static_cast<uint64_t>(uniform_int(rng, 1, 2)));
    const auto m = model_sharp(Space::interval(top));
    if (sp_rank(m) != k + 1 || cb_rank(m.space().carrier) != k + 1 || !is_sp_scattered(m))
        return failed("interval " + top.to_string() + ": sp_rank " + std::to_string(sp_rank(m)));
    const auto s = random_space(rng, random_top(rng, 3));
    const auto r = model_sharp(s);
    if (sp_rank(r) != cb_rank(s.carrier)) return failed("sp_rank differs from cb_rank on " + s.carrier.to_string());
    auto st = strata(r);
    DefinableSet all(s.top);
    for (const auto& x : st) {
        if (!(all & x).is_empty()) return failed("strata overlap");
        all = all | x;
    }
    if (!(all == s.carrier)) return failed("strata do not cover the carrier");
    return {};
}

std::vector<IdealMap> random_gens(Engine& rng, const Space& s, int64_t max_count, bool continuous) {
    std::vector<IdealMap> gens;
    const auto n = uniform_int(rng, 1, max_count);
    for (int64_t i = 0; i < n; ++i)
        gens.push_back(continuous ? random_continuous(rng, s, 4, -3, 3) : random_integral(rng, s, 4, 3));
    return gens;
}

Outcome exactness(Engine& rng) {
    const auto s = Space::interval(Ordinal::omega_pow(static_cast<uint32_t>(uniform_int(rng, 1, 2))));
    const auto m = model_sharp(s);
    const auto gens = random_gens(rng, s, 5, false);
    for (size_t i = 0; i <= m.last() + 1; ++i) {
        const auto r = exactness_report(m, gens, i);
        if (!r.ok())
            return failed("stage " + std::to_string(i) + ": total " + std::to_string(r.total_rank) + ", kernel " +
                          std::to_string(r.kernel_rank) + ", image " + std::to_string(r.image_rank));
    }
    return {};
}

Outcome stratified(Engine& rng) {
    const auto s = Space::interval(Ordinal::omega_pow(2));
    const auto m = model_sharp(s);
    const auto st = strata(m);
    // Each tuple lives on one stratum.
    std::vector<StratTuple> tuples;
    std::vector<std::vector<IdealMap>> per_stratum(st.size());
    const auto n = uniform_int(rng, 2, 6);
    for (int64_t k = 0; k < n; ++k) {
        const auto i = static_cast<size_t>(uniform_int(rng, 0, static_cast<int64_t>(m.last())));
        const auto sub = Space::with_carrier(s.top, m.stage(i));
        auto t = tuple_on_stratum(m, i, IdealMap(s));
        t.components[i] = ideal_mask(random_continuous(rng, sub, 4, -3, 3), st[i]);
        per_stratum[i].push_back(t.components[i]);
        tuples.push_back(std::move(t));
    }
    std::vector<IdealMap> glued;
    for (const auto& t : tuples) {
        glued.push_back(glue(m, t));
        if (!tuple_equal(unglue(m, glued.back()), t)) return failed("unglue(glue(t)) != t");
    }
    if (!ideal_equal(glue(m, tuple_add(tuples[0], tuples[1])), ideal_mul(glued[0], glued[1])))
        return failed("glue is not additive");
    size_t parts = 0;
    for (const auto& g : per_stratum)
        if (!g.empty()) parts += subgroup_basis(g).rank;
    const auto whole = subgroup_basis(glued);
    if (whole.rank != parts)
        return failed("glued rank " + std::to_string(whole.rank) + ", stratum ranks " + std::to_string(parts));
    for (size_t i = 0; i <= m.last() + 1; ++i) {
        const auto r = exactness_report(m, glued, i);
        if (!r.torsion_free) return failed("quotient with torsion at stage " + std::to_string(i));
    }
    return {};
}

Outcome sigma_r(Engine& rng) {
    const auto s = Space::interval(Ordinal::omega_pow(static_cast<uint32_t>(uniform_int(rng, 1, 2))));
    auto gens = random_gens(rng, s, 4, true);
    const auto sp = sigma_r_report(model_sp(s), gens);
    if (sp.quotient_rank != 0 || sp.image_rank != 0) return failed("sp model with nonzero quotient");
    if (!sp.torsion_free) return failed("sp quotient with torsion");
    const auto m = model_sharp(s);
    // Something nonzero at the top keeps the restriction image nontrivial.
    gens.push_back(IdealMap::indicator(s, DefinableSet::interval(s.top, Ordinal(3), s.top)));
    const auto r = sigma_r_report(m, gens);
    if (!r.ok()) return failed("report not verified");
    if (r.image_rank != r.quotient_rank) return failed("image rank differs from quotient rank");
    if (s.top == Ordinal::omega_pow(1) && r.image_rank != 1) return failed("image rank on [0,w] is not 1");
    return {};
}

Outcome mi_closure(Engine& rng) {
    const auto m = model_sharp(Space::interval(Ordinal::omega_pow(static_cast<uint32_t>(uniform_int(rng, 1, 2)))));
    const bool upward = uniform_int(rng, 0, 1) == 1;
    const auto a = random_mi_accepted(rng, m, upward);
    const auto b = random_mi_accepted(rng, m, upward);
    if (!a || !b) return skipped();
    const auto verdict = mi_check(m, ideal_mul(*a, *b));
    if (!verdict.accepted)
        return failed(std::string("product rejected by (") + verdict.condition + ") at stage " +
                      std::to_string(verdict.stage));
    const auto eq = continuity_crit_equiv(m, *a);
    if (!eq.agree) return failed("continuity and criticality disagree");
    return {};
}

Outcome length_identities(Engine& rng) {
    const auto s = Space::interval(random_top(rng, 3));
    const auto m = model_sharp(s);
    auto delta = set_closure(DefinableSet::of_cells(s.top, random_cells(rng, s.top, 3)));
    if (uniform_int(rng, 0, 3) == 0) delta = m.stage(m.last());
    const auto cm = ColengthModel::make(s, delta);
    const auto v = random_integral(rng, s, 5, 3);
    const auto u = random_integral(rng, s, 5, 3);
    const auto i = static_cast<size_t>(uniform_int(rng, 0, static_cast<int64_t>(m.last()) + 1));
    const auto n = uniform_int(rng, 1, 3);
    // n v >= between >= v.
    const auto between = ideal_cap(v, ideal_sum(ideal_scale(v, n), random_integral(rng, s, 5, 5)));
    if (!check_sum(cm, v, u)) return failed("sum identity");
    if (!check_potpan(cm, v, between, n)) return failed("power sandwich identity");
    if (!check_viomega(cm, m, i, ideal_mask(v, m.stage(i)))) return failed("stage restriction identity");
    if (!check_length_identity(cm, m, i, v)) return failed("length identity at stage " + std::to_string(i));
    if (!(colength(cm, v) == colength(cm, radical(v)))) return failed("tau differs from tau of the radical");
    return {};
}

Outcome order_mismatch(Engine& rng) {
    const auto m = model_sharp(Space::interval(Ordinal::omega_pow(1)));
    const auto ex = order_mismatch_demo(m, rng(), 5);
    if (!ex.ok()) return failed("exhibit not verified");
    return {};
}

const std::map<std::string, CaseFn>& registry() {
    static const std::map<std::string, CaseFn> r{
        {"nu-laws", nu_laws},
        {"factor-roundtrip", factor_roundtrip},
        {"continuity", continuity},
        {"noncompsupp", noncompsupp},
        {"chains", chains},
        {"sp-scattered", sp_scattered},
        {"stratified", stratified},
        {"exactness", exactness},
        {"sigma-r", sigma_r},
        {"mi-check", mi_closure},
        {"length-identities", length_identities},
        {"order-mismatch", order_mismatch},
    };
    return r;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

bool is_suite(const std::string& name) { return registry().contains(name); }

SuiteReport run_suite(const std::string& name, uint64_t seed, size_t count, unsigned threads) {
    auto it = registry().find(name);
    if (it == registry().end()) throw PreconditionError("unknown suite '" + name + "'");
    if (count == 0) throw PreconditionError("case count must be at least 1");
    const auto& fn = it->second;

    std::vector<Outcome> results(count);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < count; i = next++) {
            auto rng = case_engine(seed, i);
            try {
                results[i] = fn(rng);
            } catch (const std::exception& e) {
                results[i] = failed(std::string("exception: ") + e.what());
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<size_t>(threads, count));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    SuiteReport r;
    r.name = name;
    r.seed = seed;
    r.cases = count;
    for (size_t i = 0; i < count; ++i) {
        if (results[i].kind == Outcome::skip) ++r.skipped;
        if (results[i].kind == Outcome::fail) r.failures.push_back({i, results[i].witness});
    }
    return r;
}

} // namespace adlab
