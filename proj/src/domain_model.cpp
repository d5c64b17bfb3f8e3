#include "adlab/domain_model.hpp"

#include "adlab/errors.hpp"

namespace adlab {

namespace {

std::string least(const DefinableSet& s) {
    auto p = s.least_point();
    return p ? p->to_string() : std::string("-");
}

[[noreturn]] void reject(const std::string& condition, size_t stage, const DefinableSet& offending,
                         const std::string& detail) {
    throw ValidationError(condition, static_cast<int>(stage), least(offending), detail);
}

} // namespace

DomainModel make_model(Space space, std::vector<DefinableSet> chain, Terminal terminal);

std::string to_string(Terminal t) { return t == Terminal::empty ? "empty" : "stalled"; }

DefinableSet DomainModel::stage(size_t i) const {
    if (i < chain_.size()) return chain_[i];
    if (i == chain_.size())
        return terminal_ == Terminal::empty ? DefinableSet(space_.top) : chain_.back();
    throw PreconditionError("stage " + std::to_string(i) + " beyond the chain");
}

DomainModel make_model(Space space, std::vector<DefinableSet> chain, Terminal terminal) {
    DomainModel m;
    m.space_ = std::move(space);
    m.chain_ = std::move(chain);
    m.terminal_ = terminal;
    return m;
}

DomainModel model_sharp(const Space& space) {
    auto chain = cb_chain(space.carrier);
    chain.pop_back();
    return make_model(space, std::move(chain), Terminal::empty);
}

DomainModel model_sp(const Space& space) {
    return make_model(space, {space.carrier}, Terminal::empty);
}

DomainModel model_custom(const Space& space, std::vector<DefinableSet> chain, Terminal terminal) {
    if (chain.empty()) throw ValidationError("empty-chain", std::nullopt, "-", "chain has no stages");
    for (const auto& c : chain)
        if (!(c.top() == space.top)) throw SpaceMismatch("chain stage over a different top");
    if (chain.size() > 1 && chain.back().is_empty()) {
        chain.pop_back();
        terminal = Terminal::empty;
    }
    if (!(chain[0] == space.carrier))
        reject("first-stage-not-carrier", 0, (chain[0] - space.carrier) | (space.carrier - chain[0]),
               "stage 0 must equal the carrier");
    for (size_t i = 1; i < chain.size(); ++i) {
        const auto& prev = chain[i - 1];
        const auto& cur = chain[i];
        if (!is_compact(cur))
            reject("non-closed-stage", i, derived(cur) - cur,
                   "stage " + std::to_string(i) + " is not closed");
        if (!set_subset(cur, derived(prev)))
            reject("containment", i, cur - derived(prev),
                   "stage " + std::to_string(i) + " contains points isolated in stage " +
                       std::to_string(i - 1));
        if (cur == prev)
            reject("non-strict-decrease", i, cur,
                   "stage " + std::to_string(i) + " equals stage " + std::to_string(i - 1));
    }
    return make_model(space, std::move(chain), terminal);
}

uint32_t sp_rank(const DomainModel& m) {
    const auto n = static_cast<uint32_t>(m.chain().size());
    return m.terminal() == Terminal::empty ? n : n - 1;
}

bool is_sp_scattered(const DomainModel& m) { return m.terminal() == Terminal::empty; }

std::vector<DefinableSet> strata(const DomainModel& m) {
    std::vector<DefinableSet> out;
    for (size_t i = 0; i <= m.last(); ++i) out.push_back(m.stage(i) - m.stage(i + 1));
    return out;
}

bool is_sp_domain(const DomainModel& m) {
    return m.terminal() == Terminal::empty && m.chain().size() == 1;
}

DomainModel model_tail(const DomainModel& m, size_t i) {
    if (i > m.last()) throw PreconditionError("tail index beyond the last stage");
    std::vector<DefinableSet> chain(m.chain().begin() + static_cast<std::ptrdiff_t>(i),
                                    m.chain().end());
    auto space = Space::with_carrier(m.space().top, chain[0]);
    return make_model(std::move(space), std::move(chain), m.terminal());
}

CritEquivReport continuity_crit_equiv(const DomainModel& m, const IdealMap& v) {
    if (!is_integral(v)) throw NotIntegral();
    CritEquivReport r;
    const auto disc = discontinuity_set(v);
    const auto vs = v_set(v);
    const auto hit = vs & m.stage(1);
    r.continuous = disc.is_empty();
    r.avoids_critical = hit.is_empty();
    r.radical_invertible = r.avoids_critical && is_clopen_in(vs, m.space().carrier) && is_compact(vs);
    r.agree = r.continuous == r.avoids_critical && r.avoids_critical == r.radical_invertible;
    if (!r.agree) {
        if (r.continuous) r.witness = hit.least_point();
        else r.witness = disc.least_point();
    }
    return r;
}

MiVerdict mi_check(const DomainModel& m, const IdealMap& v) {
    if (!is_integral(v)) throw NotIntegral();
    if (!is_sp_scattered(m)) throw PreconditionError("mi_check needs a scattered model");
    if (!same_space(m.space(), v.space())) throw SpaceMismatch("ideal and model on different spaces");

    auto fail = [](char c, size_t i, const DefinableSet& offending, std::string detail) {
        MiVerdict r;
        r.accepted = false;
        r.condition = c;
        r.stage = i;
        r.witness = offending.least_point();
        r.detail = std::move(detail);
        return r;
    };

    const auto supp = support(v);
    if (!is_compact(supp)) return fail('a', 0, derived(supp) - supp, "support is not compact");

    const auto vs = v_set(v);
    const auto twos = at_least(v, 2);
    for (size_t i = 0; i <= m.last(); ++i) {
        const auto ci = m.stage(i);
        const auto next = m.stage(i + 1);
        const auto b = vs & ci;
        if (!is_clopen_in(b, ci) || !is_compact(b)) {
            const auto rest = ci - b;
            return fail('b', i, (derived(rest) & b) | (derived(b) & rest),
                        "{v >= 1} is not clopen in the stage");
        }
        const auto disc = discontinuity_set_in(v, ci);
        if (auto off = disc - next; !off.is_empty())
            return fail('c', i, off, "v is not locally constant on the stratum");
        const auto hit = vs & next;
        if (!hit.is_empty() && (twos & ci).is_empty())
            return fail('d', i, hit, "critical point with value >= 1 but no value >= 2 in the stage");
        if (disc.is_empty() && !hit.is_empty())
            return fail('e', i, hit, "v is continuous on the stage yet meets the next stage");
    }
    return {};
}

} // namespace adlab
