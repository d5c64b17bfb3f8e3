#include "adlab/colength.hpp"

#include "adlab/errors.hpp"

namespace adlab {

namespace {

void require_integral(const IdealMap& v) {
    if (!is_integral(v)) throw NotIntegral();
}

void require_space(const ColengthModel& cm, const IdealMap& v) {
    if (!same_space(cm.space, v.space())) throw SpaceMismatch("ideal and colength model on different spaces");
}

ExtNat meets(const DefinableSet& a, const DefinableSet& b) {
    return (a & b).is_empty() ? ExtNat::zero() : ExtNat::inf();
}

} // namespace

ColengthModel ColengthModel::make(Space space, DefinableSet delta) {
    if (!(delta.top() == space.top)) throw SpaceMismatch("delta over a different top");
    if (auto off = delta - space.carrier; !off.is_empty())
        throw ValidationError("delta-outside-carrier", std::nullopt, off.least_point()->to_string(),
                              "delta must lie in the carrier");
    return {std::move(space), std::move(delta)};
}

ExtNat colength(const ColengthModel& cm, const IdealMap& v) {
    require_integral(v);
    require_space(cm, v);
    return meets(v_set(v), cm.delta);
}

ExtNat colength_stage(const ColengthModel& cm, const DomainModel& m, size_t i, const IdealMap& v) {
    require_integral(v);
    require_space(cm, v);
    if (!same_space(cm.space, m.space())) throw SpaceMismatch("model and colength model on different spaces");
    if (i > m.last() + 1) throw PreconditionError("stage " + std::to_string(i) + " out of range");
    return meets(v_set(v), cm.delta & m.stage(i));
}

bool check_sum(const ColengthModel& cm, const IdealMap& v, const IdealMap& u) {
    return colength(cm, ideal_mul(v, u)) == colength(cm, v) + colength(cm, u);
}

bool check_potpan(const ColengthModel& cm, const IdealMap& v, const IdealMap& u, int64_t n) {
    require_integral(v);
    require_integral(u);
    if (n < 1) throw PreconditionError("exponent must be positive");
    if (!ideal_leq(v, u) || !ideal_leq(u, ideal_scale(v, n)))
        throw PreconditionError("need v <= u <= n v pointwise");
    return colength(cm, u) == colength(cm, v);
}

bool check_viomega(const ColengthModel& cm, const DomainModel& m, size_t i, const IdealMap& v) {
    require_integral(v);
    if (i > m.last() + 1) throw PreconditionError("stage " + std::to_string(i) + " out of range");
    if (!set_subset(v_set(v), m.stage(i))) throw PreconditionError("V(v) is not inside the stage");
    return colength(cm, v) == colength_stage(cm, m, i, v);
}

bool check_length_identity(const ColengthModel& cm, const DomainModel& m, size_t i,
                          const IdealMap& v) {
    // Both sides evaluated independently: the radical through its own map.
    const ExtNat lhs = colength(cm, v);
    const ExtNat rhs = colength(cm, radical(v)) + colength_stage(cm, m, i, v);
    return lhs == rhs;
}

} // namespace adlab
