#pragma once

#include "adlab/definable_set.hpp"
#include "adlab/domain_model.hpp"
#include "adlab/ideal_map.hpp"

#include <string>

namespace adlab {

/// The two values of a singular length function.
class ExtNat {
public:
    static ExtNat zero() { return ExtNat(false); }
    static ExtNat inf() { return ExtNat(true); }
    bool is_inf() const { return inf_; }
    std::string to_string() const { return inf_ ? "inf" : "0"; }
    friend ExtNat operator+(ExtNat a, ExtNat b) { return ExtNat(a.inf_ || b.inf_); }
    friend bool operator==(ExtNat a, ExtNat b) = default;
    friend bool operator<(ExtNat a, ExtNat b) { return !a.inf_ && b.inf_; }
    friend bool operator<=(ExtNat a, ExtNat b) { return !a.inf_ || b.inf_; }

private:
    explicit ExtNat(bool inf) : inf_(inf) {}
    bool inf_;
};

/// Length function determined by a set of points delta: tau(I) = 0 exactly
/// when V(I) misses delta.
struct ColengthModel {
    Space space;
    DefinableSet delta;
    /// Throws ValidationError when delta leaves the carrier.
    static ColengthModel make(Space space, DefinableSet delta);
};

/// Requires an integral map.
ExtNat colength(const ColengthModel& cm, const IdealMap& v);
/// Colength against delta & C_i; i may be one past the last stage.
ExtNat colength_stage(const ColengthModel& cm, const DomainModel& m, size_t i, const IdealMap& v);

/// tau(v + u) == tau(v) + tau(u).
bool check_sum(const ColengthModel& cm, const IdealMap& v, const IdealMap& u);
/// For v <= u <= n v pointwise: tau(u) == tau(v).
bool check_potpan(const ColengthModel& cm, const IdealMap& v, const IdealMap& u, int64_t n);
/// For v_set(v) inside C_i: tau(v) == tau at stage i.
bool check_viomega(const ColengthModel& cm, const DomainModel& m, size_t i, const IdealMap& v);
/// tau(v) == tau(radical(v)) + tau at stage i.
bool check_length_identity(const ColengthModel& cm, const DomainModel& m, size_t i,
                          const IdealMap& v);

} // namespace adlab
