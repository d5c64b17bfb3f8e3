#pragma once

#include "adlab/definable_set.hpp"
#include "adlab/ideal_map.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace adlab {

/// What follows the last listed stage: the empty set, or the last stage again.
enum class Terminal { empty, stalled };

std::string to_string(Terminal t);

/// A space together with a decreasing chain C_0 = carrier > C_1 > ... > C_m of
/// closed sets standing for the successive critical loci.
///
/// Instances only come out of the model_* constructors, which validate.
class DomainModel {
public:
    const Space& space() const { return space_; }
    const std::vector<DefinableSet>& chain() const { return chain_; }
    Terminal terminal() const { return terminal_; }
    /// Index of the last listed stage.
    size_t last() const { return chain_.size() - 1; }
    /// C_i for i <= last() + 1; the stage after the last is implicit.
    DefinableSet stage(size_t i) const;

private:
    friend DomainModel make_model(Space, std::vector<DefinableSet>, Terminal);
    Space space_;
    std::vector<DefinableSet> chain_;
    Terminal terminal_ = Terminal::empty;
};

/// C_{i+1} = derived_in(C_i, C_i) down to the empty set.
DomainModel model_sharp(const Space& space);
/// No critical points: chain [carrier], terminal empty.
DomainModel model_sp(const Space& space);
/// Validates and canonicalizes (a trailing empty stage is dropped and the
/// terminal set to empty). Throws ValidationError with conditions
/// "first-stage-not-carrier", "non-closed-stage", "containment" or
/// "non-strict-decrease"; the witness is the least offending point.
DomainModel model_custom(const Space& space, std::vector<DefinableSet> chain,
                         Terminal terminal = Terminal::empty);

/// Where the chain stabilizes: last() + 1 counting the step to the empty set
/// for scattered models, last() for stalled ones.
uint32_t sp_rank(const DomainModel& m);
bool is_sp_scattered(const DomainModel& m);
/// S_i = C_i \ C_{i+1}, one per listed stage.
std::vector<DefinableSet> strata(const DomainModel& m);
bool is_sp_domain(const DomainModel& m);

/// Space C_i with chain [C_i, ..., C_m].
DomainModel model_tail(const DomainModel& m, size_t i);

struct CritEquivReport {
    bool continuous = false;          // v locally constant on the carrier
    bool avoids_critical = false;     // v_set(v) meets no point of C_1
    bool radical_invertible = false;  // v_set(v) clopen and compact, and avoids C_1
    bool agree = false;
    std::optional<Ordinal> witness;   // set when the conditions disagree
};
/// Requires an integral map.
CritEquivReport continuity_crit_equiv(const DomainModel& m, const IdealMap& v);

struct MiVerdict {
    bool accepted = true;
    char condition = 0;  // 'a'..'e' on rejection
    size_t stage = 0;
    std::optional<Ordinal> witness;
    std::string detail;
};
/// Necessary conditions for v to be the valuation map of an invertible ideal
/// of a ring with critical chain m. Requires v integral and m scattered
/// (PreconditionError otherwise). Stages are checked in order, conditions
/// (a) to (e) within a stage; the first failure is reported.
MiVerdict mi_check(const DomainModel& m, const IdealMap& v);

} // namespace adlab
