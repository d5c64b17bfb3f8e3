#pragma once

#include "adlab/domain_model.hpp"
#include "adlab/errors.hpp"
#include "adlab/ideal_map.hpp"
#include "adlab/lattice.hpp"

#include <cstdint>
#include <optional>
#include <stop_token>
#include <vector>

namespace adlab {

/// Common refinement of a family of maps: the classes of points on which the
/// whole family takes one value vector (the all-zero class is left out),
/// ordered by least point.
struct AtomDecomposition {
    std::vector<DefinableSet> atoms;
    /// table[g][a]: value of generator g on atom a.
    std::vector<std::vector<int64_t>> table;
};

AtomDecomposition atom_decompose(const std::vector<IdealMap>& gens);

/// Basis of the subgroup generated by a family, in atom coordinates.
struct IntBasis {
    AtomDecomposition atoms;
    lattice::Matrix rows;
    size_t rank = 0;
    std::vector<lattice::Int> divisors;
};

IntBasis subgroup_basis(const std::vector<IdealMap>& gens, std::stop_token stop = {});
/// The map sum_a rows[k][a] * chi(atom a).
IdealMap basis_element(const IntBasis& b, const Space& space, size_t k);

struct MembershipResult {
    bool member = false;
    /// Integer coefficients over the generators when member.
    std::vector<lattice::Int> certificate;
};
MembershipResult subgroup_member(const std::vector<IdealMap>& gens, const IdealMap& h,
                                 std::stop_token stop = {});

/// One map per stratum S_i = C_i \ C_{i+1}: component i lives on the space with
/// carrier C_i and vanishes on C_{i+1}.
struct StratTuple {
    std::vector<IdealMap> components;
};

StratTuple tuple_add(const StratTuple& a, const StratTuple& b);
bool tuple_equal(const StratTuple& a, const StratTuple& b);
/// Componentwise pointwise order.
bool tuple_leq(const StratTuple& a, const StratTuple& b);
/// The zero tuple with `f` (a map on the full space) cut down to stratum i.
StratTuple tuple_on_stratum(const DomainModel& m, size_t i, const IdealMap& f);

class UnglueError : public Error {
public:
    UnglueError(size_t stratum, DefinableSet witness)
        : Error("map is not continuous on stratum " + std::to_string(stratum) + " at " +
                witness.to_string()),
          stratum_(stratum), witness_(std::move(witness)) {}
    size_t stratum() const { return stratum_; }
    const DefinableSet& witness() const { return witness_; }

private:
    size_t stratum_;
    DefinableSet witness_;
};

/// Extension by zero: glue(t)(x) = t_i(x) for x in S_i. Requires a scattered
/// model and components that are continuous on their strata.
IdealMap glue(const DomainModel& m, const StratTuple& t);
/// Restriction to each stratum; throws UnglueError when a restriction is not
/// continuous on its stratum.
StratTuple unglue(const DomainModel& m, const IdealMap& v);

/// Kernel of span(gens) -> maps on C_i, by restriction.
IntBasis kernel_of_restriction(const DomainModel& m, const std::vector<IdealMap>& gens,
                               size_t stage, std::stop_token stop = {});

struct ExactnessReport {
    size_t stage = 0;
    size_t total_rank = 0;
    size_t kernel_rank = 0;
    size_t image_rank = 0;
    bool additive = false;
    /// Invariant factors of span / kernel.
    std::vector<lattice::Int> quotient_divisors;
    bool torsion_free = false;
    /// Kernel equals the elements of the span vanishing on C_i, computed by
    /// echelon form with the C_i columns first.
    bool kernel_matches_vanishing = false;
    bool ok() const { return additive && torsion_free && kernel_matches_vanishing; }
};
ExactnessReport exactness_report(const DomainModel& m, const std::vector<IdealMap>& gens,
                                 size_t stage, std::stop_token stop = {});

struct SigmaRReport {
    size_t total_rank = 0;
    /// Generators' span elements vanishing on C_1.
    size_t avoiding_rank = 0;
    /// Rank of the restrictions to C_1; equals the quotient rank.
    size_t image_rank = 0;
    size_t quotient_rank = 0;
    std::vector<lattice::Int> quotient_divisors;
    bool torsion_free = false;
    /// |C_1| when finite.
    std::optional<size_t> critical_points;
    /// Rank reached by the extension generators chi((prev, c]) for c in C_1.
    std::optional<size_t> achievable_rank;
    bool ok() const {
        return torsion_free && image_rank == quotient_rank &&
               (!critical_points || achievable_rank == critical_points);
    }
};
/// Generators must be continuous (PreconditionError otherwise).
SigmaRReport sigma_r_report(const DomainModel& m, const std::vector<IdealMap>& gens,
                            std::stop_token stop = {});

struct OrderMismatchCase {
    IdealMap v;
    Ordinal witness;  // isolated y with v(y) >= 2, so v >= chi({y})
    bool dominates = false;
};

struct OrderMismatchExhibit {
    StratTuple t1;  // (0, chi({w}))
    StratTuple t2;  // (chi({y}), 0)
    bool incomparable = false;
    bool glued_not_above = false;  // glue(t1) >= glue(t2) fails pointwise
    bool glued_t1_rejected = false;
    std::vector<OrderMismatchCase> cases;
    bool ok() const;
};
/// Least isolated point y of the carrier with v(y) >= 2.
std::optional<Ordinal> domination_witness(const IdealMap& v);
/// Requires the sharp model on [0, w].
OrderMismatchExhibit order_mismatch_demo(const DomainModel& m, uint64_t seed, size_t count = 50);

} // namespace adlab
