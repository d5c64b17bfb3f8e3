#pragma once

#include "adlab/definable_set.hpp"
#include "adlab/errors.hpp"
#include "adlab/step_map.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace adlab {

/// The valuation map of a fractional ideal: a finitely described integer
/// function on a compact ordinal space, zero outside the carrier.
///
/// Built from disjoint (cell, value) pieces with point overrides layered on
/// top; stored normalized, so two descriptions of the same function compare
/// equal and render identically.
class IdealMap {
public:
    struct Piece {
        Cell cell;
        int64_t value = 0;
    };
    using Override = std::pair<Ordinal, int64_t>;

    IdealMap() = default;
    /// The zero map (the unit ideal).
    explicit IdealMap(Space space);

    /// Throws ValidationError on overlapping pieces or pieces/overrides outside the carrier.
    static IdealMap from_pieces(Space space, const std::vector<Piece>& pieces,
                                const std::vector<Override>& overrides = {});
    /// value * characteristic function of `set` (which must lie in the carrier).
    static IdealMap indicator(Space space, const DefinableSet& set, int64_t value = 1);

    const Space& space() const { return space_; }
    /// Throws PreconditionError for points outside the carrier.
    int64_t at(const Ordinal& x) const;

    /// Canonical description: pieces on non-singleton cells, overrides for points.
    std::vector<Piece> pieces() const;
    std::vector<Override> overrides() const;
    std::string to_string() const;

    /// Distinct values taken on the carrier, ascending.
    std::vector<int64_t> range() const;
    int64_t max_value() const;
    int64_t min_value() const;

    const detail::StepMap<int64_t>& map() const { return map_; }
    IdealMap(Space space, detail::StepMap<int64_t> m);

private:
    Space space_;
    detail::StepMap<int64_t> map_;
};

class NotIntegral : public PreconditionError {
public:
    NotIntegral() : PreconditionError("ideal map is not integral (takes negative values)") {}
};

/// Factorization failure; `witness` is the boundary of the least level set
/// {v >= n} that is not clopen.
class NotContinuous : public Error {
public:
    NotContinuous(DefinableSet witness, int64_t level)
        : Error("ideal map is not continuous; level " + std::to_string(level) +
                " is not clopen, boundary " + witness.to_string()),
          witness_(std::move(witness)), level_(level) {}
    const DefinableSet& witness() const { return witness_; }
    int64_t level() const { return level_; }

private:
    DefinableSet witness_;
    int64_t level_;
};

int64_t ideal_value(const IdealMap& v, const Ordinal& x);
/// Decided by evaluation on the canonical test points of both descriptions.
bool ideal_equal(const IdealMap& v, const IdealMap& u);
/// Pointwise v <= u, i.e. the ideal of v contains the ideal of u.
bool ideal_leq(const IdealMap& v, const IdealMap& u);

/// Product of ideals: pointwise sum.
IdealMap ideal_mul(const IdealMap& v, const IdealMap& u);
/// Fractional inverse: pointwise negation.
IdealMap ideal_inv(const IdealMap& v);
/// The ideal I + J: pointwise minimum.
IdealMap ideal_sum(const IdealMap& v, const IdealMap& u);
/// The ideal I n J: pointwise maximum.
IdealMap ideal_cap(const IdealMap& v, const IdealMap& u);
/// v on `set`, zero elsewhere (same space).
IdealMap ideal_mask(const IdealMap& v, const DefinableSet& set);
IdealMap ideal_scale(const IdealMap& v, int64_t k);

/// {x in carrier : v(x) == value}.
DefinableSet level_set(const IdealMap& v, int64_t value);
/// {x in carrier : v(x) >= n}.
DefinableSet at_least(const IdealMap& v, int64_t n);
std::vector<DefinableSet> level_sets(const IdealMap& v);

DefinableSet zero_set(const IdealMap& v);
/// Closure of the nonzero set.
DefinableSet support(const IdealMap& v);
/// {x : v(x) >= 1}.
DefinableSet v_set(const IdealMap& v);

bool is_integral(const IdealMap& v);
bool is_radical(const IdealMap& v);
/// Characteristic map of v_set; throws NotIntegral.
IdealMap radical(const IdealMap& v);

/// Points of `subspace` at which v restricted to `subspace` is not locally constant.
DefinableSet discontinuity_set_in(const IdealMap& v, const DefinableSet& subspace);
DefinableSet discontinuity_set(const IdealMap& v);
bool is_continuous(const IdealMap& v);
bool is_continuous_on(const IdealMap& v, const DefinableSet& subspace);
/// Every level set clopen in the carrier.
bool level_sets_clopen(const IdealMap& v);

struct PosNegSplit {
    IdealMap positive; // max(v, 0)
    IdealMap negative; // max(-v, 0)
};
PosNegSplit pos_neg_split(const IdealMap& v);

/// X_1 >= X_2 >= ... >= X_k with X_n = {v >= n}, k = max v.
/// Throws NotIntegral or NotContinuous.
std::vector<DefinableSet> radical_factor(const IdealMap& v);
/// Sum of characteristic maps; each factor must be clopen in the carrier.
IdealMap radical_recompose(const std::vector<DefinableSet>& factors, const Space& space);

/// Pointwise restriction to the closed subspace `c` (the result lives on carrier c).
IdealMap restrict_ideal(const IdealMap& v, const DefinableSet& c);

} // namespace adlab
