#pragma once

// Seeded generators for the property suites. Every generator takes the
// engine by reference; a suite derives one engine per case from (seed, case
// index) so results do not depend on execution order.

#include "adlab/definable_set.hpp"
#include "adlab/domain_model.hpp"
#include "adlab/ideal_map.hpp"
#include "adlab/ordinal.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace adlab {

using Engine = std::mt19937_64;

Engine case_engine(uint64_t seed, uint64_t case_index);

int64_t uniform_int(Engine& rng, int64_t lo, int64_t hi);

/// Random ordinal <= top with coefficients <= max_coef.
Ordinal random_ordinal(Engine& rng, const Ordinal& top, uint64_t max_coef = 6);
/// Random top in [1, w^3*2].
Ordinal random_top(Engine& rng, uint32_t max_exponent = 3);
Cell random_cell(Engine& rng, const Ordinal& top);
std::vector<Cell> random_cells(Engine& rng, const Ordinal& top, size_t max_cells);
/// (lo, hi] or [0, hi] with random endpoints; always clopen.
Cell random_interval(Engine& rng, const Ordinal& top);
/// The full interval half of the time, otherwise the closure of random cells.
Space random_space(Engine& rng, const Ordinal& top);

/// A valid critical chain: each stage a nonempty closed part of the previous derived set.
std::vector<DefinableSet> random_chain(Engine& rng, const Space& space);
DomainModel random_model(Engine& rng, const Space& space, bool allow_stalled = false);

/// Integral map built stage by stage so that the realism conditions have a
/// fair chance to hold. At critical points the value jumps up from its
/// surroundings (`upward`) or down; maps of one direction model ideals of a
/// single ring, whose jumps at a critical point are all multiples of one jump.
IdealMap random_mi_candidate(Engine& rng, const DomainModel& m, bool upward = true);
/// First candidate accepted by mi_check, or nullopt after `tries` rejections.
std::optional<IdealMap> random_mi_accepted(Engine& rng, const DomainModel& m, bool upward = true,
                                           int tries = 50);

/// Arbitrary finitely described map: up to max_pieces cells (made disjoint by
/// painting order) plus a few overrides, values in [vmin, vmax].
IdealMap random_ideal(Engine& rng, const Space& space, size_t max_pieces = 12, int64_t vmin = -5,
                      int64_t vmax = 5);
/// Continuous map with values in [0, vmax]: a nonnegative combination of clopen intervals.
IdealMap random_continuous_integral(Engine& rng, const Space& space, size_t max_pieces = 6,
                                    int64_t vmax = 5);
/// Continuous map with values in [vmin, vmax].
IdealMap random_continuous(Engine& rng, const Space& space, size_t max_pieces = 6,
                           int64_t vmin = -5, int64_t vmax = 5);
/// Integral map that may fail continuity at limit points.
IdealMap random_integral(Engine& rng, const Space& space, size_t max_pieces = 8, int64_t vmax = 5);

} // namespace adlab
