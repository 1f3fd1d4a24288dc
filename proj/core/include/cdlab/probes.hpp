#pragma once

#include <optional>
#include <vector>

#include "cdlab/shifts.hpp"

namespace cdlab {

/// Open ball in the ambient space.
struct Ball {
  SeqVector center;
  double radius = 1.0;
  SpaceSpec space;
};

/// A transitivity witness: at time n, z lies inside the source ball and its
/// scaled orbit points land inside each target ball. distances[0] is the
/// source distance, distances[l] the member-l target distance.
struct ProbeWitness {
  std::int64_t n = 1;
  SeqVector z;
  std::vector<double> distances;
};

struct TransitivityResult {
  std::optional<ProbeWitness> witness;
  std::int64_t n_max = 0;

  bool found() const { return witness.has_value(); }
};

/// Both halves of a blow-up/collapse witness at time m: `near_zero` is the
/// blow-up witness (small vector whose orbit points hit the target balls),
/// `near_v0` the collapse witness (a V0 vector whose orbit points fall into
/// the zero ball).
struct BlowUpCollapseWitness {
  std::int64_t m = 1;
  SeqVector near_zero;
  std::vector<double> blow_up_distances;  // [w norm, per-member target distances]
  SeqVector near_v0;
  std::vector<double> collapse_distances;  // [distance to V0 center, per-member norms]
};

struct BlowUpCollapseResult {
  std::optional<BlowUpCollapseWitness> witness;
  std::int64_t n_max = 0;

  bool found() const { return witness.has_value(); }
};

struct MixingRow {
  std::int64_t n = 1;
  bool pass = false;
  std::vector<double> distances;
};

struct MixingResult {
  std::vector<MixingRow> rows;
  /// Least tested n from which every later tested n passes; empty when the
  /// last tested n fails.
  std::optional<std::int64_t> all_pass_from;

  bool all_pass() const;
};

/// Scans n = 1..n_max testing one explicit candidate per n: the source
/// center plus the right-inverse images of the target centers. A miss means
/// this candidate construction fails up to the horizon, not a disproof.
TransitivityResult probe_transitivity(const ShiftFamily& family, const Ball& source,
                                      const std::vector<Ball>& targets, std::int64_t n_max);

/// Scans m = 1..n_max for a time where both the blow-up and the collapse
/// candidate succeed. The zero ball must be centered at the origin.
BlowUpCollapseResult probe_blow_up_collapse(const ShiftFamily& family, const Ball& zero_ball,
                                            const Ball& v0, const std::vector<Ball>& targets,
                                            std::int64_t n_max);

/// Runs the transitivity candidate test at every fixed n in [n_from, n_to]
/// (no scanning) and reports the pass table.
MixingResult probe_mixing(const ShiftFamily& family, const Ball& source,
                          const std::vector<Ball>& targets, std::int64_t n_from,
                          std::int64_t n_to);

}  // namespace cdlab
