#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "cdlab/shifts.hpp"

namespace cdlab {

enum class FamilyKind { Unilateral, Bilateral };

/// The inequality families tested by the witness scans. All margins are
/// log-domain slacks (achieved log value minus required log threshold); a
/// condition passes iff its margin is strictly positive.
///
///   ForwardGrowth  |window above j| / m   must exceed 1/eps
///   BackwardDecay  |window below j| / m   must stay under eps  (bilateral)
///   CrossUpper     member-l window must dominate the shorter member-s window
///   CrossLower     member-l short window must stay under the member-s window
enum class ConditionId { ForwardGrowth, BackwardDecay, CrossUpper, CrossLower };

const char* condition_name(ConditionId c);

struct MarginKey {
  ConditionId condition = ConditionId::ForwardGrowth;
  Index j = 0;  // window offset
  int l = 1;    // 1-based member
  int s = 0;    // 1-based smaller member for cross conditions, else 0

  auto operator<=>(const MarginKey&) const = default;
};

struct MarginEntry {
  MarginKey key;
  double margin = 0.0;
};

/// First failing condition at an unsuccessful scan value m.
struct Blocker {
  std::int64_t m = 0;
  MarginKey key;
  double margin = 0.0;
};

struct CriterionQuery {
  ShiftFamily family;
  double epsilon = 0.1;
  std::int64_t q = 0;
  std::int64_t m_max = 1;
};

struct CriterionReport {
  enum class Status { Found, NotFoundUpTo };

  Status status = Status::NotFoundUpTo;
  std::int64_t witness_m = 0;  // meaningful when Found
  std::int64_t m_max = 0;
  FamilyKind family_kind = FamilyKind::Unilateral;
  std::vector<MarginEntry> margins;  // all margins at the witness, canonical order
  std::vector<Blocker> blockers;     // one per failing m below the witness / up to m_max

  bool found() const { return status == Status::Found; }
};

/// Entry of a witness schedule: the q-th level value n_q.
struct ScheduleEntry {
  std::int64_t q = 0;
  std::int64_t n = 0;
};

/// Increasing integers n_1 < n_2 < ... where entry q passes the level-q
/// inequalities (thresholds q and 1/q). `incomplete_at` carries the first
/// level whose scan hit the search cap.
struct WitnessSchedule {
  std::vector<ScheduleEntry> entries;
  std::optional<std::int64_t> incomplete_at;
  std::int64_t search_cap = 0;

  bool complete() const { return !incomplete_at.has_value(); }
};

/// Scans m = 1..m_max for the first witness of the unilateral criterion:
/// for every 0 <= j <= q, each member's forward window beats m/eps and each
/// ordered pair (s < l) passes the cross-ratio test.
CriterionReport check_unilateral(const CriterionQuery& query, unsigned threads = 1);

/// Bilateral analogue over |j| <= q. Adds the backward-window decay
/// condition and the lower cross condition; for N = 1 only the two
/// single-member conditions apply.
CriterionReport check_bilateral(const CriterionQuery& query, unsigned threads = 1);

/// Comparison scan for plain (non-scaled) orbit expansion of a single
/// bilateral shift: same windows as check_bilateral but without the 1/m
/// factor. Echoes classic hypercyclicity verdicts for the example corpus.
CriterionReport check_salas_comparison(const ShiftFamily& family, double epsilon,
                                       std::int64_t q, std::int64_t m_max,
                                       unsigned threads = 1);

/// Builds the witness schedule level by level: n_q is the smallest integer
/// above n_{q-1} and at most m_search_cap passing the level-q inequalities.
WitnessSchedule build_schedule(const ShiftFamily& family, std::int64_t q_max,
                               std::int64_t m_search_cap, unsigned threads = 1);

/// Margins of the level-q inequality system at scan value n, in canonical
/// order. Used to re-validate schedule entries.
std::vector<MarginEntry> level_margins(const ShiftFamily& family, std::int64_t q,
                                       std::int64_t n);

}  // namespace cdlab
