#pragma once

#include <string>
#include <vector>

#include "cdlab/criterion.hpp"
#include "cdlab/shifts.hpp"

namespace cdlab {

/// Target rows: row j holds one finitely supported target vector per family
/// member, all over the family domain.
struct TargetList {
  std::vector<std::vector<SeqVector>> rows;

  std::size_t count() const { return rows.size(); }
};

/// The seven step constraints, recorded as achieved left-hand-side values.
/// Step j is accepted only when each value is strictly below 1/2^j.
struct StepSlacks {
  double step_norm = 0.0;            // norm of the repair vector x_j (always 0 here)
  double prior_orbit_of_step = 0.0;  // prior orbit points applied to x_j
  double smap_norm = 0.0;            // largest right-inverse image norm
  double prior_orbit_of_smap = 0.0;  // prior orbit points applied to the new images
  double diagonal_identity = 0.0;    // exact for shifts; recorded as 0
  double offdiag_at_current = 0.0;   // cross terms at the step's own time
  double prefix_at_current = 0.0;    // accumulated prefix at the step's own time
};

struct DiaryStep {
  int j = 1;                      // 1-based step number
  std::size_t schedule_index = 0; // 0-based index into the witness schedule
  std::int64_t q = 0;             // schedule level of the chosen entry
  std::int64_t n = 0;             // schedule value n at the chosen entry
  SeqVector x_step;               // the repair vector (identically zero here)
  StepSlacks slacks;
};

struct ConstructionDiary {
  std::vector<DiaryStep> steps;
};

struct ErrorRow {
  int l = 1;  // 1-based member
  int j = 1;  // 1-based target row
  double error = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// A certified approximate joint orbit vector: at each diary step j the
/// scaled orbit point of x at time n_j lands within (2N+3)/2^j of target
/// row j, member by member.
struct ConstructedVector {
  SeqVector x;
  ConstructionDiary diary;
  std::vector<ErrorRow> errors;
};

/// No feasible schedule index remained for step j; `inequality` names the
/// constraint blocking the last candidate tried.
class ConstructionStuck : public Error {
public:
  ConstructionStuck(int j, std::string inequality);
  int step() const { return j_; }
  const std::string& inequality() const { return inequality_; }

private:
  int j_;
  std::string inequality_;
};

/// A recomputed error violated its certified bound. This indicates an
/// implementation bug; the construction aborts rather than clamping.
class CertificationFailure : public Error {
public:
  CertificationFailure(int l, int j, double error, double bound);
  int member() const { return l_; }
  int step() const { return j_; }

private:
  int l_;
  int j_;
};

/// Runs the iterative construction: step j fixes the repair vector at zero,
/// scans the schedule tail for the smallest feasible index, and accumulates
/// the right-inverse images of target row j. The assembled vector's orbit
/// errors are recomputed and certified against (2N+3)/2^j.
ConstructedVector construct(const ShiftFamily& family, const WitnessSchedule& schedule,
                            const TargetList& targets, const SpaceSpec& space);

/// Read-only audit: recomputes every error of `result` through the orbit
/// module and reports each row against its bound. Never throws on failure;
/// failures surface as rows with pass = false.
std::vector<ErrorRow> verify_construction(const ConstructedVector& result,
                                          const ShiftFamily& family,
                                          const TargetList& targets,
                                          const SpaceSpec& space);

}  // namespace cdlab
