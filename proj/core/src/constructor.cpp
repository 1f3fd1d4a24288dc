#include "cdlab/constructor.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cdlab/orbits.hpp"

namespace cdlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_exp(double x) { return x == -kInf ? 0.0 : std::exp(x); }

void validate_inputs(const ShiftFamily& family, const WitnessSchedule& schedule,
                     const TargetList& targets) {
  if (targets.rows.empty()) throw InputError("target list must hold at least one row");
  for (const auto& row : targets.rows) {
    if (row.size() != family.size()) {
      throw InputError("each target row needs one vector per family member");
    }
    for (const auto& y : row) {
      if (!(y.domain() == family.domain())) {
        throw DomainError("target vector domain does not match the family domain");
      }
    }
  }
  if (schedule.entries.empty()) throw InputError("witness schedule is empty");
  for (std::size_t i = 1; i < schedule.entries.size(); ++i) {
    if (schedule.entries[i].n <= schedule.entries[i - 1].n) {
      throw InputError("witness schedule values must be strictly increasing");
    }
  }
}

}  // namespace

ConstructionStuck::ConstructionStuck(int j, std::string inequality)
    : Error("construction stuck at step " + std::to_string(j) + " (" + inequality + ")"),
      j_(j),
      inequality_(std::move(inequality)) {}

CertificationFailure::CertificationFailure(int l, int j, double error, double bound)
    : Error([&] {
        std::ostringstream os;
        os << "certification failure at (l=" << l << ", j=" << j << "): error " << error
           << " >= bound " << bound;
        return os.str();
      }()),
      l_(l),
      j_(j) {}

ConstructedVector construct(const ShiftFamily& family, const WitnessSchedule& schedule,
                            const TargetList& targets, const SpaceSpec& space) {
  validate_inputs(family, schedule, targets);
  if (!(space.domain == family.domain())) {
    throw DomainError("space domain does not match the family domain");
  }

  const std::size_t n_members = family.size();
  const int target_count = static_cast<int>(targets.count());

  ConstructedVector result;
  result.x = SeqVector::zero(family.domain());

  // Chosen schedule values of earlier steps; constraint (prior orbit) below
  // re-tests every new image against each of them.
  std::vector<std::int64_t> prior_ns;

  std::size_t next_index = 0;
  for (int j = 1; j <= target_count; ++j) {
    const double bound = std::ldexp(1.0, -j);
    const double log_bound = -static_cast<double>(j) * std::numbers::ln2;
    const auto& row = targets.rows[static_cast<std::size_t>(j - 1)];
    const auto x_acc_scaled = to_scaled(result.x);

    std::vector<ScaledVector> images(n_members);
    StepSlacks slacks;
    std::string last_block = "right_inverse_norm";
    bool accepted = false;
    std::size_t chosen = 0;

    for (std::size_t idx = next_index; idx < schedule.entries.size() && !accepted; ++idx) {
      const std::int64_t n = schedule.entries[idx].n;
      StepSlacks cand;
      std::string block;

      // Right-inverse images of the target row at this schedule value.
      std::vector<ScaledVector> cand_images(n_members);
      double worst = -kInf;
      for (std::size_t i = 0; i < n_members; ++i) {
        cand_images[i] = right_inverse_image_scaled(family.member(i), n,
                                                    to_scaled(row[i]));
        worst = std::max(worst, log_norm(cand_images[i], space));
      }
      cand.smap_norm = safe_exp(worst);
      if (!(worst < log_bound)) {
        last_block = "right_inverse_norm";
        continue;
      }

      // Earlier orbit times applied to the new images.
      worst = -kInf;
      for (std::int64_t n_prior : prior_ns) {
        const double log_np = std::log(static_cast<double>(n_prior));
        for (std::size_t m = 0; m < n_members; ++m) {
          for (std::size_t i = 0; i < n_members; ++i) {
            auto img = power_image_scaled(family.member(m), n_prior, cand_images[i]);
            worst = std::max(worst, log_norm(img, space) - log_np);
          }
        }
      }
      cand.prior_orbit_of_smap = safe_exp(worst);
      if (!(worst < log_bound)) {
        last_block = "prior_orbit_of_right_inverse";
        continue;
      }

      // Cross terms at the step's own orbit time (the diagonal term is the
      // exact identity and contributes slack zero).
      const double log_n = std::log(static_cast<double>(n));
      worst = -kInf;
      for (std::size_t m = 0; m < n_members; ++m) {
        for (std::size_t i = 0; i < n_members; ++i) {
          if (i == m) continue;
          auto img = power_image_scaled(family.member(m), n, cand_images[i]);
          worst = std::max(worst, log_norm(img, space) - log_n);
        }
      }
      cand.offdiag_at_current = safe_exp(worst);
      if (!(worst < log_bound)) {
        last_block = "cross_term_at_current";
        continue;
      }

      // The accumulated prefix seen from the step's own orbit time.
      worst = -kInf;
      for (std::size_t m = 0; m < n_members; ++m) {
        auto img = power_image_scaled(family.member(m), n, x_acc_scaled);
        worst = std::max(worst, log_norm(img, space) - log_n);
      }
      cand.prefix_at_current = safe_exp(worst);
      if (!(worst < log_bound)) {
        last_block = "prefix_at_current";
        continue;
      }

      accepted = true;
      chosen = idx;
      images = std::move(cand_images);
      slacks = cand;
    }

    if (!accepted) {
      throw ConstructionStuck(j, last_block);
    }

    for (std::size_t i = 0; i < n_members; ++i) {
      result.x = add(result.x, materialize(family.domain(), images[i]));
    }

    DiaryStep step;
    step.j = j;
    step.schedule_index = chosen;
    step.q = schedule.entries[chosen].q;
    step.n = schedule.entries[chosen].n;
    step.x_step = SeqVector::zero(family.domain());
    step.slacks = slacks;
    result.diary.steps.push_back(std::move(step));

    prior_ns.push_back(schedule.entries[chosen].n);
    next_index = chosen + 1;
    (void)bound;
  }

  // Recompute every orbit error on the assembled vector and certify it.
  for (int j = 1; j <= target_count; ++j) {
    const auto& step = result.diary.steps[static_cast<std::size_t>(j - 1)];
    const auto& row = targets.rows[static_cast<std::size_t>(j - 1)];
    const double bound =
        static_cast<double>(2 * n_members + 3) * std::ldexp(1.0, -j);
    for (std::size_t l = 0; l < n_members; ++l) {
      SeqVector point = cesaro_orbit_point(family.member(l), step.n, result.x);
      double err = distance(point, row[l], space);
      if (!(err < bound)) {
        throw CertificationFailure(static_cast<int>(l + 1), j, err, bound);
      }
      result.errors.push_back(
          ErrorRow{static_cast<int>(l + 1), j, err, bound, true});
    }
  }
  return result;
}

std::vector<ErrorRow> verify_construction(const ConstructedVector& result,
                                          const ShiftFamily& family,
                                          const TargetList& targets,
                                          const SpaceSpec& space) {
  std::vector<ErrorRow> rows;
  const std::size_t n_members = family.size();
  const std::size_t count = std::min(targets.rows.size(), result.diary.steps.size());
  for (std::size_t jz = 0; jz < count; ++jz) {
    const auto& step = result.diary.steps[jz];
    std::vector<std::int64_t> ns{step.n};
    auto points = joint_cesaro_orbit(family, result.x, ns);
    const double bound =
        static_cast<double>(2 * n_members + 3) * std::ldexp(1.0, -(static_cast<int>(jz) + 1));
    for (std::size_t l = 0; l < n_members; ++l) {
      double err = distance(points.front().values[l], targets.rows[jz][l], space);
      rows.push_back(ErrorRow{static_cast<int>(l + 1), static_cast<int>(jz + 1), err, bound,
                              err < bound});
    }
  }
  return rows;
}

}  // namespace cdlab
