#include "cdlab/probes.hpp"

#include <algorithm>
#include <cmath>

namespace cdlab {

namespace {

void validate_balls(const ShiftFamily& family, const Ball& first,
                    const std::vector<Ball>& targets) {
  if (targets.size() != family.size()) {
    throw InputError("one target ball per family member is required");
  }
  auto check = [&family](const Ball& b) {
    if (!(b.radius > 0.0)) throw InputError("ball radius must be positive");
    if (!(b.center.domain() == family.domain()) || !(b.space.domain == family.domain())) {
      throw DomainError("ball domain does not match the family domain");
    }
  };
  check(first);
  for (const auto& b : targets) check(b);
}

// The candidate at time n: source center plus the right-inverse images of
// the target centers. Returns nullopt when a coefficient overflows, which
// counts as a failed candidate rather than an error.
std::optional<SeqVector> candidate_at(const ShiftFamily& family, const SeqVector& source_center,
                                      const std::vector<Ball>& targets, std::int64_t n) {
  SeqVector z = source_center;
  for (std::size_t l = 0; l < family.size(); ++l) {
    auto img = right_inverse_image_scaled(family.member(l), n,
                                          to_scaled(targets[l].center));
    auto part = try_materialize(family.domain(), img);
    if (!part) return std::nullopt;
    z = add(z, *part);
  }
  return z;
}

// Scaled orbit point (1/n) T_l^n z, or nullopt on coefficient overflow.
std::optional<SeqVector> orbit_point_at(const ShiftOperator& member, std::int64_t n,
                                        const SeqVector& z) {
  auto img = power_image_scaled(member, n, to_scaled(z));
  img = scale_scaled(Complex(1.0 / static_cast<double>(n), 0.0), std::move(img));
  return try_materialize(member.domain(), img);
}

// Tests the explicit candidate at a fixed n. Distances are recorded even on
// failure (for the mixing table); overflowing candidates fail with an empty
// distance list.
std::optional<std::pair<bool, ProbeWitness>> test_candidate(const ShiftFamily& family,
                                                            const Ball& source,
                                                            const std::vector<Ball>& targets,
                                                            std::int64_t n) {
  auto z = candidate_at(family, source.center, targets, n);
  if (!z) return std::nullopt;

  ProbeWitness w;
  w.n = n;
  w.z = *z;
  bool pass = true;

  double d0 = distance(*z, source.center, source.space);
  w.distances.push_back(d0);
  pass = pass && d0 < source.radius;

  for (std::size_t l = 0; l < family.size(); ++l) {
    auto point = orbit_point_at(family.member(l), n, *z);
    if (!point) return std::nullopt;
    double dl = distance(*point, targets[l].center, targets[l].space);
    w.distances.push_back(dl);
    pass = pass && dl < targets[l].radius;
  }
  return std::make_pair(pass, std::move(w));
}

}  // namespace

bool MixingResult::all_pass() const {
  return !rows.empty() && all_pass_from && *all_pass_from == rows.front().n;
}

TransitivityResult probe_transitivity(const ShiftFamily& family, const Ball& source,
                                      const std::vector<Ball>& targets, std::int64_t n_max) {
  if (n_max < 1) throw InputError("n_max must be >= 1");
  validate_balls(family, source, targets);

  TransitivityResult result;
  result.n_max = n_max;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    auto tested = test_candidate(family, source, targets, n);
    if (tested && tested->first) {
      result.witness = std::move(tested->second);
      break;
    }
  }
  return result;
}

BlowUpCollapseResult probe_blow_up_collapse(const ShiftFamily& family, const Ball& zero_ball,
                                            const Ball& v0, const std::vector<Ball>& targets,
                                            std::int64_t n_max) {
  if (n_max < 1) throw InputError("n_max must be >= 1");
  validate_balls(family, zero_ball, targets);
  if (!(v0.center.domain() == family.domain()) || !(v0.space.domain == family.domain())) {
    throw DomainError("ball domain does not match the family domain");
  }
  if (!(v0.radius > 0.0)) throw InputError("ball radius must be positive");
  if (!zero_ball.center.is_zero()) {
    throw InputError("the zero-neighbourhood ball must be centered at the origin");
  }

  const bool unilateral = family.domain().kind == DomainKind::Unilateral;
  const std::int64_t r_min = family.member(0).exponent();

  BlowUpCollapseResult result;
  result.n_max = n_max;
  for (std::int64_t m = 1; m <= n_max; ++m) {
    // Blow-up half: a small vector whose scaled orbit points hit the targets.
    auto blow = test_candidate(family, zero_ball.center, targets, m);
    bool blow_ok = blow && blow->first;
    if (!blow_ok) continue;

    // Collapse half: start from the V0 center. Unilateral shifts annihilate
    // everything below index r_min * m, so truncating there makes every
    // orbit image vanish; bilaterally the center itself is the candidate and
    // its images must shrink into the zero ball.
    SeqVector eta = v0.center;
    if (unilateral) {
      std::vector<SeqVector::Entry> kept;
      for (const auto& [k, z] : v0.center.entries()) {
        if (k < r_min * m) kept.emplace_back(k, z);
      }
      eta = SeqVector::from_sorted_unchecked(family.domain(), std::move(kept));
    }
    std::vector<double> collapse_dists;
    double d_v0 = distance(eta, v0.center, v0.space);
    collapse_dists.push_back(d_v0);
    bool collapse_ok = d_v0 < v0.radius;
    for (std::size_t l = 0; l < family.size() && collapse_ok; ++l) {
      auto point = orbit_point_at(family.member(l), m, eta);
      if (!point) {
        collapse_ok = false;
        break;
      }
      double dl = norm(*point, zero_ball.space);
      collapse_dists.push_back(dl);
      collapse_ok = dl < zero_ball.radius;
    }
    if (!collapse_ok) continue;

    BlowUpCollapseWitness w;
    w.m = m;
    w.near_zero = std::move(blow->second.z);
    w.blow_up_distances = std::move(blow->second.distances);
    w.near_v0 = std::move(eta);
    w.collapse_distances = std::move(collapse_dists);
    result.witness = std::move(w);
    break;
  }
  return result;
}

MixingResult probe_mixing(const ShiftFamily& family, const Ball& source,
                          const std::vector<Ball>& targets, std::int64_t n_from,
                          std::int64_t n_to) {
  if (n_from < 1 || n_from > n_to) {
    throw InputError("mixing range requires 1 <= n_from <= n_to");
  }
  validate_balls(family, source, targets);

  MixingResult result;
  for (std::int64_t n = n_from; n <= n_to; ++n) {
    auto tested = test_candidate(family, source, targets, n);
    MixingRow row;
    row.n = n;
    if (tested) {
      row.pass = tested->first;
      row.distances = std::move(tested->second.distances);
    }
    result.rows.push_back(std::move(row));
  }
  for (auto it = result.rows.rbegin(); it != result.rows.rend(); ++it) {
    if (!it->pass) break;
    result.all_pass_from = it->n;
  }
  return result;
}

}  // namespace cdlab
