#include "cdlab/orbits.hpp"

namespace cdlab {

SeqVector cesaro_orbit_point(const ShiftOperator& shift, std::int64_t n, const SeqVector& x) {
  if (n < 1) throw InputError("orbit time n must be >= 1");
  if (!(x.domain() == shift.domain())) {
    throw DomainError("vector domain does not match the shift domain");
  }
  auto img = power_image_scaled(shift, n, to_scaled(x));
  img = scale_scaled(Complex(1.0 / static_cast<double>(n), 0.0), std::move(img));
  return materialize(x.domain(), img);
}

SeqVector cesaro_mean_apply(const ShiftOperator& shift, std::int64_t n, const SeqVector& x) {
  if (n < 1) throw InputError("mean order n must be >= 1");
  if (!(x.domain() == shift.domain())) {
    throw DomainError("vector domain does not match the shift domain");
  }
  SeqVector sum = x;  // k = 0 term
  for (std::int64_t k = 1; k < n; ++k) {
    sum = add(sum, apply_power(shift, k, x));
  }
  return scale(Complex(1.0 / static_cast<double>(n), 0.0), sum);
}

std::vector<OrbitPoint> joint_cesaro_orbit(const ShiftFamily& family, const SeqVector& x,
                                           const std::vector<std::int64_t>& ns) {
  if (ns.empty()) throw InputError("orbit time list must be nonempty");
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] <= ns[i - 1]) throw InputError("orbit times must be strictly increasing");
  }
  std::vector<OrbitPoint> points;
  points.reserve(ns.size());
  for (std::int64_t n : ns) {
    OrbitPoint pt;
    pt.n = n;
    pt.values.reserve(family.size());
    for (const auto& member : family.members()) {
      pt.values.push_back(cesaro_orbit_point(member, n, x));
    }
    points.push_back(std::move(pt));
  }
  return points;
}

}  // namespace cdlab
