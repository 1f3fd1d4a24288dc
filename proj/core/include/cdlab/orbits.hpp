#pragma once

#include <vector>

#include "cdlab/shifts.hpp"

namespace cdlab {

/// One joint orbit sample: the tuple ((1/n) T_1^n x, ..., (1/n) T_N^n x).
struct OrbitPoint {
  std::int64_t n = 1;
  std::vector<SeqVector> values;
};

/// (1/n) T^n x for T the shift raised to its exponent, i.e. the point of the
/// scaled power orbit at time n >= 1.
SeqVector cesaro_orbit_point(const ShiftOperator& shift, std::int64_t n, const SeqVector& x);

/// (1/n) (I + T + ... + T^{n-1}) x, the arithmetic mean of the first n orbit
/// terms. Provided for exploration; the criterion machinery works with the
/// scaled power orbit only.
SeqVector cesaro_mean_apply(const ShiftOperator& shift, std::int64_t n, const SeqVector& x);

/// Joint orbit samples at the given strictly increasing times.
std::vector<OrbitPoint> joint_cesaro_orbit(const ShiftFamily& family, const SeqVector& x,
                                           const std::vector<std::int64_t>& ns);

}  // namespace cdlab
