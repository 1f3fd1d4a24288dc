#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cdlab/space.hpp"

namespace cdlab {

/// Value rule of one weight piece: a constant c0, or the affine map
/// k -> c0 + c1*k evaluated at the weight index.
struct WeightRule {
  enum class Kind { Constant, Affine };
  Kind kind = Kind::Constant;
  Complex c0{1.0, 0.0};
  Complex c1{0.0, 0.0};

  static WeightRule constant(Complex c) { return {Kind::Constant, c, {0.0, 0.0}}; }
  static WeightRule affine(Complex c0, Complex c1) { return {Kind::Affine, c0, c1}; }

  Complex eval(Index k) const {
    return kind == Kind::Constant ? c0 : c0 + c1 * Complex(static_cast<double>(k), 0.0);
  }
};

/// One piece of a piecewise weight definition over an index interval.
/// Absent bounds mean -inf / +inf.
struct WeightPiece {
  std::optional<Index> from;
  std::optional<Index> to;
  WeightRule rule;
};

/// Piecewise-defined weight family a = (a_k). Unilateral weights are indexed
/// from 1 (a_0 is never queried by a backward shift); bilateral weights cover
/// all of Z. Pieces must tile the queryable index range exactly.
///
/// Every query enforces |a_k| >= nonzero_floor, and |a_k| <= declared_bound
/// when a bound was declared. A weight family without a declared bound is
/// treated as potentially unbounded and flagged in reports.
class WeightSequence {
public:
  WeightSequence(std::vector<WeightPiece> pieces, IndexDomain domain,
                 std::optional<double> declared_bound, double nonzero_floor);

  static WeightSequence constant(Complex c, IndexDomain domain);

  Complex at(Index k) const;
  IndexDomain domain() const { return domain_; }
  std::optional<double> declared_bound() const { return declared_bound_; }
  double nonzero_floor() const { return nonzero_floor_; }
  const std::vector<WeightPiece>& pieces() const { return pieces_; }

  /// Smallest valid weight index: 1 for unilateral families, none for
  /// bilateral (all of Z is valid).
  std::optional<Index> min_index() const;

private:
  std::vector<WeightPiece> pieces_;
  IndexDomain domain_;
  std::optional<double> declared_bound_;
  double nonzero_floor_;
};

/// A weighted backward shift raised to a fixed exponent r >= 1. The base map
/// sends e_k to a_k * e_{k-1}; unilateral shifts annihilate e_0.
class ShiftOperator {
public:
  ShiftOperator(WeightSequence weights, std::int64_t exponent);

  const WeightSequence& weights() const { return weights_; }
  std::int64_t exponent() const { return exponent_; }
  IndexDomain domain() const { return weights_.domain(); }

private:
  WeightSequence weights_;
  std::int64_t exponent_;
};

/// Tuple of N shifts over one index domain with strictly increasing
/// exponents r_1 < ... < r_N. N = 1 is the single-operator case.
class ShiftFamily {
public:
  explicit ShiftFamily(std::vector<ShiftOperator> members);

  std::size_t size() const { return members_.size(); }
  const ShiftOperator& member(std::size_t l) const { return members_[l]; }
  const std::vector<ShiftOperator>& members() const { return members_; }
  IndexDomain domain() const { return members_.front().domain(); }

private:
  std::vector<ShiftOperator> members_;
};

// ---------------------------------------------------------------------------
// Scaled evaluation layer.
//
// Coefficients of shifted vectors are products of many weights; they are
// carried as (complex mantissa, power-of-two exponent) pairs so that the
// arithmetic stays exact for power-of-two weights and never overflows
// mid-computation. Conversion back to plain doubles happens only at the
// output boundary.
// ---------------------------------------------------------------------------

/// One coefficient of an image vector: value = mant * 2^exp2 at `index`.
struct ScaledEntry {
  Index index = 0;
  Complex mant{0.0, 0.0};
  std::int64_t exp2 = 0;

  /// log of the coefficient magnitude (-inf for zero).
  double logmag() const;
  LogScalar to_log_scalar() const;
};

using ScaledVector = std::vector<ScaledEntry>;

ScaledVector to_scaled(const SeqVector& v);

/// Converts back to a SeqVector; throws OverflowError when a coefficient
/// exceeds the double range. Exact zeros are dropped.
SeqVector materialize(IndexDomain domain, std::span<const ScaledEntry> entries);

/// Non-throwing variant: nullopt when any coefficient would overflow.
std::optional<SeqVector> try_materialize(IndexDomain domain, std::span<const ScaledEntry> entries);

/// Image of B_a^{r*m} on scaled entries; unilateral components that would
/// land below index 0 vanish.
ScaledVector power_image_scaled(const ShiftOperator& shift, std::int64_t m,
                                std::span<const ScaledEntry> v);

/// Image of the right-inverse map S at schedule value n_q on scaled entries:
/// each component at j moves to j + r*n_q, scaled by n_q over the weight
/// window product.
ScaledVector right_inverse_image_scaled(const ShiftOperator& shift, std::int64_t n_q,
                                        std::span<const ScaledEntry> v);

ScaledVector scale_scaled(Complex factor, ScaledVector v);

/// log of the norm of the (not yet materialized) image; safe for
/// coefficients far outside the double range.
double log_norm(std::span<const ScaledEntry> entries, const SpaceSpec& space);

// ---------------------------------------------------------------------------
// Shift operations.
// ---------------------------------------------------------------------------

/// One application of the base backward shift B_a (the exponent of `shift`
/// is ignored): e_k -> a_k e_{k-1}, with e_0 annihilated unilaterally.
SeqVector apply(const ShiftOperator& shift, const SeqVector& v);

/// Log-domain product of the weight window prod_{i=lo}^{hi} a_i.
/// The empty window (lo = hi + 1) is the scalar one.
LogScalar weight_window_log_product(const WeightSequence& a, Index lo, Index hi);

/// B_a^{r*m} v through the closed product form: e_k picks up the window
/// product over [k - r*m + 1, k] and lands at k - r*m. Agrees with r*m-fold
/// apply().
SeqVector apply_power(const ShiftOperator& shift, std::int64_t m, const SeqVector& v);

/// Right inverse S at schedule value n_q: the component at j moves to
/// j + r*n_q carrying n_q divided by the window product over
/// [j + 1, j + r*n_q]. Satisfies (1/n_q) B^{r n_q} S = identity.
SeqVector right_inverse(const ShiftOperator& shift, std::int64_t n_q, const SeqVector& v);

}  // namespace cdlab
