#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cdlab/errors.hpp"

namespace cdlab {

using Complex = std::complex<double>;
using Index = std::int64_t;

/// Index set of the ambient sequence space: N (indices >= 0) or Z.
enum class DomainKind { Unilateral, Bilateral };

struct IndexDomain {
  DomainKind kind = DomainKind::Unilateral;

  bool contains(Index k) const {
    return kind == DomainKind::Bilateral || k >= 0;
  }
  friend bool operator==(IndexDomain a, IndexDomain b) { return a.kind == b.kind; }
};

inline constexpr IndexDomain unilateral{DomainKind::Unilateral};
inline constexpr IndexDomain bilateral{DomainKind::Bilateral};

/// Which norm the ambient space carries: lp(p) with 1 <= p < inf, or the
/// sup norm (the c0 case).
struct SpaceSpec {
  enum class Norm { Lp, Sup };

  Norm norm = Norm::Lp;
  double p = 2.0;
  IndexDomain domain;

  static SpaceSpec lp(double p, IndexDomain d);
  static SpaceSpec sup(IndexDomain d) { return SpaceSpec{Norm::Sup, 0.0, d}; }
};

/// A complex scalar stored as (log-magnitude, phase). logmag = -inf encodes
/// zero (with phase pinned to 0). Products of many weights stay representable
/// here long after the plain double would overflow.
class LogScalar {
public:
  LogScalar() = default;
  LogScalar(double logmag, double phase);

  static LogScalar one() { return LogScalar(0.0, 0.0); }
  static LogScalar zero();
  static LogScalar from_complex(Complex z);

  double logmag() const { return logmag_; }
  double phase() const { return phase_; }
  bool is_zero() const;

  LogScalar operator*(const LogScalar& rhs) const;
  LogScalar reciprocal() const;
  LogScalar pow(std::int64_t n) const;

  /// Converts back to an ordinary complex double. Throws OverflowError when
  /// the magnitude exceeds the largest finite double; underflow flushes to 0.
  Complex to_complex() const;

  /// Reduces an angle to the canonical range (-pi, pi].
  static double reduce_phase(double phi);

private:
  double logmag_ = 0.0;
  double phase_ = 0.0;
};

/// Finitely supported vector over a fixed index domain. Entries are kept
/// sorted by index and an entry is stored only when its magnitude is not
/// exactly zero; there is no epsilon pruning anywhere.
class SeqVector {
public:
  using Entry = std::pair<Index, Complex>;

  explicit SeqVector(IndexDomain domain = unilateral) : domain_(domain) {}

  static SeqVector zero(IndexDomain domain) { return SeqVector(domain); }

  /// Builds a vector from unvalidated, already sorted, zero-free entries.
  /// Callers inside the library use this after producing entries that are
  /// valid by construction.
  static SeqVector from_sorted_unchecked(IndexDomain domain, std::vector<Entry> entries);

  IndexDomain domain() const { return domain_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  /// Coefficient at index k (zero when absent). Absent is not an error:
  /// the vector represents an element of the whole space.
  Complex at(Index k) const;

private:
  IndexDomain domain_;
  std::vector<Entry> entries_;
};

/// Validating constructor: indices must lie in `domain` and be distinct;
/// entries of exactly zero magnitude are dropped.
SeqVector make_vector(IndexDomain domain, std::span<const SeqVector::Entry> entries);
SeqVector make_vector(IndexDomain domain, std::initializer_list<SeqVector::Entry> entries);

/// Norm of v in the given space. The vector's domain must match the space's.
double norm(const SeqVector& v, const SpaceSpec& space);

/// alpha*u + beta*v. Domains must agree; exact cancellations are dropped.
SeqVector combine(Complex alpha, const SeqVector& u, Complex beta, const SeqVector& v);

inline SeqVector add(const SeqVector& u, const SeqVector& v) {
  return combine(1.0, u, 1.0, v);
}
inline SeqVector subtract(const SeqVector& u, const SeqVector& v) {
  return combine(1.0, u, -1.0, v);
}
inline SeqVector scale(Complex alpha, const SeqVector& v) {
  return combine(alpha, v, 0.0, SeqVector::zero(v.domain()));
}

/// Distance ||u - v|| in the given space.
inline double distance(const SeqVector& u, const SeqVector& v, const SpaceSpec& space) {
  return norm(subtract(u, v), space);
}

}  // namespace cdlab
