#include "cdlab/shifts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cdlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Renormalizes so that |mant| lands in [1, 2); exact (power-of-two scaling).
void normalize(Complex& mant, std::int64_t& exp2) {
  double m = std::abs(mant);
  if (m == 0.0) {
    mant = {0.0, 0.0};
    exp2 = 0;
    return;
  }
  int e = 0;
  std::frexp(m, &e);  // m = f * 2^e with f in [0.5, 1)
  mant = {std::ldexp(mant.real(), 1 - e), std::ldexp(mant.imag(), 1 - e)};
  exp2 += e - 1;
}

struct Scaled {
  Complex mant{1.0, 0.0};
  std::int64_t exp2 = 0;

  // Factors are normalized before multiplying, so mantissas stay within
  // [1, 4) and intermediate products cannot overflow.
  void mul(Complex z) {
    std::int64_t ez = 0;
    normalize(z, ez);
    mant *= z;
    exp2 += ez;
    normalize(mant, exp2);
  }
  void div(Complex z) {
    std::int64_t ez = 0;
    normalize(z, ez);
    if (z == Complex{0.0, 0.0}) throw InputError("division by zero scaled factor");
    mant /= z;
    exp2 -= ez;
    normalize(mant, exp2);
  }
  bool is_zero() const { return mant == Complex{0.0, 0.0}; }
};

// prod_{i=lo}^{hi} a_i as a scaled complex; empty window is one.
Scaled window_scaled_product(const WeightSequence& a, Index lo, Index hi) {
  Scaled s;
  for (Index i = lo; i <= hi; ++i) s.mul(a.at(i));
  return s;
}

void check_window_domain(const WeightSequence& a, Index lo, Index hi) {
  if (lo > hi + 1) {
    throw InputError("window lower bound exceeds upper bound + 1");
  }
  if (lo <= hi) {
    if (auto mn = a.min_index(); mn && lo < *mn) {
      std::ostringstream os;
      os << "weight window [" << lo << ", " << hi << "] leaves the unilateral domain";
      throw DomainError(os.str());
    }
  }
}

}  // namespace

WeightSequence::WeightSequence(std::vector<WeightPiece> pieces, IndexDomain domain,
                               std::optional<double> declared_bound, double nonzero_floor)
    : pieces_(std::move(pieces)),
      domain_(domain),
      declared_bound_(declared_bound),
      nonzero_floor_(nonzero_floor) {
  if (pieces_.empty()) throw InputError("weight sequence needs at least one piece");
  if (!(nonzero_floor_ > 0.0)) throw InputError("nonzero_floor must be positive");
  if (declared_bound_ && !(*declared_bound_ > 0.0)) {
    throw InputError("declared_bound must be positive when given");
  }
  std::sort(pieces_.begin(), pieces_.end(), [](const WeightPiece& a, const WeightPiece& b) {
    if (!a.from) return static_cast<bool>(b.from);
    if (!b.from) return false;
    return *a.from < *b.from;
  });
  for (const auto& p : pieces_) {
    if (p.from && p.to && *p.from > *p.to) {
      throw InputError("weight piece with from > to");
    }
  }
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    const auto& prev = pieces_[i - 1];
    const auto& cur = pieces_[i];
    if (!prev.to || !cur.from || *cur.from != *prev.to + 1) {
      throw InputError("weight pieces must tile the index range contiguously");
    }
  }
  if (pieces_.back().to) {
    throw InputError("last weight piece must extend to +inf");
  }
  const auto& first = pieces_.front();
  if (domain_.kind == DomainKind::Bilateral) {
    if (first.from) throw InputError("bilateral weight pieces must start at -inf");
  } else if (first.from && *first.from > 1) {
    throw InputError("unilateral weight pieces must cover indices from 1");
  }
}

WeightSequence WeightSequence::constant(Complex c, IndexDomain domain) {
  double mag = std::abs(c);
  return WeightSequence({WeightPiece{std::nullopt, std::nullopt, WeightRule::constant(c)}},
                        domain, mag, mag);
}

std::optional<Index> WeightSequence::min_index() const {
  if (domain_.kind == DomainKind::Unilateral) return Index{1};
  return std::nullopt;
}

Complex WeightSequence::at(Index k) const {
  if (auto mn = min_index(); mn && k < *mn) {
    std::ostringstream os;
    os << "weight index " << k << " below the unilateral range";
    throw DomainError(os.str());
  }
  for (const auto& p : pieces_) {
    bool lo_ok = !p.from || k >= *p.from;
    bool hi_ok = !p.to || k <= *p.to;
    if (lo_ok && hi_ok) {
      Complex w = p.rule.eval(k);
      double mag = std::abs(w);
      if (mag < nonzero_floor_) {
        std::ostringstream os;
        os << "|a_" << k << "| = " << mag << " below the nonzero floor " << nonzero_floor_;
        throw WeightError(os.str());
      }
      if (declared_bound_ && mag > *declared_bound_) {
        std::ostringstream os;
        os << "|a_" << k << "| = " << mag << " above the declared bound " << *declared_bound_;
        throw WeightError(os.str());
      }
      return w;
    }
  }
  std::ostringstream os;
  os << "no weight piece covers index " << k;
  throw WeightError(os.str());
}

ShiftOperator::ShiftOperator(WeightSequence weights, std::int64_t exponent)
    : weights_(std::move(weights)), exponent_(exponent) {
  if (exponent_ < 1) throw InputError("shift exponent must be >= 1");
}

ShiftFamily::ShiftFamily(std::vector<ShiftOperator> members) : members_(std::move(members)) {
  if (members_.empty()) throw InputError("shift family needs at least one member");
  for (std::size_t l = 1; l < members_.size(); ++l) {
    if (!(members_[l].domain() == members_[0].domain())) {
      throw DomainError("all family members must share one index domain");
    }
    if (members_[l].exponent() <= members_[l - 1].exponent()) {
      throw InputError("family exponents must be strictly increasing");
    }
  }
}

double ScaledEntry::logmag() const {
  double m = std::abs(mant);
  if (m == 0.0) return -kInf;
  return std::log(m) + static_cast<double>(exp2) * std::numbers::ln2;
}

LogScalar ScaledEntry::to_log_scalar() const {
  if (std::abs(mant) == 0.0) return LogScalar::zero();
  return LogScalar(logmag(), std::arg(mant));
}

ScaledVector to_scaled(const SeqVector& v) {
  ScaledVector out;
  out.reserve(v.support_size());
  for (const auto& [k, z] : v.entries()) {
    Complex mant = z;
    std::int64_t exp2 = 0;
    normalize(mant, exp2);
    out.push_back(ScaledEntry{k, mant, exp2});
  }
  return out;
}

SeqVector materialize(IndexDomain domain, std::span<const ScaledEntry> entries) {
  auto v = try_materialize(domain, entries);
  if (!v) {
    throw OverflowError("image coefficient exceeds the double range");
  }
  return *std::move(v);
}

std::optional<SeqVector> try_materialize(IndexDomain domain,
                                         std::span<const ScaledEntry> entries) {
  std::vector<SeqVector::Entry> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    int shift = e.exp2 > std::numeric_limits<int>::max()
                    ? std::numeric_limits<int>::max()
                    : (e.exp2 < std::numeric_limits<int>::min() ? std::numeric_limits<int>::min()
                                                                : static_cast<int>(e.exp2));
    Complex z{std::ldexp(e.mant.real(), shift), std::ldexp(e.mant.imag(), shift)};
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    if (std::abs(z) != 0.0) out.emplace_back(e.index, z);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return SeqVector::from_sorted_unchecked(domain, std::move(out));
}

ScaledVector power_image_scaled(const ShiftOperator& shift, std::int64_t m,
                                std::span<const ScaledEntry> v) {
  if (m < 1) throw InputError("power count m must be >= 1");
  const Index p = shift.exponent() * m;
  const bool unilateral = shift.domain().kind == DomainKind::Unilateral;
  ScaledVector out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (unilateral && e.index - p < 0) continue;
    Scaled w = window_scaled_product(shift.weights(), e.index - p + 1, e.index);
    w.mul(e.mant);
    if (w.is_zero()) continue;
    out.push_back(ScaledEntry{e.index - p, w.mant, w.exp2 + e.exp2});
  }
  return out;
}

ScaledVector right_inverse_image_scaled(const ShiftOperator& shift, std::int64_t n_q,
                                        std::span<const ScaledEntry> v) {
  if (n_q < 1) throw InputError("schedule value n_q must be >= 1");
  const Index p = shift.exponent() * n_q;
  ScaledVector out;
  out.reserve(v.size());
  for (const auto& e : v) {
    Scaled s;
    s.mul(Complex(static_cast<double>(n_q), 0.0));
    s.mul(e.mant);
    Scaled w = window_scaled_product(shift.weights(), e.index + 1, e.index + p);
    s.div(w.mant);
    if (s.is_zero()) continue;
    out.push_back(ScaledEntry{e.index + p, s.mant, s.exp2 - w.exp2 + e.exp2});
  }
  return out;
}

ScaledVector scale_scaled(Complex factor, ScaledVector v) {
  for (auto& e : v) {
    e.mant *= factor;
    normalize(e.mant, e.exp2);
  }
  std::erase_if(v, [](const ScaledEntry& e) { return std::abs(e.mant) == 0.0; });
  return v;
}

double log_norm(std::span<const ScaledEntry> entries, const SpaceSpec& space) {
  if (entries.empty()) return -kInf;
  if (space.norm == SpaceSpec::Norm::Sup) {
    double best = -kInf;
    for (const auto& e : entries) best = std::max(best, e.logmag());
    return best;
  }
  double top = -kInf;
  for (const auto& e : entries) top = std::max(top, e.logmag());
  if (top == -kInf) return -kInf;
  double sum = 0.0;
  for (const auto& e : entries) sum += std::exp(space.p * (e.logmag() - top));
  return top + std::log(sum) / space.p;
}

SeqVector apply(const ShiftOperator& shift, const SeqVector& v) {
  if (!(v.domain() == shift.domain())) {
    throw DomainError("vector domain does not match the shift domain");
  }
  const bool unilateral = shift.domain().kind == DomainKind::Unilateral;
  std::vector<SeqVector::Entry> out;
  out.reserve(v.support_size());
  for (const auto& [k, x] : v.entries()) {
    if (unilateral && k == 0) continue;
    Complex z = shift.weights().at(k) * x;
    if (std::abs(z) != 0.0) out.emplace_back(k - 1, z);
  }
  return SeqVector::from_sorted_unchecked(v.domain(), std::move(out));
}

LogScalar weight_window_log_product(const WeightSequence& a, Index lo, Index hi) {
  check_window_domain(a, lo, hi);
  if (lo > hi) return LogScalar::one();
  double logmag = 0.0;
  double phase = 0.0;
  for (Index i = lo; i <= hi; ++i) {
    Complex w = a.at(i);
    logmag += std::log(std::abs(w));
    phase += std::arg(w);
  }
  return LogScalar(logmag, phase);
}

SeqVector apply_power(const ShiftOperator& shift, std::int64_t m, const SeqVector& v) {
  if (!(v.domain() == shift.domain())) {
    throw DomainError("vector domain does not match the shift domain");
  }
  auto img = power_image_scaled(shift, m, to_scaled(v));
  return materialize(v.domain(), img);
}

SeqVector right_inverse(const ShiftOperator& shift, std::int64_t n_q, const SeqVector& v) {
  if (!(v.domain() == shift.domain())) {
    throw DomainError("vector domain does not match the shift domain");
  }
  auto img = right_inverse_image_scaled(shift, n_q, to_scaled(v));
  return materialize(v.domain(), img);
}

}  // namespace cdlab
