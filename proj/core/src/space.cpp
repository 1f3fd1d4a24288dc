#include "cdlab/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cdlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kMaxLogDouble = std::log(std::numeric_limits<double>::max());
}  // namespace

SpaceSpec SpaceSpec::lp(double p, IndexDomain d) {
  if (!(p >= 1.0)) {
    throw InputError("lp norm requires p >= 1");
  }
  return SpaceSpec{Norm::Lp, p, d};
}

double LogScalar::reduce_phase(double phi) {
  double r = std::remainder(phi, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

LogScalar::LogScalar(double logmag, double phase)
    : logmag_(logmag), phase_(logmag == -kInf ? 0.0 : reduce_phase(phase)) {}

LogScalar LogScalar::zero() { return LogScalar(-kInf, 0.0); }

bool LogScalar::is_zero() const { return logmag_ == -kInf; }

LogScalar LogScalar::from_complex(Complex z) {
  if (z == Complex{0.0, 0.0}) return zero();
  return LogScalar(std::log(std::abs(z)), std::arg(z));
}

LogScalar LogScalar::operator*(const LogScalar& rhs) const {
  if (is_zero() || rhs.is_zero()) return zero();
  return LogScalar(logmag_ + rhs.logmag_, phase_ + rhs.phase_);
}

LogScalar LogScalar::reciprocal() const {
  if (is_zero()) {
    throw InputError("reciprocal of the zero scalar");
  }
  return LogScalar(-logmag_, -phase_);
}

LogScalar LogScalar::pow(std::int64_t n) const {
  if (is_zero()) return n == 0 ? one() : zero();
  return LogScalar(logmag_ * static_cast<double>(n),
                   phase_ * static_cast<double>(n));
}

Complex LogScalar::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  if (logmag_ > kMaxLogDouble) {
    std::ostringstream os;
    os << "log-magnitude " << logmag_ << " exceeds double range";
    throw OverflowError(os.str());
  }
  double mag = std::exp(logmag_);
  return {mag * std::cos(phase_), mag * std::sin(phase_)};
}

SeqVector SeqVector::from_sorted_unchecked(IndexDomain domain, std::vector<Entry> entries) {
  SeqVector v(domain);
  v.entries_ = std::move(entries);
  return v;
}

Complex SeqVector::at(Index k) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                             [](const Entry& e, Index key) { return e.first < key; });
  if (it != entries_.end() && it->first == k) return it->second;
  return {0.0, 0.0};
}

SeqVector make_vector(IndexDomain domain, std::span<const SeqVector::Entry> entries) {
  std::vector<SeqVector::Entry> kept;
  kept.reserve(entries.size());
  for (const auto& [k, z] : entries) {
    if (!domain.contains(k)) {
      std::ostringstream os;
      os << "index " << k << " outside the "
         << (domain.kind == DomainKind::Unilateral ? "unilateral" : "bilateral")
         << " domain";
      throw DomainError(os.str());
    }
    if (std::abs(z) == 0.0) continue;
    kept.emplace_back(k, z);
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < kept.size(); ++i) {
    if (kept[i].first == kept[i - 1].first) {
      std::ostringstream os;
      os << "duplicate index " << kept[i].first;
      throw InputError(os.str());
    }
  }
  // Duplicates among dropped zero entries are also rejected: re-scan raw input.
  if (kept.size() != entries.size()) {
    std::vector<Index> idx;
    idx.reserve(entries.size());
    for (const auto& e : entries) idx.push_back(e.first);
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
      throw InputError("duplicate index among input entries");
    }
  }
  return SeqVector::from_sorted_unchecked(domain, std::move(kept));
}

SeqVector make_vector(IndexDomain domain, std::initializer_list<SeqVector::Entry> entries) {
  return make_vector(domain, std::span<const SeqVector::Entry>(entries.begin(), entries.size()));
}

double norm(const SeqVector& v, const SpaceSpec& space) {
  if (!(v.domain() == space.domain)) {
    throw DomainError("vector domain does not match the space domain");
  }
  if (space.norm == SpaceSpec::Norm::Sup) {
    double best = 0.0;
    for (const auto& [k, z] : v.entries()) best = std::max(best, std::abs(z));
    return best;
  }
  if (space.p == 2.0) {
    double sum = 0.0;
    for (const auto& [k, z] : v.entries()) sum += std::norm(z);
    return std::sqrt(sum);
  }
  double sum = 0.0;
  for (const auto& [k, z] : v.entries()) sum += std::pow(std::abs(z), space.p);
  return std::pow(sum, 1.0 / space.p);
}

SeqVector combine(Complex alpha, const SeqVector& u, Complex beta, const SeqVector& v) {
  if (!(u.domain() == v.domain())) {
    throw DomainError("combine requires matching index domains");
  }
  std::vector<SeqVector::Entry> out;
  out.reserve(u.support_size() + v.support_size());
  auto iu = u.entries().begin(), eu = u.entries().end();
  auto iv = v.entries().begin(), ev = v.entries().end();
  auto push = [&out](Index k, Complex z) {
    if (std::abs(z) != 0.0) out.emplace_back(k, z);
  };
  while (iu != eu || iv != ev) {
    if (iv == ev || (iu != eu && iu->first < iv->first)) {
      push(iu->first, alpha * iu->second);
      ++iu;
    } else if (iu == eu || iv->first < iu->first) {
      push(iv->first, beta * iv->second);
      ++iv;
    } else {
      push(iu->first, alpha * iu->second + beta * iv->second);
      ++iu;
      ++iv;
    }
  }
  return SeqVector::from_sorted_unchecked(u.domain(), std::move(out));
}

}  // namespace cdlab
