#include "cdlab/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

namespace cdlab {

namespace {

enum class ScanKind { Unilateral, Bilateral, Salas };

struct ScanSpec {
  ScanKind kind;
  std::int64_t q;
  double log_eps;
};

// Window logmag through the shared log-domain primitive; margins recompute
// bit-identically from the same call.
double window_logmag(const WeightSequence& a, Index lo, Index hi) {
  return weight_window_log_product(a, lo, hi).logmag();
}

// Visits the margins of the inequality system at scan value m in canonical
// order (j ascending; per j: forward per member, backward per member, then
// cross pairs). The visitor returns false to stop early.
bool visit_margins(const ShiftFamily& family, std::int64_t m, const ScanSpec& spec,
                   const std::function<bool(const MarginEntry&)>& visit) {
  const int n_members = static_cast<int>(family.size());
  const double log_m = std::log(static_cast<double>(m));
  const double scale = spec.kind == ScanKind::Salas ? 0.0 : log_m;
  const Index j_lo = spec.kind == ScanKind::Unilateral ? 0 : -spec.q;
  const Index j_hi = spec.q;

  for (Index j = j_lo; j <= j_hi; ++j) {
    for (int l = 1; l <= n_members; ++l) {
      const auto& op = family.member(l - 1);
      const Index rl_m = op.exponent() * m;
      double fwd = window_logmag(op.weights(), j + 1, j + rl_m);
      MarginEntry e{{ConditionId::ForwardGrowth, j, l, 0}, fwd - scale + spec.log_eps};
      if (!visit(e)) return false;
    }
    if (spec.kind != ScanKind::Unilateral) {
      for (int l = 1; l <= n_members; ++l) {
        const auto& op = family.member(l - 1);
        const Index rl_m = op.exponent() * m;
        double bwd = window_logmag(op.weights(), j - rl_m + 1, j);
        MarginEntry e{{ConditionId::BackwardDecay, j, l, 0}, spec.log_eps - bwd + scale};
        if (!visit(e)) return false;
      }
    }
    if (spec.kind != ScanKind::Salas) {
      for (int l = 2; l <= n_members; ++l) {
        for (int s = 1; s < l; ++s) {
          const auto& op_l = family.member(l - 1);
          const auto& op_s = family.member(s - 1);
          const Index rl = op_l.exponent();
          const Index rs = op_s.exponent();
          double upper_num = window_logmag(op_l.weights(), j + 1, j + rl * m);
          double upper_den = window_logmag(op_s.weights(), j + (rl - rs) * m + 1, j + rl * m);
          MarginEntry up{{ConditionId::CrossUpper, j, l, s},
                         upper_num - upper_den + spec.log_eps};
          if (!visit(up)) return false;
          if (spec.kind == ScanKind::Bilateral) {
            double lower_num = window_logmag(op_l.weights(), j + (rs - rl) * m + 1, j + rs * m);
            double lower_den = window_logmag(op_s.weights(), j + 1, j + rs * m);
            MarginEntry low{{ConditionId::CrossLower, j, l, s},
                            spec.log_eps - (lower_num - lower_den)};
            if (!visit(low)) return false;
          }
        }
      }
    }
  }
  return true;
}

// First failing margin at m, or nullopt when every margin is positive.
std::optional<MarginEntry> first_failure(const ShiftFamily& family, std::int64_t m,
                                         const ScanSpec& spec) {
  std::optional<MarginEntry> fail;
  visit_margins(family, m, spec, [&fail](const MarginEntry& e) {
    if (e.margin > 0.0) return true;
    fail = e;
    return false;
  });
  return fail;
}

std::vector<MarginEntry> all_margins(const ShiftFamily& family, std::int64_t m,
                                     const ScanSpec& spec) {
  std::vector<MarginEntry> out;
  visit_margins(family, m, spec, [&out](const MarginEntry& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

// Scans m = 1..m_max for the first value where every margin is positive.
// Work is split into rounds of per-m evaluations; each evaluation is pure,
// so the outcome is independent of the thread count.
CriterionReport scan(const ShiftFamily& family, double epsilon, std::int64_t q,
                     std::int64_t m_max, ScanKind kind, unsigned threads) {
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (q < 0) throw InputError("q must be nonnegative");
  if (m_max < 1) throw InputError("m_max must be >= 1");

  const ScanSpec spec{kind, q, std::log(epsilon)};
  CriterionReport report;
  report.m_max = m_max;
  report.family_kind = family.domain().kind == DomainKind::Unilateral
                           ? FamilyKind::Unilateral
                           : FamilyKind::Bilateral;

  const unsigned workers = std::max(1u, threads);
  const std::int64_t block = static_cast<std::int64_t>(workers) * 16;

  for (std::int64_t start = 1; start <= m_max; start += block) {
    const std::int64_t count = std::min(block, m_max - start + 1);
    std::vector<std::optional<MarginEntry>> fails(static_cast<std::size_t>(count));
    if (workers == 1 || count == 1) {
      for (std::int64_t i = 0; i < count; ++i) {
        fails[static_cast<std::size_t>(i)] = first_failure(family, start + i, spec);
      }
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&, t]() {
          for (std::int64_t i = t; i < count; i += workers) {
            fails[static_cast<std::size_t>(i)] = first_failure(family, start + i, spec);
          }
        });
      }
      for (auto& th : pool) th.join();
    }
    for (std::int64_t i = 0; i < count; ++i) {
      const auto& fail = fails[static_cast<std::size_t>(i)];
      const std::int64_t m = start + i;
      if (!fail) {
        report.status = CriterionReport::Status::Found;
        report.witness_m = m;
        report.margins = all_margins(family, m, spec);
        return report;
      }
      report.blockers.push_back(Blocker{m, fail->key, fail->margin});
    }
  }
  report.status = CriterionReport::Status::NotFoundUpTo;
  return report;
}

ScanKind level_kind(const ShiftFamily& family) {
  return family.domain().kind == DomainKind::Unilateral ? ScanKind::Unilateral
                                                        : ScanKind::Bilateral;
}

}  // namespace

const char* condition_name(ConditionId c) {
  switch (c) {
    case ConditionId::ForwardGrowth: return "forward_growth";
    case ConditionId::BackwardDecay: return "backward_decay";
    case ConditionId::CrossUpper: return "cross_upper";
    case ConditionId::CrossLower: return "cross_lower";
  }
  return "unknown";
}

CriterionReport check_unilateral(const CriterionQuery& query, unsigned threads) {
  if (query.family.domain().kind != DomainKind::Unilateral) {
    throw DomainError("check_unilateral requires a unilateral family");
  }
  return scan(query.family, query.epsilon, query.q, query.m_max, ScanKind::Unilateral,
              threads);
}

CriterionReport check_bilateral(const CriterionQuery& query, unsigned threads) {
  if (query.family.domain().kind != DomainKind::Bilateral) {
    throw DomainError("check_bilateral requires a bilateral family");
  }
  return scan(query.family, query.epsilon, query.q, query.m_max, ScanKind::Bilateral,
              threads);
}

CriterionReport check_salas_comparison(const ShiftFamily& family, double epsilon,
                                       std::int64_t q, std::int64_t m_max,
                                       unsigned threads) {
  if (family.size() != 1) {
    throw InputError("the comparison scan takes a single-member family");
  }
  if (family.domain().kind != DomainKind::Bilateral) {
    throw DomainError("the comparison scan requires a bilateral family");
  }
  return scan(family, epsilon, q, m_max, ScanKind::Salas, threads);
}

WitnessSchedule build_schedule(const ShiftFamily& family, std::int64_t q_max,
                               std::int64_t m_search_cap, unsigned threads) {
  if (q_max < 1) throw InputError("q_max must be >= 1");
  if (m_search_cap < 1) throw InputError("m_search_cap must be >= 1");
  (void)threads;  // level scans are short; kept for interface parity

  WitnessSchedule schedule;
  schedule.search_cap = m_search_cap;
  std::int64_t n_prev = 0;
  for (std::int64_t q = 1; q <= q_max; ++q) {
    const ScanSpec spec{level_kind(family), q, -std::log(static_cast<double>(q))};
    std::optional<std::int64_t> hit;
    for (std::int64_t n = n_prev + 1; n <= m_search_cap; ++n) {
      if (!first_failure(family, n, spec)) {
        hit = n;
        break;
      }
    }
    if (!hit) {
      schedule.incomplete_at = q;
      return schedule;
    }
    schedule.entries.push_back(ScheduleEntry{q, *hit});
    n_prev = *hit;
  }
  return schedule;
}

std::vector<MarginEntry> level_margins(const ShiftFamily& family, std::int64_t q,
                                       std::int64_t n) {
  const ScanSpec spec{level_kind(family), q, -std::log(static_cast<double>(q))};
  return all_margins(family, n, spec);
}

}  // namespace cdlab
