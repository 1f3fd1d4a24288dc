#include "cdlab/report.hpp"

#include <chrono>

#include "cdlab/orbits.hpp"

namespace cdlab {

namespace {

json complex_to_json(Complex z) {
  if (z.imag() == 0.0) return json(z.real());
  return json::array({z.real(), z.imag()});
}

json margin_key_to_json(const MarginKey& key) {
  json j;
  j["condition"] = condition_name(key.condition);
  j["j"] = key.j;
  j["l"] = key.l;
  if (key.s > 0) j["s"] = key.s;
  return j;
}

json blockers_to_json(const std::vector<Blocker>& blockers) {
  json arr = json::array();
  for (const auto& b : blockers) {
    json j = margin_key_to_json(b.key);
    j["m"] = b.m;
    j["margin"] = b.margin;
    arr.push_back(std::move(j));
  }
  return arr;
}

const char* family_kind_name(FamilyKind k) {
  return k == FamilyKind::Unilateral ? "unilateral" : "bilateral";
}

json check_report(const CriterionReport& rep) {
  json result;
  result["family_kind"] = family_kind_name(rep.family_kind);
  result["m_max"] = rep.m_max;
  if (rep.found()) {
    result["witness_m"] = rep.witness_m;
    result["margins"] = margins_to_json(rep.margins);
  }
  result["blockers"] = blockers_to_json(rep.blockers);
  return result;
}

json schedule_to_json(const WitnessSchedule& schedule) {
  json entries = json::array();
  for (const auto& e : schedule.entries) {
    entries.push_back(json{{"q", e.q}, {"n", e.n}});
  }
  json j;
  j["entries"] = std::move(entries);
  j["search_cap"] = schedule.search_cap;
  j["complete"] = schedule.complete();
  if (schedule.incomplete_at) j["incomplete_at"] = *schedule.incomplete_at;
  return j;
}

json slacks_to_json(const StepSlacks& s) {
  json j;
  j["step_norm"] = s.step_norm;
  j["prior_orbit_of_step"] = s.prior_orbit_of_step;
  j["right_inverse_norm"] = s.smap_norm;
  j["prior_orbit_of_right_inverse"] = s.prior_orbit_of_smap;
  j["diagonal_identity"] = s.diagonal_identity;
  j["cross_term_at_current"] = s.offdiag_at_current;
  j["prefix_at_current"] = s.prefix_at_current;
  return j;
}

json diary_to_json(const ConstructionDiary& diary) {
  json arr = json::array();
  for (const auto& step : diary.steps) {
    json j;
    j["j"] = step.j;
    j["schedule_index"] = step.schedule_index;
    j["q"] = step.q;
    j["n"] = step.n;
    j["x_step"] = vector_to_json(step.x_step);
    j["slacks"] = slacks_to_json(step.slacks);
    arr.push_back(std::move(j));
  }
  return arr;
}

json error_rows_to_json(const std::vector<ErrorRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back(json{{"l", r.l}, {"j", r.j}, {"error", r.error}, {"bound", r.bound},
                       {"pass", r.pass}});
  }
  return arr;
}

json distances_to_json(const std::vector<double>& d) {
  json arr = json::array();
  for (double x : d) arr.push_back(x);
  return arr;
}

struct Outcome {
  std::string status;
  json result;
  int exit_code = 0;
};

Outcome run_command(const ExperimentConfig& config, unsigned threads) {
  switch (config.command) {
    case Command::CheckUnilateral:
    case Command::CheckBilateral: {
      const auto& p = std::get<CheckParams>(config.params);
      CriterionQuery query{config.family, p.epsilon, p.q, p.m_max};
      CriterionReport rep = config.command == Command::CheckUnilateral
                                ? check_unilateral(query, threads)
                                : check_bilateral(query, threads);
      return Outcome{rep.found() ? "found" : "not_found_up_to", check_report(rep),
                     rep.found() ? 0 : 2};
    }
    case Command::SalasCompare: {
      const auto& p = std::get<CheckParams>(config.params);
      CriterionReport rep =
          check_salas_comparison(config.family, p.epsilon, p.q, p.m_max, threads);
      return Outcome{rep.found() ? "found" : "not_found_up_to", check_report(rep),
                     rep.found() ? 0 : 2};
    }
    case Command::Schedule: {
      const auto& p = std::get<ScheduleParams>(config.params);
      WitnessSchedule schedule =
          build_schedule(config.family, p.q_max, p.m_search_cap, threads);
      return Outcome{schedule.complete() ? "complete" : "schedule_incomplete",
                     schedule_to_json(schedule), schedule.complete() ? 0 : 2};
    }
    case Command::Construct: {
      const auto& p = std::get<ConstructParams>(config.params);
      WitnessSchedule schedule =
          build_schedule(config.family, p.schedule.q_max, p.schedule.m_search_cap, threads);
      json result;
      result["schedule"] = schedule_to_json(schedule);
      try {
        ConstructedVector built = construct(config.family, schedule, p.targets, config.space);
        result["x"] = vector_to_json(built.x);
        result["diary"] = diary_to_json(built.diary);
        result["errors"] = error_rows_to_json(built.errors);
        return Outcome{"constructed", std::move(result), 0};
      } catch (const ConstructionStuck& e) {
        result["stuck_at_step"] = e.step();
        result["blocking_inequality"] = e.inequality();
        return Outcome{"construction_stuck", std::move(result), 2};
      }
    }
    case Command::ProbeTransitivity: {
      const auto& p = std::get<TransitivityParams>(config.params);
      TransitivityResult res = probe_transitivity(config.family, p.source, p.targets, p.n_max);
      json result;
      result["n_max"] = res.n_max;
      if (res.found()) {
        result["witness"] = json{{"n", res.witness->n},
                                 {"z", vector_to_json(res.witness->z)},
                                 {"distances", distances_to_json(res.witness->distances)}};
      }
      return Outcome{res.found() ? "witness_found" : "not_found_up_to", std::move(result),
                     res.found() ? 0 : 2};
    }
    case Command::ProbeBlowUpCollapse: {
      const auto& p = std::get<BlowUpCollapseParams>(config.params);
      BlowUpCollapseResult res =
          probe_blow_up_collapse(config.family, p.zero_ball, p.v0, p.targets, p.n_max);
      json result;
      result["n_max"] = res.n_max;
      if (res.found()) {
        const auto& w = *res.witness;
        result["witness"] =
            json{{"m", w.m},
                 {"near_zero", vector_to_json(w.near_zero)},
                 {"blow_up_distances", distances_to_json(w.blow_up_distances)},
                 {"near_v0", vector_to_json(w.near_v0)},
                 {"collapse_distances", distances_to_json(w.collapse_distances)}};
      }
      return Outcome{res.found() ? "witness_found" : "not_found_up_to", std::move(result),
                     res.found() ? 0 : 2};
    }
    case Command::ProbeMixing: {
      const auto& p = std::get<MixingParams>(config.params);
      MixingResult res =
          probe_mixing(config.family, p.source, p.targets, p.n_from, p.n_to);
      json rows = json::array();
      for (const auto& row : res.rows) {
        rows.push_back(json{{"n", row.n},
                            {"pass", row.pass},
                            {"distances", distances_to_json(row.distances)}});
      }
      json result;
      result["rows"] = std::move(rows);
      if (res.all_pass_from) result["all_pass_from"] = *res.all_pass_from;
      result["all_pass"] = res.all_pass();
      return Outcome{res.all_pass() ? "all_pass" : "some_fail", std::move(result),
                     res.all_pass() ? 0 : 2};
    }
  }
  throw InputError("unhandled command");
}

}  // namespace

json vector_to_json(const SeqVector& v) {
  json arr = json::array();
  for (const auto& [k, z] : v.entries()) {
    arr.push_back(json::array({json(k), complex_to_json(z)}));
  }
  return arr;
}

SeqVector vector_from_json(const json& j, IndexDomain domain, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of [index, value] pairs");
  std::vector<SeqVector::Entry> entries;
  entries.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string epath = path + "[" + std::to_string(i) + "]";
    const json& e = j[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer()) {
      throw ConfigError(epath, "expected [index, value]");
    }
    Index k = e[0].get<Index>();
    Complex z;
    if (e[1].is_number()) {
      z = Complex(e[1].get<double>(), 0.0);
    } else if (e[1].is_array() && e[1].size() == 2 && e[1][0].is_number() &&
               e[1][1].is_number()) {
      z = Complex(e[1][0].get<double>(), e[1][1].get<double>());
    } else {
      throw ConfigError(epath, "value must be a number or [re, im]");
    }
    entries.emplace_back(k, z);
  }
  try {
    return make_vector(domain, entries);
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

json margins_to_json(const std::vector<MarginEntry>& margins) {
  json arr = json::array();
  for (const auto& m : margins) {
    json j = margin_key_to_json(m.key);
    j["margin"] = m.margin;
    arr.push_back(std::move(j));
  }
  return arr;
}

json report_without_wall_time(json report) {
  report.erase("wall_time_ms");
  return report;
}

ExecutionResult execute(const ExperimentConfig& config, unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();

  json report;
  report["tool"] = "cdlab";
  report["command"] = command_name(config.command);
  report["config"] = config.echo;
  report["warnings"] = config.warnings;

  Outcome outcome = run_command(config, threads);
  report["status"] = outcome.status;
  report["result"] = std::move(outcome.result);

  const auto t1 = std::chrono::steady_clock::now();
  report["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0).count();
  return ExecutionResult{std::move(report), outcome.exit_code};
}

}  // namespace cdlab
