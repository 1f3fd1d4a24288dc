#include "cdlab/config.hpp"

#include <fstream>
#include <sstream>

#include "cdlab/report.hpp"

namespace cdlab {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path, msg);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(path, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

// A scalar is a bare number (real) or a [re, im] pair.
Complex as_complex(const json& j, const std::string& path) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  fail(path, "expected a number or a [re, im] pair");
}

std::optional<Index> as_edge(const json& j, const std::string& path, bool is_from) {
  if (j.is_number_integer()) return j.get<Index>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (is_from && s == "-inf") return std::nullopt;
    if (!is_from && s == "inf") return std::nullopt;
  }
  fail(path, is_from ? "expected an integer or \"-inf\"" : "expected an integer or \"inf\"");
}

WeightRule as_rule(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object with 'const' or 'affine'");
  if (j.contains("const")) {
    return WeightRule::constant(as_complex(j.at("const"), path + ".const"));
  }
  if (j.contains("affine")) {
    const json& a = j.at("affine");
    if (!a.is_array() || a.size() != 2) fail(path + ".affine", "expected [c0, c1]");
    return WeightRule::affine(as_complex(a[0], path + ".affine[0]"),
                              as_complex(a[1], path + ".affine[1]"));
  }
  fail(path, "expected 'const' or 'affine'");
}

WeightSequence as_weights(const json& j, IndexDomain domain, const std::string& path) {
  const json& pieces_json = require(j, "pieces", path);
  if (!pieces_json.is_array() || pieces_json.empty()) {
    fail(path + ".pieces", "expected a nonempty array");
  }
  std::vector<WeightPiece> pieces;
  pieces.reserve(pieces_json.size());
  for (std::size_t i = 0; i < pieces_json.size(); ++i) {
    const std::string ppath = path + ".pieces[" + std::to_string(i) + "]";
    const json& pj = pieces_json[i];
    WeightPiece piece;
    piece.from = as_edge(require(pj, "from", ppath), ppath + ".from", true);
    piece.to = as_edge(require(pj, "to", ppath), ppath + ".to", false);
    piece.rule = as_rule(require(pj, "rule", ppath), ppath + ".rule");
    pieces.push_back(std::move(piece));
  }
  std::optional<double> bound;
  if (j.contains("bound")) bound = as_double(j.at("bound"), path + ".bound");
  double floor = 1e-12;
  if (j.contains("nonzero_floor")) {
    floor = as_double(j.at("nonzero_floor"), path + ".nonzero_floor");
  }
  try {
    return WeightSequence(std::move(pieces), domain, bound, floor);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

ShiftFamily as_family(const json& j, IndexDomain domain, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of shift members");
  std::vector<ShiftOperator> members;
  members.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string mpath = path + "[" + std::to_string(i) + "]";
    const json& mj = j[i];
    std::int64_t exponent = as_int(require(mj, "exponent", mpath), mpath + ".exponent");
    WeightSequence weights = as_weights(require(mj, "weights", mpath), domain, mpath + ".weights");
    try {
      members.emplace_back(std::move(weights), exponent);
    } catch (const Error& e) {
      fail(mpath, e.what());
    }
  }
  try {
    return ShiftFamily(std::move(members));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

SpaceSpec as_space(const json& j, const std::string& path) {
  const std::string domain_str = as_string(require(j, "domain", path), path + ".domain");
  IndexDomain domain;
  if (domain_str == "unilateral") {
    domain = unilateral;
  } else if (domain_str == "bilateral") {
    domain = bilateral;
  } else {
    fail(path + ".domain", "expected \"unilateral\" or \"bilateral\"");
  }
  const json& norm = require(j, "norm", path);
  if (norm.is_string() && norm.get<std::string>() == "sup") {
    return SpaceSpec::sup(domain);
  }
  if (norm.is_object() && norm.contains("lp")) {
    double p = as_double(norm.at("lp"), path + ".norm.lp");
    try {
      return SpaceSpec::lp(p, domain);
    } catch (const Error& e) {
      fail(path + ".norm.lp", e.what());
    }
  }
  fail(path + ".norm", "expected \"sup\" or {\"lp\": p}");
}

Ball as_ball(const json& j, const SpaceSpec& space, const std::string& path) {
  Ball b;
  b.center = vector_from_json(require(j, "center", path), space.domain, path + ".center");
  b.radius = as_double(require(j, "radius", path), path + ".radius");
  if (!(b.radius > 0.0)) fail(path + ".radius", "radius must be positive");
  b.space = space;
  return b;
}

std::vector<Ball> as_balls(const json& j, const SpaceSpec& space, std::size_t expected,
                           const std::string& path) {
  if (!j.is_array() || j.size() != expected) {
    fail(path, "expected one ball per family member (" + std::to_string(expected) + ")");
  }
  std::vector<Ball> balls;
  balls.reserve(expected);
  for (std::size_t i = 0; i < j.size(); ++i) {
    balls.push_back(as_ball(j[i], space, path + "[" + std::to_string(i) + "]"));
  }
  return balls;
}

CheckParams as_check_params(const json& j, const std::string& path) {
  CheckParams p;
  p.epsilon = as_double(require(j, "epsilon", path), path + ".epsilon");
  if (!(p.epsilon > 0.0)) fail(path + ".epsilon", "epsilon must be positive");
  p.q = as_int(require(j, "q", path), path + ".q");
  if (p.q < 0) fail(path + ".q", "q must be nonnegative");
  p.m_max = as_int(require(j, "m_max", path), path + ".m_max");
  if (p.m_max < 1) fail(path + ".m_max", "m_max must be >= 1");
  return p;
}

ScheduleParams as_schedule_params(const json& j, const std::string& path) {
  ScheduleParams p;
  p.q_max = as_int(require(j, "q_max", path), path + ".q_max");
  if (p.q_max < 1) fail(path + ".q_max", "q_max must be >= 1");
  p.m_search_cap = as_int(require(j, "m_search_cap", path), path + ".m_search_cap");
  if (p.m_search_cap < 1) fail(path + ".m_search_cap", "m_search_cap must be >= 1");
  return p;
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::CheckUnilateral: return "check-unilateral";
    case Command::CheckBilateral: return "check-bilateral";
    case Command::Schedule: return "schedule";
    case Command::Construct: return "construct";
    case Command::ProbeTransitivity: return "probe-transitivity";
    case Command::ProbeBlowUpCollapse: return "probe-blow-up-collapse";
    case Command::ProbeMixing: return "probe-mixing";
    case Command::SalasCompare: return "salas-compare";
  }
  return "unknown";
}

std::optional<Command> command_from_name(const std::string& name) {
  for (Command c : {Command::CheckUnilateral, Command::CheckBilateral, Command::Schedule,
                    Command::Construct, Command::ProbeTransitivity,
                    Command::ProbeBlowUpCollapse, Command::ProbeMixing, Command::SalasCompare}) {
    if (name == command_name(c)) return c;
  }
  return std::nullopt;
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("$", "config must be a JSON object");

  const std::string cmd_str = as_string(require(doc, "command", "$"), "$.command");
  auto cmd = command_from_name(cmd_str);
  if (!cmd) fail("$.command", "unknown command '" + cmd_str + "'");

  SpaceSpec space = as_space(require(doc, "space", "$"), "$.space");
  ShiftFamily family = as_family(require(doc, "family", "$"), space.domain, "$.family");

  ExperimentConfig config{*cmd, space, std::move(family), CheckParams{},
                          std::nullopt,  {},           doc};

  const json& params = require(doc, "params", "$");
  const std::string ppath = "$.params";
  switch (*cmd) {
    case Command::CheckUnilateral:
    case Command::CheckBilateral:
    case Command::SalasCompare:
      config.params = as_check_params(params, ppath);
      break;
    case Command::Schedule:
      config.params = as_schedule_params(params, ppath);
      break;
    case Command::Construct: {
      ConstructParams p;
      const json& tj = require(params, "targets", ppath);
      if (!tj.is_array() || tj.empty()) fail(ppath + ".targets", "expected a nonempty array");
      for (std::size_t r = 0; r < tj.size(); ++r) {
        const std::string rpath = ppath + ".targets[" + std::to_string(r) + "]";
        const json& row = tj[r];
        if (!row.is_array() || row.size() != config.family.size()) {
          fail(rpath, "expected one target vector per family member");
        }
        std::vector<SeqVector> vecs;
        vecs.reserve(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) {
          vecs.push_back(vector_from_json(row[i], space.domain,
                                          rpath + "[" + std::to_string(i) + "]"));
        }
        p.targets.rows.push_back(std::move(vecs));
      }
      p.schedule = as_schedule_params(require(params, "schedule", ppath), ppath + ".schedule");
      config.params = std::move(p);
      break;
    }
    case Command::ProbeTransitivity: {
      TransitivityParams p;
      p.source = as_ball(require(params, "u", ppath), space, ppath + ".u");
      p.targets = as_balls(require(params, "vs", ppath), space, config.family.size(),
                           ppath + ".vs");
      p.n_max = as_int(require(params, "n_max", ppath), ppath + ".n_max");
      if (p.n_max < 1) fail(ppath + ".n_max", "n_max must be >= 1");
      config.params = std::move(p);
      break;
    }
    case Command::ProbeBlowUpCollapse: {
      BlowUpCollapseParams p;
      p.zero_ball = as_ball(require(params, "w", ppath), space, ppath + ".w");
      p.v0 = as_ball(require(params, "v0", ppath), space, ppath + ".v0");
      p.targets = as_balls(require(params, "vs", ppath), space, config.family.size(),
                           ppath + ".vs");
      p.n_max = as_int(require(params, "n_max", ppath), ppath + ".n_max");
      if (p.n_max < 1) fail(ppath + ".n_max", "n_max must be >= 1");
      config.params = std::move(p);
      break;
    }
    case Command::ProbeMixing: {
      MixingParams p;
      p.source = as_ball(require(params, "u", ppath), space, ppath + ".u");
      p.targets = as_balls(require(params, "vs", ppath), space, config.family.size(),
                           ppath + ".vs");
      p.n_from = as_int(require(params, "n_from", ppath), ppath + ".n_from");
      p.n_to = as_int(require(params, "n_to", ppath), ppath + ".n_to");
      if (p.n_from < 1 || p.n_from > p.n_to) {
        fail(ppath, "mixing range requires 1 <= n_from <= n_to");
      }
      config.params = std::move(p);
      break;
    }
  }

  if (doc.contains("out")) {
    config.out_path = as_string(doc.at("out"), "$.out");
  }

  for (std::size_t l = 0; l < config.family.size(); ++l) {
    if (!config.family.member(l).weights().declared_bound()) {
      config.warnings.push_back("family member " + std::to_string(l + 1) +
                                " declares no weight bound; the induced operator may be "
                                "unbounded");
    }
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open config file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(path, std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace cdlab
