#pragma once

// Command implementations behind the shadowlab tool. Each command returns a
// JSON report, an optional CSV table and an exit code; argument parsing
// lives in tools/shadowlab.cpp.

#include "shadowlab/report.hpp"

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

namespace shadowlab::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

struct RunConfig {
  std::string command;
  std::string enumeration = "block";
  std::string metric;  // defaults to otw:<enumeration>
  std::string x, y;
  std::string delta0, L, grid;  // empty: command default
  std::uint64_t trials = 200;
  std::uint64_t seed = 1;
  std::uint64_t stages = 6;
  std::uint64_t entries = 10000;
  std::uint64_t order = 1;
  std::string forbid;  // comma-separated blocks for the product probe
  std::string out;
  std::string format = "json";
};

struct Outcome {
  Json report;
  std::string csv;
  int exit_code = kOk;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::shared_ptr<const Enumeration> make_enumeration(const std::string& name) {
  if (name == "block") return std::make_shared<BlockEnumeration>();
  if (name == "bad") return std::make_shared<BadEnumeration>();
  throw UsageError("unknown enumeration '" + name + "' (expected block or bad)");
}

/// prod | rate:dyadic | rate:harmonic, each optionally "*beta" | otw:block | otw:bad
inline Metric make_metric(const std::string& spec) {
  if (spec == "prod") return Metric::rate(RateSequence::dyadic());
  if (spec.rfind("otw:", 0) == 0) return Metric::otw(make_enumeration(spec.substr(4)));
  if (spec.rfind("rate:", 0) == 0) {
    std::string name = spec.substr(5);
    std::optional<Rational> beta;
    if (auto star = name.find('*'); star != std::string::npos) {
      beta = parse_rational(name.substr(star + 1));
      name.resize(star);
    }
    RateSequence r = name == "dyadic"     ? RateSequence::dyadic()
                     : name == "harmonic" ? RateSequence::harmonic()
                                          : throw UsageError("unknown rate '" + name + "'");
    return Metric::rate(beta ? RateSequence::scaled(r, *beta) : r);
  }
  throw UsageError("unknown metric '" + spec + "'");
}

/// "2^-a..2^-b" or a comma-separated list of rationals.
inline std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> grid;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = dyadic_exponent(parse_rational(text.substr(0, dots)));
    const auto hi = dyadic_exponent(parse_rational(text.substr(dots + 2)));
    if (!lo || !hi || *lo > *hi) throw UsageError("grid range must be 2^-a..2^-b with a <= b");
    return dyadic_grid(*lo, *hi);
  }
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) grid.push_back(parse_rational(item));
  if (grid.empty()) throw UsageError("empty grid");
  return grid;
}

inline std::vector<Word> parse_blocks(const std::string& text) {
  std::vector<Word> blocks;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) blocks.push_back(parse_word(item));
  return blocks;
}

inline Rational option_or(const std::string& text, const Rational& fallback) {
  return text.empty() ? fallback : parse_rational(text);
}

inline Json config_json(const RunConfig& c) {
  return {{"command", c.command}, {"enum", c.enumeration}, {"metric", c.metric},   {"x", c.x},
          {"y", c.y},             {"L", c.L},              {"delta0", c.delta0},   {"grid", c.grid},
          {"trials", c.trials},   {"seed", c.seed},        {"stages", c.stages},   {"entries", c.entries},
          {"order", c.order},     {"forbid", c.forbid},    {"format", c.format}};
}

struct Checks {
  Json list = Json::array();
  std::vector<std::string> failures;

  void add(const std::string& name, bool pass) {
    list.push_back({{"name", name}, {"pass", pass}});
    if (!pass) failures.push_back(name);
  }
};

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// ---------------------------------------------------------------------------

inline Json cmd_distance(const RunConfig& c, Checks&, std::string& csv) {
  if (c.x.empty() || c.y.empty()) throw UsageError("distance needs two point literals");
  const Metric metric = make_metric(c.metric);
  const UltraDistance d = metric.distance(parse_point(c.x), parse_point(c.y));
  csv = "model,rank,value\n" + d.model_name + "," + rank_json(d.rank).get<std::string>() + "," + d.value + "\n";
  return to_json(d);
}

inline Json cmd_probe(const RunConfig& c, Checks& checks, std::string& csv) {
  const Metric metric = make_metric(c.metric);
  if (metric.is_otw() && metric.enumeration().name() == "bad") {
    const Rational L = option_or(c.L, 2);
    const BadSystemProbe probe = bad_system_probe(L, c.stages, dynamic_cast<const BadEnumeration&>(metric.enumeration()));
    csv = "n,delta,stage_exceeds_L,refuted\n";
    for (const BadProbeRow& r : probe.rows) {
      checks.add("stage " + std::to_string(r.n) + " shadowable", !r.refuted);
      csv += std::to_string(r.n) + "," + format_rational(r.delta) + "," + (r.stage_exceeds_L ? "true" : "false") + "," +
             (r.refuted ? "true" : "false") + "\n";
    }
    return to_json(probe);
  }

  ProbeConfig config{.trials = c.trials, .seed = c.seed};
  std::optional<BlockShift> space;
  ShadowConstructor construct;
  if (metric.is_otw()) {
    config.system = "pscomp";
    config.L = option_or(c.L, 2);
    config.delta0 = option_or(c.delta0, Rational(1, 4));
    space = BlockShift::full(32);
    construct = good_otw_constructor(metric.shared_enumeration());
  } else {
    config.system = "product";
    config.L = option_or(c.L, 1);
    config.delta0 = option_or(c.delta0, metric.rate_sequence()(c.order - 1));
    const bool restricted = c.order > 1 || !c.forbid.empty();
    space = restricted ? BlockShift(c.order, 4, parse_blocks(c.forbid)) : BlockShift::full(32);
    construct = product_constructor(metric, *space);
  }
  config.grid = c.grid.empty() ? dyadic_grid(2, 12) : parse_grid(c.grid);
  const LipschitzProbe probe = lipschitz_probe(metric, *space, construct, config);
  csv = "delta,bound,trials,generator_failures,constructor_failures,worst_rank,worst_value,pass\n";
  for (const ProbeRow& r : probe.rows) {
    checks.add("delta=" + format_rational(r.delta), r.pass);
    csv += format_rational(r.delta) + "," + format_rational(config.L * r.delta) + "," + std::to_string(r.trials) + "," +
           std::to_string(r.generator_failures) + "," + std::to_string(r.constructor_failures) + "," +
           rank_json(r.worst_rank).get<std::string>() + "," + csv_escape(r.worst_value) + "," +
           (r.pass ? "true" : "false") + "\n";
  }
  return to_json(probe);
}

inline Json cmd_counterexample(const RunConfig& c, Checks& checks, std::string& csv) {
  auto e = std::make_shared<BadEnumeration>();
  const Metric metric = Metric::otw(e);
  const CounterexampleInstance inst = build_counterexample(option_or(c.L, 1), option_or(c.delta0, 1), *e);
  const bool orbit_ok = static_cast<bool>(verify_pseudo_orbit(inst.orbit, metric));
  const RefutationCertificate cert = certify_no_shadowing(inst);
  const CertificateVerdict verdict = verify_certificate(inst, cert, e->stage_ceiling());
  const auto family = default_candidate_family(inst.stage);
  const CrossCheck cross = empirical_cross_check(inst, metric, family);
  checks.add("pseudo-orbit", orbit_ok);
  checks.add("certificate", verdict.accepted);
  checks.add("cross-check", cross.pass());
  csv = "fact,value\n";
  csv += "n," + std::to_string(inst.n) + "\ndelta," + format_rational(inst.delta) + "\nw," + format_word(inst.w) +
         "\nthreshold_rank," + cert.threshold_rank.str() + "\naccepted," + (verdict.accepted ? "true" : "false") +
         "\ncandidates_within_bound," + std::to_string(cross.within_bound) + "\n";
  return {{"instance", to_json(inst)},
          {"certificate", to_json(cert)},
          {"verdict", {{"accepted", verdict.accepted}, {"failed_fact", verdict.failed_fact}}},
          {"cross_check", to_json(cross)}};
}

inline Json cmd_validate(const RunConfig& c, Checks& checks, std::string& csv) {
  const auto e = make_enumeration(c.enumeration);
  ValidationReport report;
  if (const auto* bad = dynamic_cast<const BadEnumeration*>(e.get())) {
    report = validate_bad(*bad, c.stages);
  } else {
    report = validate_pscomp(*e, c.entries);
  }
  checks.add(report.check, report.ok());
  std::uint64_t round_trip_failures = 0;
  csv = "index,word\n";
  for (std::uint64_t k = 1; k <= c.entries; ++k) {
    const Word w = e->word_at(k);
    if (e->index_of(w) != k) ++round_trip_failures;
    csv += std::to_string(k) + "," + format_word(w) + "\n";
  }
  checks.add("round-trip", round_trip_failures == 0);
  return {{"validation", to_json(report)}, {"round_trip", {{"entries", c.entries}, {"failures", round_trip_failures}}}};
}

inline Json cmd_modulus(const RunConfig& c, Checks&, std::string& csv) {
  const Metric block = Metric::otw(std::make_shared<BlockEnumeration>());
  const Metric bad = Metric::otw(std::make_shared<BadEnumeration>());
  Rng rng = make_rng(c.seed, 0);
  const PointSampler sampler{.max_letter = 3, .max_common = 4, .finite_percent = 10};
  std::vector<std::pair<Point, Point>> samples;
  for (std::uint64_t i = 0; i < c.trials; ++i) {
    auto pts = sampler.related(rng, 2);
    samples.emplace_back(pts[0], pts[1]);
  }
  const ModulusTable forward = modulus_table(block, bad, samples);
  const ModulusTable backward = modulus_table(bad, block, samples);
  csv = "source,target,rank,pairs,min_target_rank,max_deficit\n";
  for (const ModulusTable* t : {&forward, &backward}) {
    for (const ModulusRow& r : t->rows) {
      csv += t->source + "," + t->target + "," + r.rank.str() + "," + std::to_string(r.pairs) + "," +
             rank_json(r.min_target_rank).get<std::string>() + "," + r.max_deficit.str() + "\n";
    }
  }
  return {{"samples", c.trials}, {"forward", to_json(forward)}, {"backward", to_json(backward)}};
}

// ---------------------------------------------------------------------------

inline Outcome run(RunConfig c) {
  const auto started = std::chrono::steady_clock::now();
  if (c.metric.empty()) c.metric = "otw:" + c.enumeration;
  if (c.format != "json" && c.format != "csv") throw UsageError("format must be json or csv");
  if (c.order == 0) throw UsageError("order must be at least 1");
  Outcome out;
  Checks checks;
  Json result;
  if (c.command == "distance") {
    result = cmd_distance(c, checks, out.csv);
  } else if (c.command == "probe") {
    result = cmd_probe(c, checks, out.csv);
  } else if (c.command == "counterexample") {
    result = cmd_counterexample(c, checks, out.csv);
  } else if (c.command == "validate") {
    result = cmd_validate(c, checks, out.csv);
  } else if (c.command == "modulus") {
    result = cmd_modulus(c, checks, out.csv);
  } else {
    throw UsageError("unknown command '" + c.command + "'");
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  out.exit_code = checks.failures.empty() ? kOk : kCheckFailed;
  out.report = {{"tool", "shadowlab"},
                {"version", kVersion},
                {"config", config_json(c)},
                {"result", std::move(result)},
                {"checks", checks.list},
                {"failures", checks.failures},
                {"pass", checks.failures.empty()},
                {"wall_clock_seconds", seconds}};
  return out;
}

}  // namespace shadowlab::cli
