#pragma once

// JSON serialization of distances, validation reports, probes,
// certificates and modulus tables. Requires the single-header nlohmann/json.

#include "shadowlab/counterexample.hpp"
#include "shadowlab/probe.hpp"
#include "shadowlab/validation.hpp"

#include "json.hpp"

namespace shadowlab {

using Json = nlohmann::ordered_json;

inline Json rank_json(const Rank& r) { return r.is_infinite() ? Json("inf") : Json(r.value().str()); }

inline Json to_json(const UltraDistance& d) {
  return {{"model", d.model_name}, {"rank", rank_json(d.rank)}, {"value", d.value}};
}

inline Json to_json(const ValidationReport& r) {
  Json violations = Json::array();
  for (const Violation& v : r.violations) {
    violations.push_back({{"kind", v.kind}, {"index", v.index}, {"detail", v.detail}});
  }
  return {{"enumeration", r.enumeration},      {"check", r.check},
          {"entries_checked", r.entries_checked}, {"stages_checked", r.stages_checked},
          {"coverage_words", r.coverage_words},   {"coverage_witness", r.coverage_witness},
          {"ok", r.ok()},                          {"violations", violations}};
}

inline Json to_json(const LipschitzProbe& p) {
  Json rows = Json::array();
  for (const ProbeRow& r : p.rows) {
    rows.push_back({{"delta", format_rational(r.delta)},
                    {"bound", format_rational(p.config.L * r.delta)},
                    {"trials", r.trials},
                    {"generator_failures", r.generator_failures},
                    {"constructor_failures", r.constructor_failures},
                    {"worst_rank", rank_json(r.worst_rank)},
                    {"worst_value", r.worst_value},
                    {"pass", r.pass},
                    {"note", r.note}});
  }
  return {{"system", p.config.system},
          {"metric", p.metric},
          {"L", format_rational(p.config.L)},
          {"delta0", format_rational(p.config.delta0)},
          {"seed", p.config.seed},
          {"pass", p.pass()},
          {"rows", rows}};
}

inline Json to_json(const CounterexampleInstance& inst) {
  auto points = [](const std::vector<Point>& v) {
    Json a = Json::array();
    for (const Point& x : v) a.push_back(format_point(x));
    return a;
  };
  return {{"L", format_rational(inst.L)},
          {"delta0", format_rational(inst.delta0)},
          {"n", inst.n},
          {"i_n", inst.stage.cutoff},
          {"letters", {{"a1", inst.stage.a1}, {"a2", inst.stage.a2}, {"a3", inst.stage.a3}, {"b", inst.stage.b}}},
          {"w", format_word(inst.w)},
          {"delta", format_rational(inst.delta)},
          {"orbit", {{"pre", points(inst.orbit.pre)}, {"cycle", points(inst.orbit.cycle)}}}};
}

inline Json to_json(const RefutationCertificate& c) {
  Json agreement = Json::array();
  for (const AgreementFact& f : c.agreement_facts) agreement.push_back({{"m", f.m}, {"w_prefixes_term", f.w_prefixes_term}});
  Json equations = Json::array();
  for (const LetterEquation& e : c.letter_equations) {
    equations.push_back({{"offset", e.offset}, {"letters", format_word(e.letters)}});
  }
  return {{"n", c.n},
          {"threshold_rank", c.threshold_rank.str()},
          {"gap_bound", format_rational(c.gap_bound)},
          {"gap_holds", c.gap_holds},
          {"agreement_facts", agreement},
          {"letter_equations", equations},
          {"conflict",
           {{"position", c.conflict.position}, {"from_first", c.conflict.from_first}, {"from_second", c.conflict.from_second}}}};
}

inline Json to_json(const CrossCheck& c) {
  return {{"candidates", c.candidates},
          {"within_bound", c.within_bound},
          {"no_evidence", c.no_evidence},
          {"best_rank", rank_json(c.best_rank)},
          {"best_candidate", c.best_candidate ? Json(format_point(*c.best_candidate)) : Json(nullptr)},
          {"best_ratio", format_rational(c.best_ratio)},
          {"pass", c.pass()}};
}

inline Json to_json(const BadSystemProbe& p) {
  Json rows = Json::array();
  for (const BadProbeRow& r : p.rows) {
    rows.push_back({{"n", r.n},
                    {"delta", format_rational(r.delta)},
                    {"stage_exceeds_L", r.stage_exceeds_L},
                    {"refuted", r.refuted},
                    {"failed_fact", r.failed_fact}});
  }
  return {{"L", format_rational(p.L)}, {"pass", p.pass()}, {"rows", rows}};
}

inline Json to_json(const ModulusTable& t) {
  Json rows = Json::array();
  for (const ModulusRow& r : t.rows) {
    rows.push_back({{"rank", r.rank.str()},
                    {"pairs", r.pairs},
                    {"min_target_rank", rank_json(r.min_target_rank)},
                    {"max_deficit", r.max_deficit.str()}});
  }
  return {{"source", t.source}, {"target", t.target}, {"equal_pairs", t.equal_pairs}, {"rows", rows}};
}

}  // namespace shadowlab
