#pragma once

// Pseudo-orbits of the bad OTW system that no point shadows within L * delta,
// with a symbolic refutation certificate and an independent checker.
//
// At stage n (2^n > L) take delta = 2^-i_n and w = a1.a2.a3. The orbit
// alternates w.(b) and b.w.(b). Any L*delta-shadowing point x has every
// d(shift^m(x), x^m) below 2^-(i_n - n), the value of the index of w, so
// w prefixes shift^m(x) exactly when it prefixes x^m. With m = 0 and m = 2
// this gives x1x2x3 = w = x3x4x5, so a3 = x3 = a1.

#include "shadowlab/bad_enumeration.hpp"
#include "shadowlab/pseudo_orbit.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

namespace shadowlab {

struct CounterexampleInstance {
  Rational L;
  Rational delta0;
  std::uint64_t n = 0;
  BadStage stage;
  Word w;
  Rational delta;
  PseudoOrbit orbit;
};

inline PseudoOrbit counterexample_orbit(const Word& w, Letter b, const Rational& delta) {
  Word shifted{b};
  shifted.insert(shifted.end(), w.begin(), w.end());
  return PseudoOrbit{.cycle = {Point::infinite(w, {b}), Point::infinite(shifted, {b})}, .delta = delta, .metric = "otw:bad"};
}

/// The instance at a given stage, whether or not the stage qualifies.
inline CounterexampleInstance counterexample_at_stage(const Rational& L, const Rational& delta0, std::uint64_t n,
                                                      const BadEnumeration& e) {
  CounterexampleInstance inst{.L = L, .delta0 = delta0, .n = n, .stage = e.stage(n)};
  inst.w = inst.stage.special_word();
  inst.delta = pow2_neg(inst.stage.cutoff);
  inst.orbit = counterexample_orbit(inst.w, inst.stage.b, inst.delta);
  return inst;
}

/// Least n with 2^n > L and 2^-i_n < delta0.
inline std::uint64_t counterexample_stage(const Rational& L, const Rational& delta0) {
  if (L <= 0 || delta0 <= 0) throw std::invalid_argument("L and delta0 must be positive");
  std::uint64_t n = 1;
  while (!(Rational(pow_index(2, n)) > L && pow2_neg(bad_cutoff(n)) < delta0)) ++n;
  return n;
}

inline CounterexampleInstance build_counterexample(const Rational& L, const Rational& delta0, const BadEnumeration& e) {
  return counterexample_at_stage(L, delta0, counterexample_stage(L, delta0), e);
}

struct AgreementFact {
  std::uint64_t m = 0;
  bool w_prefixes_term = false;  // w is a prefix of x^m, so also of shift^m(x)
};

/// x_{offset+1} ... x_{offset+|w|} = letters.
struct LetterEquation {
  std::size_t offset = 0;
  Word letters;
};

/// Position 3 of x is forced to two different letters.
struct LetterConflict {
  std::size_t position = 3;
  Letter from_first = 0;
  Letter from_second = 0;
};

struct RefutationCertificate {
  std::uint64_t n = 0;
  Index threshold_rank;  // i_n - n, the index of w
  Rational gap_bound;    // 2^-(i_n - n)
  bool gap_holds = false;  // L * delta < gap_bound
  std::vector<AgreementFact> agreement_facts;
  std::vector<LetterEquation> letter_equations;
  LetterConflict conflict;
};

inline RefutationCertificate certify_no_shadowing(const CounterexampleInstance& inst) {
  const Word& w = inst.w;
  if (w.size() != 3 || w[0] == w[1] || w[0] == w[2] || w[1] == w[2]) {
    throw std::invalid_argument("letters of " + format_word(w) + " are not pairwise distinct");
  }
  RefutationCertificate cert{.n = inst.n, .threshold_rank = Index(inst.stage.special_index())};
  cert.gap_bound = pow2_neg(inst.stage.special_index());
  cert.gap_holds = inst.L * inst.delta < cert.gap_bound;
  for (std::uint64_t m : {0U, 2U}) {
    cert.agreement_facts.push_back({m, is_prefix(w, inst.orbit.at(m))});
    cert.letter_equations.push_back({m, w});
  }
  cert.conflict = {.position = 3, .from_first = w[2], .from_second = w[0]};
  return cert;
}

struct CertificateVerdict {
  bool accepted = false;
  std::string failed_fact;

  explicit operator bool() const { return accepted; }
};

/// Re-derives every fact from the instance against a freshly built bad
/// enumeration; reports the first one that fails.
inline CertificateVerdict verify_certificate(const CounterexampleInstance& inst, const RefutationCertificate& cert,
                                             std::uint64_t stage_ceiling = stage_ceiling_from_env()) {
  auto reject = [](std::string fact) { return CertificateVerdict{false, std::move(fact)}; };
  if (inst.n == 0 || cert.n != inst.n) return reject("stage");
  const std::uint64_t cutoff = bad_cutoff(inst.n);
  const std::uint64_t special = cutoff - inst.n;
  if (cert.threshold_rank != special || cert.gap_bound != pow2_neg(special)) return reject("threshold");
  if (!(inst.L * inst.delta < pow2_neg(special)) || !cert.gap_holds) return reject("gap");
  if (!(Rational(pow_index(2, inst.n)) > inst.L)) return reject("stage");
  if (inst.delta != pow2_neg(cutoff) || !(inst.delta < inst.delta0)) return reject("delta");
  const Word& w = inst.w;
  if (w.size() != 3 || w[0] == w[2]) return reject("distinctness");

  auto fresh = std::make_shared<BadEnumeration>(stage_ceiling);
  if (fresh->word_at(special) != w) return reject("word");
  const BadStage s = fresh->stage(inst.n);
  const PseudoOrbit expected = counterexample_orbit(w, s.b, inst.delta);
  if (inst.orbit.pre != expected.pre || inst.orbit.cycle != expected.cycle) return reject("orbit");
  if (!verify_pseudo_orbit(inst.orbit, Metric::otw(fresh))) return reject("pseudo-orbit");

  // m = 0 and m = 2 are both even, so x^m = w.(b) starts with w.
  std::vector<std::uint64_t> forced;
  for (const AgreementFact& f : cert.agreement_facts) {
    if (!f.w_prefixes_term || !is_prefix(w, inst.orbit.at(f.m))) return reject("agreement m=" + std::to_string(f.m));
    forced.push_back(f.m);
  }
  if (forced != std::vector<std::uint64_t>{0, 2}) return reject("agreement");

  if (cert.letter_equations.size() != 2) return reject("letter-equations");
  for (std::size_t i = 0; i < 2; ++i) {
    const LetterEquation& eq = cert.letter_equations[i];
    if (eq.offset != forced[i] || eq.letters != w) return reject("letter-equations");
  }
  // Position 3 is letter index 2 of the first block and index 0 of the second.
  const Letter first = w[3 - 1 - cert.letter_equations[0].offset];
  const Letter second = w[3 - 1 - cert.letter_equations[1].offset];
  if (cert.conflict.position != 3 || cert.conflict.from_first != first || cert.conflict.from_second != second ||
      first == second) {
    return reject("conflict");
  }
  return {true, {}};
}

// ---------------------------------------------------------------------------
// Supplementary sampling.

/// All points c1 c2 c3 c4 c5 (b) with each ci in {a1, a2, a3, b}.
inline std::vector<Point> default_candidate_family(const BadStage& s) {
  const Letter alphabet[4] = {s.a1, s.a2, s.a3, s.b};
  std::vector<Point> out;
  out.reserve(1024);
  for (std::uint32_t code = 0; code < 1024; ++code) {
    Word pre(5);
    for (std::size_t i = 0; i < 5; ++i) pre[i] = alphabet[(code >> (2 * (4 - i))) & 3U];
    out.push_back(Point::infinite(std::move(pre), {s.b}));
  }
  return out;
}

struct CrossCheck {
  std::uint64_t candidates = 0;
  std::uint64_t within_bound = 0;  // candidates with error <= L * delta
  bool no_evidence = true;
  Rank best_rank;                  // largest error rank, i.e. smallest error
  std::optional<Point> best_candidate;
  Rational best_ratio;             // smallest error / delta

  bool pass() const { return !no_evidence && within_bound == 0; }
};

inline CrossCheck empirical_cross_check(const CounterexampleInstance& inst, const Metric& metric,
                                        std::span<const Point> candidates) {
  CrossCheck out{.candidates = candidates.size(), .no_evidence = candidates.empty()};
  // Errors above L * delta have rank below this; deeper ranks need not be resolved.
  const Index bound_rank = metric.rank_threshold(inst.L * inst.delta, true);
  const Index cap = bound_rank - 1;
  bool first = true;
  for (const Point& x : candidates) {
    const ShadowResult r = shadowing_error(x, inst.orbit, metric, cap);
    if (!r.exact) ++out.within_bound;
    if (first || out.best_rank < r.error_rank) {
      out.best_rank = r.error_rank;
      out.best_candidate = x;
      first = false;
    }
  }
  if (!out.no_evidence && !out.best_rank.is_infinite() && out.best_rank.value() <= cap) {
    out.best_ratio = *metric.value(out.best_rank) / inst.delta;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Probe of the bad system with the stage family of pseudo-orbits.

struct BadProbeRow {
  std::uint64_t n = 0;
  Rational delta;
  bool stage_exceeds_L = false;  // 2^n > L
  bool refuted = false;          // certificate accepted: no L*delta-shadowing point
  std::string failed_fact;
};

struct BadSystemProbe {
  Rational L;
  std::vector<BadProbeRow> rows;

  bool pass() const {
    return std::none_of(rows.begin(), rows.end(), [](const BadProbeRow& r) { return r.refuted; });
  }
};

inline BadSystemProbe bad_system_probe(const Rational& L, std::uint64_t stages, const BadEnumeration& e) {
  BadSystemProbe probe{.L = L};
  for (std::uint64_t n = 1; n <= stages; ++n) {
    const CounterexampleInstance inst = counterexample_at_stage(L, 1, n, e);
    BadProbeRow row{.n = n, .delta = inst.delta, .stage_exceeds_L = Rational(pow_index(2, n)) > L};
    const CertificateVerdict v = verify_certificate(inst, certify_no_shadowing(inst), e.stage_ceiling());
    row.refuted = v.accepted;
    row.failed_fact = v.failed_fact;
    probe.rows.push_back(std::move(row));
  }
  return probe;
}

}  // namespace shadowlab
