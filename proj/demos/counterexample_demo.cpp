// Walks through the stage-n pseudo-orbit that defeats a given Lipschitz constant
// under the bad enumeration, then shows the same deltas are harmless under the
// block enumeration.
//
//   shadowlab-demo [L]

#include "shadowlab.hpp"

#include <iostream>

using namespace shadowlab;

int main(int argc, char** argv) {
  const Rational L = argc > 1 ? parse_rational(argv[1]) : Rational(4);
  auto bad = std::make_shared<BadEnumeration>();
  const Metric metric = Metric::otw(bad);

  const CounterexampleInstance inst = build_counterexample(L, 1, *bad);
  std::cout << "L = " << format_rational(L) << ", stage n = " << inst.n << ", i_n = " << inst.stage.cutoff
            << ", delta = " << format_rational(inst.delta) << "\n";
  std::cout << "w = " << format_word(inst.w) << ", b = " << inst.stage.b << "\n";
  std::cout << "orbit cycle: " << format_point(inst.orbit.cycle[0]) << " , " << format_point(inst.orbit.cycle[1])
            << "\n";
  for (std::uint64_t m = 0; m < 2; ++m) {
    const Point s = shift(inst.orbit.at(m));
    const Point& t = inst.orbit.at(m + 1);
    // Exact ranks can need late stages; the first i_n words settle the comparison with delta.
    const auto r = metric.rank_within(s, t, Index(inst.stage.cutoff));
    const std::string value = s == t ? "0" : r ? metric.value_string(Rank(*r)) : "< 2^-" + std::to_string(inst.stage.cutoff);
    std::cout << "  d(shift x^" << m << ", x^" << m + 1 << ") = " << value << "\n";
  }

  const RefutationCertificate cert = certify_no_shadowing(inst);
  const CertificateVerdict verdict = verify_certificate(inst, cert, bad->stage_ceiling());
  std::cout << "certificate: any L*delta-shadow must start with " << format_word(inst.w) << " at times 0 and 2, so letter 3 is both "
            << cert.conflict.from_first << " and " << cert.conflict.from_second << " -> "
            << (verdict.accepted ? "accepted" : "rejected at " + verdict.failed_fact) << "\n";

  const CrossCheck cross = empirical_cross_check(inst, metric, default_candidate_family(inst.stage));
  std::cout << "sampled candidates within L*delta: " << cross.within_bound << " of " << cross.candidates
            << ", best error / delta = " << to_string(cross.best_ratio) << "\n";

  // Under the block enumeration the one-letter construction shadows within 2 * delta.
  auto block = std::make_shared<const BlockEnumeration>();
  const Metric good = Metric::otw(block);
  Rng rng = make_rng(7, 0);
  const Rational delta = pow2_neg(8);
  const PseudoOrbit orbit = random_pseudo_orbit(rng, good, delta, BlockShift::full(8));
  const Point x = otw_good_shadow_point(*block, orbit, delta);
  const ShadowResult r = shadowing_error(x, orbit, good);
  std::cout << "block enumeration, delta = 2^-8: shadow " << format_point(x) << " has error "
            << good.value_string(r.error_rank) << "\n";
  return verdict.accepted && cross.pass() ? 0 : 1;
}
