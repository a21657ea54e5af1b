#pragma once

// Verification suites over randomized trials, with machine-readable reports.
//
// Four suites:
//   su2     : exponential/log round trips, the three closed forms of the
//             angle gradient, finite-difference consistency, twists, square
//             roots, conjugators.
//   variety : sampler membership for base and cover points, invariance of
//             residuals and fingerprints under the actions, lift and deck
//             identities, fixed-stratum characterizations, orbit-decision
//             soundness and completeness.
//   flows   : membership preservation, flow law, equivariance, periodicity,
//             conserved holonomies, endpoint-rule consistency.
//   theorem : the deck/composite commutation identity, the lift intertwining
//             identity, stratum preservation by the composite flow, and the
//             orbit-level corollaries (deck-fixedness and lifted-image
//             membership preserved along the flow).
//
// Each check has a tolerance: most use the suite base tolerance (overridable
// per run), a few are pinned (finite differences at 1e-6, exact algebraic
// identities at 1e-12, flow law at 1e-10). max_residual is the worst residual
// scaled by base/tolerance, so "failures empty iff max_residual < tolerance"
// holds across mixed classes; failure records keep the raw numbers.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "goldman/defaults.hpp"
#include "goldman/fingerprint.hpp"
#include "goldman/flows.hpp"
#include "goldman/orbit.hpp"
#include "goldman/repvar.hpp"
#include "goldman/serialize.hpp"
#include "goldman/su2.hpp"

namespace goldman {

struct FailureRecord {
  std::uint64_t trial_seed = 0;
  std::string identity;
  double residual = 0;
  double tolerance = 0;
};

struct VerificationReport {
  std::string suite;
  std::optional<SurfaceSpec> spec;
  int trials = 0;
  double tolerance = 0;     // suite base tolerance
  double max_residual = 0;  // max over checks of residual * (tolerance / check tolerance)
  std::vector<FailureRecord> failures;
  double wall_time = 0;  // seconds; the only nondeterministic field

  bool pass() const { return failures.empty(); }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  int trials = -1;                      // -1 = per-suite default
  std::optional<double> tol_override;   // replaces the suite base tolerance
  bool negative_control = false;        // run only the built-in corrupted fixture
};

enum class Suite { Su2, Variety, Flows, Theorem };

inline std::string suite_name(Suite s) {
  switch (s) {
    case Suite::Su2: return "su2";
    case Suite::Variety: return "variety";
    case Suite::Flows: return "flows";
    case Suite::Theorem: return "theorem";
  }
  return "?";
}

namespace detail {

class Checker {
 public:
  Checker(VerificationReport& rep, double base) : rep_(rep), base_(base) {}

  // Check against the (possibly overridden) suite base tolerance.
  void base_tol(std::uint64_t seed, const std::string& id, double residual) {
    record(seed, id, residual, base_);
  }

  // Check against a pinned absolute tolerance.
  void pinned(std::uint64_t seed, const std::string& id, double residual,
              double tolerance) {
    record(seed, id, residual, tolerance);
  }

  void boolean(std::uint64_t seed, const std::string& id, bool ok) {
    record(seed, id, ok ? 0.0 : 1.0, 0.5);
  }

 private:
  void record(std::uint64_t seed, const std::string& id, double residual,
              double tolerance) {
    double scaled = residual * (base_ / tolerance);
    if (std::isfinite(scaled) && scaled > rep_.max_residual)
      rep_.max_residual = scaled;
    if (!(residual < tolerance) || !std::isfinite(residual))
      rep_.failures.push_back(FailureRecord{seed, id, residual, tolerance});
  }

  VerificationReport& rep_;
  double base_;
};

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// b nudged off the relation by ~1e-3; breaks membership, nothing else.
template <typename S>
void corrupt_b(Su2<S>& b) {
  b = b * exp_map(LieVec<S>(S(1e-3), S(0), S(0)));
}

}  // namespace detail

//
// --- su2 suite --------------------------------------------------------------
//

inline VerificationReport run_su2_suite(const SuiteOptions& opts) {
  detail::Stopwatch watch;
  VerificationReport rep;
  rep.suite = "su2";
  rep.tolerance = opts.tol_override.value_or(1e-12);
  detail::Checker check(rep, rep.tolerance);

  if (opts.negative_control) {
    rep.trials = 1;
    std::uint64_t s = derive_seed(opts.seed, 0xC0DE);
    Rng rng(s);
    Su2d g = haar_sample<double>(rng);
    if (g.is_central(1e-6)) g = Su2d(0.6, 0.8, 0, 0);
    LieVecd claimed = principal_log(g) + LieVecd(1e-3, 0, 0);
    check.base_tol(s, "log_exp_round_trip", exp_map(claimed).distance(g));
    rep.wall_time = watch.seconds();
    return rep;
  }

  const int n = opts.trials >= 0 ? opts.trials : 1000;
  rep.trials = n;
  for (int i = 0; i < n; ++i) {
    std::uint64_t s = derive_seed(opts.seed, std::uint64_t(i));
    Rng rng(s);
    Su2d g = haar_sample<double>(rng);
    if (std::abs(g.trace()) >= 2 - 1e-6) continue;

    check.base_tol(s, "log_exp_round_trip",
                   exp_map(principal_log(g)).distance(g));

    double f = rotation_angle(g);
    LieVecd grad = angle_gradient(g);
    LieVecd quotient_form = 2.0 * g.vec() / std::sqrt(4.0 - g.trace() * g.trace());
    LieVecd log_form = principal_log(g).normalized();
    Su2d torus(std::cos(f), std::sin(f), 0, 0);
    Su2d conj = conjugator(torus, g);
    Su2d e1 = Su2d::from_raw(Eigen::Vector4d(0, 1, 0, 0));
    LieVecd rotated_form = (conj * e1 * conj.inverse()).vec();
    double three_way = std::max({(quotient_form - grad).norm(),
                                 (log_form - grad).norm(),
                                 (rotated_form - grad).norm()});
    check.base_tol(s, "gradient_three_forms", three_way);
    check.base_tol(s, "gradient_unit_norm", std::abs(grad.norm() - 1.0));

    double t = rng.uniform(-10, 10);
    Su2d z = twist(g, t);
    check.base_tol(s, "twist_commutes", (z * g).distance(g * z));

    // directional derivative of the angle along a left-invariant direction
    auto [n0, n1] = rng.normal_pair();
    auto [n2, n3] = rng.normal_pair();
    (void)n3;
    LieVecd xi(n0, n1, n2);
    if (xi.norm() < 1e-6) xi = LieVecd(1, 0, 0);
    xi.normalize();
    const double h = 1e-5;
    double fd = (rotation_angle(g * exp_map<double>(h * xi)) -
                 rotation_angle(g * exp_map<double>(-h * xi))) /
                (2 * h);
    check.pinned(s, "gradient_directional_derivative",
                 std::abs(fd - grad.dot(xi)), 1e-6);

    Su2d x = haar_sample<double>(rng);
    LieVecd pushed = (x * Su2d::from_raw(Eigen::Vector4d(0, grad[0], grad[1],
                                                         grad[2])) *
                      x.inverse())
                         .vec();
    check.base_tol(s, "gradient_ad_equivariant",
                   (angle_gradient(g.conjugated_by(x)) - pushed).norm());

    Su2d root = principal_sqrt(g);
    check.base_tol(s, "sqrt_squares_back", (root * root).distance(g));

    Su2d target = g.conjugated_by(x);
    Su2d cc = conjugator(g, target);
    check.pinned(s, "conjugator_residual",
                 (cc * g * cc.inverse()).distance(target), 1e-10);
  }
  rep.wall_time = watch.seconds();
  return rep;
}

//
// --- variety suite ----------------------------------------------------------
//

inline VerificationReport run_variety_suite(const SurfaceSpec& spec,
                                            const SuiteOptions& opts) {
  detail::Stopwatch watch;
  VerificationReport rep;
  rep.suite = "variety";
  rep.spec = spec;
  rep.tolerance = opts.tol_override.value_or(1e-9);
  detail::Checker check(rep, rep.tolerance);

  if (opts.negative_control) {
    rep.trials = 1;
    std::uint64_t s = derive_seed(opts.seed, 0xC0DE);
    Rng rng(s);
    RepPointd p = sample_base<double>(spec, rng);
    detail::corrupt_b(p.b);
    check.base_tol(s, "relation_residual", relation_residual(spec, p));
    rep.wall_time = watch.seconds();
    return rep;
  }

  const int n_base = opts.trials >= 0 ? opts.trials : 500;
  const int n_cover = opts.trials >= 0 ? opts.trials : 200;
  rep.trials = n_base + n_cover;

  for (int i = 0; i < n_base; ++i) {
    std::uint64_t s = derive_seed(opts.seed, 1, std::uint64_t(i));
    Rng rng(s);
    RepPointd p = sample_base<double>(spec, rng);
    double res = relation_residual(spec, p);
    check.base_tol(s, "sampler_base_residual", res);

    Su2d g = haar_sample<double>(rng);
    RepPointd pg = conjugate_tuple(g, p);
    check.base_tol(s, "residual_conjugation_invariant",
                   std::abs(relation_residual(spec, pg) - res));
    check.base_tol(s, "fingerprint_conjugation_invariant",
                   fingerprint_distance(fingerprint(p, spec),
                                        fingerprint(pg, spec)));

    // orbit soundness + completeness: planted witness recovered, independent
    // samples distinguished
    OrbitResult<double> planted = same_orbit(pg, p, spec);
    check.boolean(s, "orbit_planted_witness",
                  planted.verdict == OrbitVerdict::Equal);
    if (planted.verdict == OrbitVerdict::Equal)
      check.pinned(s, "orbit_witness_defect", planted.witness_defect,
                   tol::witness);
    RepPointd other = sample_base<double>(spec, rng);
    check.boolean(s, "orbit_distinct_samples",
                  same_orbit(p, other, spec).verdict != OrbitVerdict::Equal);

    // lift identities
    DoubleRepPointd lifted = cover_lift(p, spec);
    check.base_tol(s, "lift_membership",
                   cover_relation_residual_max(spec, lifted));
    check.pinned(s, "lift_equivariance",
                 max_distance(cover_lift(pg, spec),
                              act_pair(g, g, lifted, spec)),
                 1e-12);
  }

  for (int i = 0; i < n_cover; ++i) {
    std::uint64_t s = derive_seed(opts.seed, 2, std::uint64_t(i));
    Rng rng(s);
    DoubleRepPointd q = sample_cover<double>(spec, rng);
    double res = cover_relation_residual_max(spec, q);
    check.base_tol(s, "sampler_cover_residual", res);

    Su2d g = haar_sample<double>(rng);
    Su2d h = haar_sample<double>(rng);
    DoubleRepPointd q2 = act_pair(g, h, q, spec);
    check.base_tol(s, "residual_action_invariant",
                   std::abs(cover_relation_residual_max(spec, q2) - res));
    check.base_tol(s, "fingerprint_action_invariant",
                   fingerprint_distance(fingerprint(q, spec),
                                        fingerprint(q2, spec)));

    // deck involution identities
    check.pinned(s, "deck_involution",
                 max_distance(deck_swap(deck_swap(q)), q), 1e-12);
    check.base_tol(s, "deck_preserves_membership",
                   cover_relation_residual_max(spec, deck_swap(q)));
    check.pinned(s, "deck_equivariance",
                 max_distance(deck_swap(act_pair(g, h, q, spec)),
                              act_pair(h, g, deck_swap(q), spec)),
                 1e-12);

    OrbitResult<double> planted = same_orbit_pair(q2, q, spec);
    check.boolean(s, "orbit_pair_planted_witness",
                  planted.verdict == OrbitVerdict::Equal);
    check.boolean(s, "generic_sample", is_generic(q, spec));

    // fixed strata: explicit shape matches the deck/action criterion, deck
    // fixedness holds at orbit level
    int xi = i % 3;
    Su2d x = xi == 0 ? Su2d::identity()
                     : (xi == 1 ? Su2d::minus_identity()
                                : Su2d(std::cos(0.628318530717958648),
                                       std::sin(0.628318530717958648), 0, 0));
    Rng rng_nx(derive_seed(s, 3));
    DoubleRepPointd qn = sample_fixed_stratum(spec, x, rng_nx);
    StratumCheck sc = in_fixed_stratum(qn, x, spec);
    check.base_tol(s, "stratum_criterion_residual", sc.residual);
    check.base_tol(s, "stratum_membership",
                   cover_relation_residual_max(spec, qn));
    check.boolean(s, "stratum_deck_fixed",
                  same_orbit_pair(deck_swap(qn), qn, spec).verdict ==
                      OrbitVerdict::Equal);
  }

  rep.wall_time = watch.seconds();
  return rep;
}

//
// --- flow suite -------------------------------------------------------------
//

inline VerificationReport run_flow_suite(const SurfaceSpec& spec,
                                         const SuiteOptions& opts) {
  detail::Stopwatch watch;
  VerificationReport rep;
  rep.suite = "flows";
  rep.spec = spec;
  rep.tolerance = opts.tol_override.value_or(1e-9);
  detail::Checker check(rep, rep.tolerance);

  if (opts.negative_control) {
    rep.trials = 1;
    std::uint64_t s = derive_seed(opts.seed, 0xC0DE);
    Rng rng(s);
    DoubleRepPointd q = sample_cover<double>(spec, rng);
    if (q.c.is_central(1e-6) || q.cbar.is_central(1e-6))
      throw SamplerStuck("negative control: degenerate sample");
    detail::corrupt_b(q.b);
    check.base_tol(s, "flow_membership",
                   cover_relation_residual_max(spec, composite_flow(q, 0.37)));
    rep.wall_time = watch.seconds();
    return rep;
  }

  const double pi = 3.14159265358979323846;
  const double t_grid[] = {0.0, 0.37, pi / 2, pi, 2 * pi, -5.1};
  const int n = opts.trials >= 0 ? opts.trials : 200;
  rep.trials = n;

  for (int i = 0; i < n; ++i) {
    std::uint64_t s = derive_seed(opts.seed, std::uint64_t(i));
    Rng rng(s);
    RepPointd p = sample_base<double>(spec, rng);
    DoubleRepPointd q = sample_cover<double>(spec, rng);
    if (p.c.is_central(1e-6) || q.c.is_central(1e-6) ||
        q.cbar.is_central(1e-6))
      continue;  // measure-zero draws, skip rather than bias

    for (double t : t_grid) {
      RepPointd pf = base_twist_flow(p, t);
      check.base_tol(s, "flow_base_membership", relation_residual(spec, pf));
      check.boolean(s, "flow_base_conserves_c", pf.c.bitwise_equal(p.c));

      DoubleRepPointd q1 = cover_twist_first(q, t);
      DoubleRepPointd q2 = cover_twist_second(q, t);
      DoubleRepPointd qc = composite_flow(q, t);
      check.base_tol(s, "flow_cover_membership",
                     std::max({cover_relation_residual_max(spec, q1),
                               cover_relation_residual_max(spec, q2),
                               cover_relation_residual_max(spec, qc)}));
      check.boolean(s, "flow_cover_conserves_c",
                    q1.c.bitwise_equal(q.c) && q2.c.bitwise_equal(q.c) &&
                        qc.c.bitwise_equal(q.c) &&
                        q1.cbar.bitwise_equal(q.cbar) &&
                        q2.cbar.bitwise_equal(q.cbar) &&
                        qc.cbar.bitwise_equal(q.cbar));
      // the twist of one cylinder leaves the other strictly alone
      check.boolean(s, "flow_untouched_half",
                    q1.bbar.bitwise_equal(q.bbar) && q2.b.bitwise_equal(q.b) &&
                        max_distance(DoubleRepPointd{q1.c, q.b, q1.a, q1.cbar,
                                                     q.bbar, q1.abar},
                                     q) == 0);
    }

    double t = rng.uniform(-10, 10), u = rng.uniform(-10, 10);
    check.pinned(s, "flow_law_base",
                 max_distance(base_twist_flow(base_twist_flow(p, u), t),
                              base_twist_flow(p, t + u)),
                 1e-10);
    check.pinned(s, "flow_law_composite",
                 max_distance(composite_flow(composite_flow(q, u), t),
                              composite_flow(q, t + u)),
                 1e-10);
    check.base_tol(s, "flow_periodicity_base",
                   max_distance(base_twist_flow(p, 2 * pi), p));
    check.base_tol(s, "flow_periodicity_cover",
                   std::max(max_distance(cover_twist_first(q, 2 * pi), q),
                            max_distance(composite_flow(q, 2 * pi), q)));

    Su2d g = haar_sample<double>(rng);
    Su2d h = haar_sample<double>(rng);
    check.pinned(s, "flow_equivariance_base",
                 max_distance(base_twist_flow(conjugate_tuple(g, p), t),
                              conjugate_tuple(g, base_twist_flow(p, t))),
                 1e-12);
    check.pinned(s, "flow_equivariance_composite",
                 max_distance(composite_flow(act_pair(g, h, q, spec), t),
                              act_pair(g, h, composite_flow(q, t), spec)),
                 1e-12);
    check.pinned(s, "cover_twists_commute",
                 max_distance(cover_twist_second(cover_twist_first(q, t), u),
                              cover_twist_first(cover_twist_second(q, u), t)),
                 1e-12);
    check.pinned(s, "composite_factorization",
                 max_distance(cover_twist_first(cover_twist_second(q, -t), t),
                              composite_flow(q, t)),
                 1e-12);
  }

  RuleCheckReport rules = consistency_check_rules<double>(
      spec, std::min(n, 100), derive_seed(opts.seed, 0xAB), 1e-12);
  check.pinned(derive_seed(opts.seed, 0xAB), "endpoint_rules_consistent",
               rules.max_mismatch, 1e-12);
  check.base_tol(derive_seed(opts.seed, 0xAB), "endpoint_rules_membership",
                 rules.max_residual_drift);

  rep.wall_time = watch.seconds();
  return rep;
}

//
// --- theorem suite ----------------------------------------------------------
//

inline VerificationReport run_theorem_suite(const SurfaceSpec& spec,
                                            const SuiteOptions& opts) {
  detail::Stopwatch watch;
  VerificationReport rep;
  rep.suite = "theorem";
  rep.spec = spec;
  rep.tolerance = opts.tol_override.value_or(1e-9);
  detail::Checker check(rep, rep.tolerance);

  if (opts.negative_control) {
    rep.trials = 1;
    std::uint64_t s = derive_seed(opts.seed, 0xC0DE);
    Rng rng(s);
    DoubleRepPointd qn =
        sample_fixed_stratum(spec, Su2d::minus_identity(), rng);
    detail::corrupt_b(qn.bbar);
    check.base_tol(s, "flow_preserves_stratum",
                   in_fixed_stratum(qn, Su2d::minus_identity(), spec).residual);
    rep.wall_time = watch.seconds();
    return rep;
  }

  const double pi = 3.14159265358979323846;
  const double t_vals[] = {0.0, 0.37, pi / 2, pi, -5.1};
  const int n = opts.trials >= 0 ? opts.trials : 100;
  rep.trials = n;

  for (int i = 0; i < n; ++i) {
    std::uint64_t s = derive_seed(opts.seed, std::uint64_t(i));
    Rng rng(s);
    RepPointd p = sample_base<double>(spec, rng);
    DoubleRepPointd q = sample_cover<double>(spec, rng);
    if (p.c.is_central(1e-6) || q.c.is_central(1e-6) ||
        q.cbar.is_central(1e-6))
      continue;

    double t = rng.uniform(-8, 8);
    // deck involution commutes with the composite flow
    check.pinned(s, "deck_commutes_with_flow",
                 max_distance(composite_flow(deck_swap(q), t),
                              deck_swap(composite_flow(q, t))),
                 1e-12);
    // lifting intertwines the base flow with the composite flow
    check.pinned(s, "lift_intertwines_flow",
                 max_distance(composite_flow(cover_lift(p, spec), t),
                              cover_lift(base_twist_flow(p, t), spec)),
                 1e-12);

    // stratum preservation for the three twist classes
    for (int xi = 0; xi < 3; ++xi) {
      Su2d x = xi == 0 ? Su2d::identity()
                       : (xi == 1 ? Su2d::minus_identity()
                                  : Su2d(std::cos(0.628318530717958648),
                                         std::sin(0.628318530717958648), 0, 0));
      Rng rng_nx(derive_seed(s, 7, std::uint64_t(xi)));
      DoubleRepPointd qn = sample_fixed_stratum(spec, x, rng_nx);
      if (qn.c.is_central(1e-6) || qn.cbar.is_central(1e-6)) {
        // case iii with a noncentral torus twist forces central c: the
        // stratum misses the flow domain, so there is nothing to flow
        continue;
      }
      for (double tv : t_vals) {
        DoubleRepPointd qf = composite_flow(qn, tv);
        check.base_tol(s, "flow_preserves_stratum",
                       in_fixed_stratum(qf, x, spec).residual);
        check.boolean(s, "flow_preserves_deck_fixedness",
                      same_orbit_pair(deck_swap(qf), qf, spec).verdict ==
                          OrbitVerdict::Equal);
      }
    }

    // lifted-image membership preserved along the flow, orbit-level form
    DoubleRepPointd lifted = cover_lift(p, spec);
    Su2d g = haar_sample<double>(rng);
    Su2d h = haar_sample<double>(rng);
    for (double tv : t_vals) {
      DoubleRepPointd moved = act_pair(g, h, composite_flow(lifted, tv), spec);
      DoubleRepPointd target = cover_lift(base_twist_flow(p, tv), spec);
      check.boolean(s, "flow_preserves_lifted_image",
                    same_orbit_pair(moved, target, spec).verdict ==
                        OrbitVerdict::Equal);
    }
  }

  rep.wall_time = watch.seconds();
  return rep;
}

inline VerificationReport run_suite(Suite which,
                                    const std::optional<SurfaceSpec>& spec,
                                    const SuiteOptions& opts) {
  if (which == Suite::Su2) return run_su2_suite(opts);
  if (!spec) throw SpecMismatch("suite needs a surface spec");
  switch (which) {
    case Suite::Variety: return run_variety_suite(*spec, opts);
    case Suite::Flows: return run_flow_suite(*spec, opts);
    case Suite::Theorem: return run_theorem_suite(*spec, opts);
    default: return run_su2_suite(opts);
  }
}

//
// --- report serialization ---------------------------------------------------
//

inline json to_json(const FailureRecord& f) {
  return json{{"trial_seed", f.trial_seed},
              {"identity", f.identity},
              {"residual", f.residual},
              {"tolerance", f.tolerance}};
}

inline json to_json(const VerificationReport& r) {
  json fails = json::array();
  for (const auto& f : r.failures) fails.push_back(to_json(f));
  json j{{"suite", r.suite},
         {"trials", r.trials},
         {"tolerance", r.tolerance},
         {"max_residual", r.max_residual},
         {"failures", fails},
         {"wall_time", r.wall_time}};
  if (r.spec) j["spec"] = to_json(*r.spec);
  return j;
}

}  // namespace goldman
