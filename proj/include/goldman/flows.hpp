#pragma once

// Twist flows. On the base variety the flow twists b by the one-parameter
// subgroup attached to c; on the cover there is one twist per lifted
// cylinder, and the composite that descends is the first twist at time t
// composed with the second at time -t. All flows fix every letter except the
// one crossing the twisting curve, so membership, the conserved holonomies,
// and equivariance are structural.

#include <cstdint>
#include <string>
#include <vector>

#include "goldman/defaults.hpp"
#include "goldman/errors.hpp"
#include "goldman/repvar.hpp"

namespace goldman {

// Base flow: b <- twist(c, t)^-1 b. Defined where c is not central.
template <typename S>
RepPoint<S> base_twist_flow(const RepPoint<S>& p, S t,
                            S eps = S(tol::degeneracy)) {
  if (p.c.is_central(eps))
    throw DegenerateElement("base twist flow: c is central");
  RepPoint<S> r = p;
  r.b = twist(p.c, t, eps).inverse() * p.b;
  return r;
}

// First cover twist: same formula on the unbarred half, barred half untouched.
template <typename S>
DoubleRepPoint<S> cover_twist_first(const DoubleRepPoint<S>& q, S t,
                                    S eps = S(tol::degeneracy)) {
  if (q.c.is_central(eps))
    throw DegenerateElement("cover twist (first cylinder): c is central");
  DoubleRepPoint<S> r = q;
  r.b = twist(q.c, t, eps).inverse() * q.b;
  return r;
}

// Second cover twist, on the cylinder whose orientation is reversed by the
// deck map: bbar <- twist(cbar, t) * bbar (left multiplication, no inverse).
template <typename S>
DoubleRepPoint<S> cover_twist_second(const DoubleRepPoint<S>& q, S t,
                                     S eps = S(tol::degeneracy)) {
  if (q.cbar.is_central(eps))
    throw DegenerateElement("cover twist (second cylinder): cbar is central");
  DoubleRepPoint<S> r = q;
  r.bbar = twist(q.cbar, t, eps) * q.bbar;
  return r;
}

// The composite that commutes with the deck involution: first twist at t,
// second at -t. Closed form: both b and bbar pick up the inverse twist of
// their own c on the left.
template <typename S>
DoubleRepPoint<S> composite_flow(const DoubleRepPoint<S>& q, S t,
                                 S eps = S(tol::degeneracy)) {
  if (q.c.is_central(eps))
    throw DegenerateElement("composite flow: c is central");
  if (q.cbar.is_central(eps))
    throw DegenerateElement("composite flow: cbar is central");
  DoubleRepPoint<S> r = q;
  r.b = twist(q.c, t, eps).inverse() * q.b;
  r.bbar = twist(q.cbar, t, eps).inverse() * q.bbar;
  return r;
}

//
// --- endpoint rules ---------------------------------------------------------
//

// How a flow acts on one holonomy letter: hol <- twist^left * hol * twist^right
// with exponents in {-1, 0, +1}. Only rules forced by the composite-flow
// construction are pinned: the letter crossing the twisted cylinder once gets
// (-1, 0) for the forward twists and (+1, 0) for the reversed-side twist;
// every other letter gets (0, 0).
struct EndpointRule {
  int left = 0;
  int right = 0;
};

template <typename S>
Su2<S> apply_endpoint_rule(const EndpointRule& rule, const Su2<S>& hol,
                           const Su2<S>& anchor, S t,
                           S eps = S(tol::degeneracy)) {
  Su2<S> z = twist(anchor, t, eps);
  Su2<S> out = hol;
  if (rule.left == 1) out = z * out;
  if (rule.left == -1) out = z.inverse() * out;
  if (rule.right == 1) out = out * z;
  if (rule.right == -1) out = out * z.inverse();
  return out;
}

enum class FlowKind { BaseTwist, CoverFirst, CoverSecond, Composite };

inline std::string flow_name(FlowKind f) {
  switch (f) {
    case FlowKind::BaseTwist: return "xi";
    case FlowKind::CoverFirst: return "phi";
    case FlowKind::CoverSecond: return "psi";
    case FlowKind::Composite: return "composite";
  }
  return "?";
}

// Rule and twist anchor for a letter under a named flow. Anchor is the letter
// whose twist multiplies: c for the first cylinder, cbar for the second.
struct LetterRule {
  EndpointRule rule;
  Sym anchor = Sym::C;
};

inline LetterRule rule_for(FlowKind f, Sym s) {
  switch (f) {
    case FlowKind::BaseTwist:
    case FlowKind::CoverFirst:
      if (s == Sym::B) return {{-1, 0}, Sym::C};
      break;
    case FlowKind::CoverSecond:
      if (s == Sym::Bbar) return {{+1, 0}, Sym::Cbar};
      break;
    case FlowKind::Composite:
      if (s == Sym::B) return {{-1, 0}, Sym::C};
      if (s == Sym::Bbar) return {{-1, 0}, Sym::Cbar};
      break;
  }
  return {{0, 0}, Sym::C};
}

// Apply a named flow through the endpoint-rule table (used to cross-check the
// direct formulas).
template <typename S>
DoubleRepPoint<S> apply_rules(FlowKind f, const DoubleRepPoint<S>& q, S t,
                              S eps = S(tol::degeneracy)) {
  auto anchor_value = [&q](Sym a) -> const Su2<S>& {
    return a == Sym::Cbar ? q.cbar : q.c;
  };
  auto one = [&](Sym s, const Su2<S>& v) {
    LetterRule lr = rule_for(f, s);
    if (lr.rule.left == 0 && lr.rule.right == 0) return v;
    return apply_endpoint_rule(lr.rule, v, anchor_value(lr.anchor), t, eps);
  };
  DoubleRepPoint<S> r = q;
  r.c = one(Sym::C, q.c);
  r.b = one(Sym::B, q.b);
  r.cbar = one(Sym::Cbar, q.cbar);
  r.bbar = one(Sym::Bbar, q.bbar);
  for (auto& a : r.a) a = one(Sym::A, a);
  for (auto& ab : r.abar) ab = one(Sym::Abar, ab);
  return r;
}

// Cross-check report: rule-table application vs direct flow formulas, plus
// relation preservation, over sampled cover points.
struct RuleCheckReport {
  int trials = 0;
  double max_mismatch = 0;       // rule table vs direct formula
  double max_residual_drift = 0; // membership residual before vs after
  std::vector<std::string> violations;
};

template <typename S>
RuleCheckReport consistency_check_rules(const SurfaceSpec& spec, int trials,
                                        std::uint64_t seed,
                                        S tolerance = S(1e-12)) {
  RuleCheckReport rep;
  rep.trials = trials;
  for (int i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, std::uint64_t(i)));
    DoubleRepPoint<S> q = sample_cover<S>(spec, rng);
    if (q.c.is_central(S(1e-6)) || q.cbar.is_central(S(1e-6))) continue;
    S t = S(rng.uniform(-8, 8));
    S before = cover_relation_residual_max(spec, q);
    for (FlowKind f : {FlowKind::CoverFirst, FlowKind::CoverSecond,
                       FlowKind::Composite}) {
      DoubleRepPoint<S> direct;
      switch (f) {
        case FlowKind::CoverFirst: direct = cover_twist_first(q, t); break;
        case FlowKind::CoverSecond: direct = cover_twist_second(q, t); break;
        default: direct = composite_flow(q, t); break;
      }
      S mism = max_distance(apply_rules(f, q, t), direct);
      rep.max_mismatch = std::max(rep.max_mismatch, double(mism));
      if (!(mism < tolerance))
        rep.violations.push_back(flow_name(f) + ": rule table deviates by " +
                                 std::to_string(double(mism)) + " at trial " +
                                 std::to_string(i));
      S drift = std::abs(cover_relation_residual_max(spec, direct) - before);
      rep.max_residual_drift = std::max(rep.max_residual_drift, double(drift));
      if (!(drift < S(tol::membership)))
        rep.violations.push_back(flow_name(f) +
                                 ": membership drift at trial " +
                                 std::to_string(i));
    }
  }
  return rep;
}

}  // namespace goldman
