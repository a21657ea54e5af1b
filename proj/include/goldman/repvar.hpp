#pragma once

// Points of the SU(2) representation varieties cut out by the surface
// relations, the conjugation / double-conjugation actions, the lift to the
// cover, the deck involution, and constructive samplers for all of them.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "goldman/defaults.hpp"
#include "goldman/errors.hpp"
#include "goldman/rng.hpp"
#include "goldman/su2.hpp"
#include "goldman/surface.hpp"

namespace goldman {

template <typename S>
struct RepPoint {
  Su2<S> c, b;
  std::vector<Su2<S>> a;
};

template <typename S>
struct DoubleRepPoint {
  Su2<S> c, b;
  std::vector<Su2<S>> a;
  Su2<S> cbar, bbar;
  std::vector<Su2<S>> abar;
};

using RepPointd = RepPoint<double>;
using DoubleRepPointd = DoubleRepPoint<double>;

template <typename S>
void check_arity(const RepPoint<S>& p, const SurfaceSpec& spec) {
  if (static_cast<int>(p.a.size()) != a_count(spec))
    throw ArityMismatch("tuple has " + std::to_string(p.a.size()) +
                        " a-letters, surface needs " +
                        std::to_string(a_count(spec)));
}

template <typename S>
void check_arity(const DoubleRepPoint<S>& q, const SurfaceSpec& spec) {
  if (static_cast<int>(q.a.size()) != a_count(spec) ||
      static_cast<int>(q.abar.size()) != a_count(spec))
    throw ArityMismatch("doubled tuple has (" + std::to_string(q.a.size()) +
                        ", " + std::to_string(q.abar.size()) +
                        ") a-letters, surface needs " +
                        std::to_string(a_count(spec)) + " of each");
}

template <typename S>
std::function<Su2<S>(Sym, int)> letter_values(const RepPoint<S>& p) {
  return [&p](Sym s, int i) -> Su2<S> {
    switch (s) {
      case Sym::C: return p.c;
      case Sym::B: return p.b;
      case Sym::A: return p.a.at(i);
      default: throw ArityMismatch("barred letter on a base tuple");
    }
  };
}

template <typename S>
std::function<Su2<S>(Sym, int)> letter_values(const DoubleRepPoint<S>& q) {
  return [&q](Sym s, int i) -> Su2<S> {
    switch (s) {
      case Sym::C: return q.c;
      case Sym::B: return q.b;
      case Sym::A: return q.a.at(i);
      case Sym::Cbar: return q.cbar;
      case Sym::Bbar: return q.bbar;
      case Sym::Abar: return q.abar.at(i);
    }
    throw ArityMismatch("bad letter");
  };
}

template <typename S>
S max_distance(const RepPoint<S>& p, const RepPoint<S>& q) {
  S d = std::max(p.c.distance(q.c), p.b.distance(q.b));
  for (size_t i = 0; i < p.a.size(); ++i)
    d = std::max(d, p.a[i].distance(q.a[i]));
  return d;
}

template <typename S>
S max_distance(const DoubleRepPoint<S>& p, const DoubleRepPoint<S>& q) {
  S d = std::max(p.c.distance(q.c), p.b.distance(q.b));
  for (size_t i = 0; i < p.a.size(); ++i)
    d = std::max(d, p.a[i].distance(q.a[i]));
  d = std::max(d, std::max(p.cbar.distance(q.cbar), p.bbar.distance(q.bbar)));
  for (size_t i = 0; i < p.abar.size(); ++i)
    d = std::max(d, p.abar[i].distance(q.abar[i]));
  return d;
}

//
// --- residuals --------------------------------------------------------------
//

template <typename S>
S relation_residual(const SurfaceSpec& spec, const RepPoint<S>& p) {
  check_arity(p, spec);
  return relation_defect<S>(base_relation_lhs(spec), base_relation_rhs(spec),
                            letter_values(p));
}

template <typename S>
std::pair<S, S> cover_relation_residuals(const SurfaceSpec& spec,
                                         const DoubleRepPoint<S>& q) {
  check_arity(q, spec);
  auto rels = cover_relations(spec);
  auto vals = letter_values(q);
  return {relation_defect<S>(rels[0].lhs, rels[0].rhs, vals),
          relation_defect<S>(rels[1].lhs, rels[1].rhs, vals)};
}

template <typename S>
S cover_relation_residual_max(const SurfaceSpec& spec,
                              const DoubleRepPoint<S>& q) {
  auto [r1, r2] = cover_relation_residuals(spec, q);
  return std::max(r1, r2);
}

//
// --- group actions ----------------------------------------------------------
//

// Simultaneous conjugation on base tuples.
template <typename S>
RepPoint<S> conjugate_tuple(const Su2<S>& g, const RepPoint<S>& p) {
  RepPoint<S> r;
  r.c = p.c.conjugated_by(g);
  r.b = p.b.conjugated_by(g);
  r.a.reserve(p.a.size());
  for (const auto& a : p.a) r.a.push_back(a.conjugated_by(g));
  return r;
}

// The two-sided action on cover tuples: each letter v with arrow src -> tgt
// maps to gauge(src) * v * gauge(tgt)^-1, where gauge(P) = g, gauge(Pbar) = h.
// Both relators transform by conjugation, so membership is preserved, and
// (g, h) = (-g, -h) acts identically.
template <typename S>
Su2<S> act_on_letter(const Su2<S>& g, const Su2<S>& h, SurfaceCase c, Sym sym,
                     const Su2<S>& v) {
  Arrow ar = arrow_of(c, sym);
  const Su2<S>& left = (ar.src == Vertex::P) ? g : h;
  const Su2<S>& right = (ar.tgt == Vertex::P) ? g : h;
  return left * v * right.inverse();
}

template <typename S>
DoubleRepPoint<S> act_pair(const Su2<S>& g, const Su2<S>& h,
                           const DoubleRepPoint<S>& q, const SurfaceSpec& spec) {
  check_arity(q, spec);
  SurfaceCase c = spec.kase;
  DoubleRepPoint<S> r;
  r.c = act_on_letter(g, h, c, Sym::C, q.c);
  r.b = act_on_letter(g, h, c, Sym::B, q.b);
  r.cbar = act_on_letter(g, h, c, Sym::Cbar, q.cbar);
  r.bbar = act_on_letter(g, h, c, Sym::Bbar, q.bbar);
  r.a.reserve(q.a.size());
  r.abar.reserve(q.abar.size());
  for (const auto& a : q.a) r.a.push_back(act_on_letter(g, h, c, Sym::A, a));
  for (const auto& ab : q.abar)
    r.abar.push_back(act_on_letter(g, h, c, Sym::Abar, ab));
  return r;
}

//
// --- lift and deck involution ----------------------------------------------
//

// Pullback along the covering map: duplicate every letter into its barred
// copy. Intertwines conjugation with the diagonal two-sided action.
template <typename S>
DoubleRepPoint<S> cover_lift(const RepPoint<S>& p, const SurfaceSpec& spec,
                             S membership_tol = S(tol::membership)) {
  S res = relation_residual(spec, p);
  if (!(res < membership_tol))
    throw NotInVariety("cover_lift: relation residual " +
                       std::to_string(double(res)) + " above tolerance");
  return DoubleRepPoint<S>{p.c, p.b, p.a, p.c, p.b, p.a};
}

// Deck involution: swap barred and unbarred halves. An involution that
// intertwines (g,h) with (h,g) and preserves both relators.
template <typename S>
DoubleRepPoint<S> deck_swap(const DoubleRepPoint<S>& q) {
  return DoubleRepPoint<S>{q.cbar, q.bbar, q.abar, q.c, q.b, q.a};
}

//
// --- constrained draws ------------------------------------------------------
//

namespace detail {

// Unit vector on the kernel of a linear functional, via Gaussian projection.
// A numerically zero functional degenerates gracefully to a Haar draw.
template <typename S>
Vec4<S> unit_on_kernel(Rng& rng, const Vec4<S>& functional) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    auto [g0, g1] = rng.normal_pair();
    auto [g2, g3] = rng.normal_pair();
    Vec4<S> v{S(g0), S(g1), S(g2), S(g3)};
    S n2 = functional.squaredNorm();
    if (n2 > S(1e-24)) v -= (functional.dot(v) / n2) * functional;
    if (v.norm() > S(1e-6)) return v / v.norm();
  }
  throw SamplerStuck("unit_on_kernel: degenerate draws");
}

// Unit quaternion with trace exactly 2*w0 and Haar-uniform axis.
template <typename S>
Su2<S> unit_with_real_part(Rng& rng, S w0) {
  if (!(std::abs(w0) < S(1))) throw SamplerStuck("prescribed trace out of range");
  for (int attempt = 0; attempt < 256; ++attempt) {
    auto [g0, g1] = rng.normal_pair();
    auto [g2, g3] = rng.normal_pair();
    (void)g3;
    Vec3<S> v{S(g0), S(g1), S(g2)};
    if (v.norm() < S(1e-6)) continue;
    v *= std::sqrt(S(1) - w0 * w0) / v.norm();
    Vec4<S> c;
    c[0] = w0;
    c.template tail<3>() = v;
    return Su2<S>::normalized(c);
  }
  throw SamplerStuck("unit_with_real_part: degenerate draws");
}

// Linear functional v -> trace(v) - trace(lambda(v)) evaluated on the
// coordinate basis, for lambda linear in v (e.g. v -> Y v or a word with one
// occurrence of v or conj(v)).
template <typename S>
Vec4<S> trace_match_functional(
    const std::function<Su2<S>(const Su2<S>&)>& lambda) {
  Vec4<S> coeffs;
  for (int i = 0; i < 4; ++i) {
    Vec4<S> e = Vec4<S>::Zero();
    e[i] = S(1);
    Su2<S> basis = Su2<S>::from_raw(e);
    coeffs[i] = basis.trace() - lambda(basis).trace();
  }
  return coeffs;
}

// Solve u p u^-1 = q with a Haar-uniform choice among all solutions:
// particular conjugator times a random element of p's centralizer torus.
template <typename S>
Su2<S> random_conjugating_element(Rng& rng, const Su2<S>& p, const Su2<S>& q) {
  Su2<S> x = conjugator(p, q);
  return x * twist(p, S(rng.uniform(0, 6.283185307179586)));
}

}  // namespace detail

//
// --- samplers ---------------------------------------------------------------
//

// Exact-membership sampler for the base variety. Cases i/ii draw everything
// but a_k and take a square root (random branch sign) for a_k; case iii draws
// everything but the last two a-letters, draws a_2k restricted to the affine
// trace condition that makes the final commutator solvable, and completes
// a_2k-1 with a randomized conjugator. Residuals come out at roundoff scale.
template <typename S>
RepPoint<S> sample_base(const SurfaceSpec& spec, Rng& rng) {
  validate_spec(spec, /*allow_k0=*/true);
  const int n = a_count(spec);
  for (int attempt = 0; attempt < sampler_max_attempts; ++attempt) {
    RepPoint<S> p;
    p.c = haar_sample<S>(rng);
    p.b = haar_sample<S>(rng);
    p.a.assign(n, Su2<S>::identity());

    Su2<S> w = evaluate_word<S>(base_relation_lhs(spec), letter_values(p));

    if (spec.kase != SurfaceCase::III) {
      Su2<S> prefix = Su2<S>::identity();
      for (int j = 0; j + 1 < n; ++j) {
        p.a[j] = haar_sample<S>(rng);
        prefix = prefix * p.a[j] * p.a[j];
      }
      Su2<S> target = prefix.inverse() * w;
      Su2<S> root = principal_sqrt(target);
      if (rng.uniform01() < 0.5) root = -root;
      p.a[n - 1] = root;
      return p;
    }

    // case iii
    if (spec.k == 0) {
      // relation collapses to b^-1 c^-1 b = c: solvable since trace(c^-1)
      // equals trace(c); b is a randomized conjugating element.
      if (p.c.is_central(S(1e-6))) continue;
      p.b = detail::random_conjugating_element(rng, p.c.inverse(), p.c).inverse();
      return p;
    }
    Su2<S> prefix = Su2<S>::identity();
    for (int j = 0; j + 2 < n; ++j) {
      p.a[j] = haar_sample<S>(rng);
      if ((j & 1) == 1)
        prefix = prefix * p.a[j - 1] * p.a[j] * p.a[j - 1].inverse() *
                 p.a[j].inverse();
    }
    Su2<S> t = prefix.inverse() * w;  // need [a_{n-2}, a_{n-1}] = t
    // x y x^-1 y^-1 = t with y drawn on trace(y) = trace(t y), x a
    // randomized conjugator from y to t y.
    Vec4<S> functional = detail::trace_match_functional<S>(
        [&t](const Su2<S>& v) { return t * v; });
    Su2<S> y = Su2<S>::from_raw(detail::unit_on_kernel(rng, functional));
    Su2<S> ty = t * y;
    if (y.is_central(S(1e-6)) || ty.is_central(S(1e-6))) continue;
    if (std::abs(y.trace() - ty.trace()) >= S(tol::conjugator_trace)) continue;
    Su2<S> x = detail::random_conjugating_element(rng, y, ty);
    p.a[n - 2] = x;
    p.a[n - 1] = y;
    return p;
  }
  throw SamplerStuck("sample_base: attempt budget exhausted");
}

// Exact-membership sampler for the cover variety. The unknown choices per
// case (recorded in the project notes as well):
//   case i  : solve abar_k from R1; then R2 says bbar^-1 cbar bbar = Y cbar
//             with Y known, so draw cbar on the kernel of the linear trace
//             functional tr(v) - tr(Y v) and conjugate.
//   case ii : draw cbar on the kernel of tr(v) - tr(P a_k Q^-1 b^-1 c^-1 b
//             conj(v) a_k^-1 c) (cbar occurs once, so this is linear), then
//             abar_k from R2 and bbar from R1.
//   case iii: draw cbar with the prescribed trace tr(Y c), bbar by
//             conjugator, then fill the abar commutator block like the base
//             case-iii sampler applied to R2.
template <typename S>
DoubleRepPoint<S> sample_cover(const SurfaceSpec& spec, Rng& rng) {
  validate_spec(spec, /*allow_k0=*/true);
  const int n = a_count(spec);
  for (int attempt = 0; attempt < sampler_max_attempts; ++attempt) {
    DoubleRepPoint<S> q;
    q.c = haar_sample<S>(rng);
    q.b = haar_sample<S>(rng);
    q.a.assign(n, Su2<S>::identity());
    q.abar.assign(n, Su2<S>::identity());
    for (int j = 0; j < n; ++j) q.a[j] = haar_sample<S>(rng);

    if (spec.kase == SurfaceCase::I) {
      for (int j = 0; j + 1 < n; ++j) q.abar[j] = haar_sample<S>(rng);
      Su2<S> w = q.b.inverse() * q.c * q.b * q.c.inverse();
      Su2<S> prefix = Su2<S>::identity();  // a_1 abar_1 ... a_{k-1} abar_{k-1} a_k
      for (int j = 0; j + 1 < n; ++j) prefix = prefix * q.a[j] * q.abar[j];
      prefix = prefix * q.a[n - 1];
      q.abar[n - 1] = prefix.inverse() * w;
      Su2<S> y = Su2<S>::identity();  // abar_1 a_1 ... abar_k a_k
      for (int j = 0; j < n; ++j) y = y * q.abar[j] * q.a[j];
      // R2: bbar^-1 cbar bbar = y cbar
      Vec4<S> functional = detail::trace_match_functional<S>(
          [&y](const Su2<S>& v) { return y * v; });
      q.cbar = Su2<S>::from_raw(detail::unit_on_kernel(rng, functional));
      Su2<S> ycbar = y * q.cbar;
      if (q.cbar.is_central(S(1e-6)) || ycbar.is_central(S(1e-6))) continue;
      if (std::abs(q.cbar.trace() - ycbar.trace()) >= S(tol::conjugator_trace))
        continue;
      q.bbar = detail::random_conjugating_element(rng, q.cbar, ycbar).inverse();
      return q;
    }

    if (spec.kase == SurfaceCase::II) {
      for (int j = 0; j + 1 < n; ++j) q.abar[j] = haar_sample<S>(rng);
      Su2<S> pword = Su2<S>::identity();  // a_1 abar_1 ... a_{k-1} abar_{k-1}
      for (int j = 0; j + 1 < n; ++j) pword = pword * q.a[j] * q.abar[j];
      Su2<S> qword = Su2<S>::identity();  // abar_1 a_1 ... abar_{k-1} a_{k-1}
      for (int j = 0; j + 1 < n; ++j) qword = qword * q.abar[j] * q.a[j];
      Su2<S> conj_part = q.b.inverse() * q.c.inverse() * q.b;
      Su2<S> ak = q.a[n - 1];
      // R2 determines abar_k(cbar); R1 then needs bbar^-1 cbar^-1 bbar =
      // Y(cbar) c with Y = P a_k Q^-1 conj_part cbar^-1 a_k^-1. Solvability
      // is the vanishing of a functional linear in cbar.
      auto ycb = [&](const Su2<S>& v) {
        return pword * ak * qword.inverse() * conj_part * v.inverse() *
               ak.inverse();
      };
      Vec4<S> functional = detail::trace_match_functional<S>(
          [&](const Su2<S>& v) { return ycb(v) * q.c; });
      q.cbar = Su2<S>::from_raw(detail::unit_on_kernel(rng, functional));
      Su2<S> target = ycb(q.cbar) * q.c;
      if (q.cbar.is_central(S(1e-6)) || target.is_central(S(1e-6))) continue;
      if (std::abs(q.cbar.trace() - target.trace()) >= S(tol::conjugator_trace))
        continue;
      q.bbar =
          detail::random_conjugating_element(rng, q.cbar.inverse(), target)
              .inverse();
      q.abar[n - 1] =
          qword.inverse() * conj_part * q.cbar.inverse() * ak.inverse();
      return q;
    }

    // case iii
    if (spec.k == 0) {
      // R2 forces cbar = b^-1 c^-1 b; R1 then asks bbar^-1 cbar^-1 bbar = c,
      // solvable because cbar^-1 is a conjugate of c.
      if (q.c.is_central(S(1e-6))) continue;
      q.cbar = q.b.inverse() * q.c.inverse() * q.b;
      q.bbar = detail::random_conjugating_element(rng, q.cbar.inverse(), q.c)
                   .inverse();
      return q;
    }
    Su2<S> y = Su2<S>::identity();
    for (int j = 0; j + 1 < n; j += 2)
      y = y * q.a[j] * q.a[j + 1] * q.a[j].inverse() * q.a[j + 1].inverse();
    Su2<S> yc = y * q.c;
    if (yc.is_central(S(1e-6))) continue;
    q.cbar = detail::unit_with_real_part(rng, yc.trace() / S(2));
    if (q.cbar.is_central(S(1e-6))) continue;
    q.bbar =
        detail::random_conjugating_element(rng, q.cbar.inverse(), yc).inverse();
    Su2<S> z = q.b.inverse() * q.c.inverse() * q.b * q.cbar.inverse();
    Su2<S> prefix = Su2<S>::identity();
    for (int j = 0; j + 2 < n; ++j) {
      q.abar[j] = haar_sample<S>(rng);
      if ((j & 1) == 1)
        prefix = prefix * q.abar[j - 1] * q.abar[j] * q.abar[j - 1].inverse() *
                 q.abar[j].inverse();
    }
    Su2<S> tbar = prefix.inverse() * z;
    Vec4<S> functional = detail::trace_match_functional<S>(
        [&tbar](const Su2<S>& v) { return tbar * v; });
    Su2<S> ybar = Su2<S>::from_raw(detail::unit_on_kernel(rng, functional));
    Su2<S> tybar = tbar * ybar;
    if (ybar.is_central(S(1e-6)) || tybar.is_central(S(1e-6))) continue;
    if (std::abs(ybar.trace() - tybar.trace()) >= S(tol::conjugator_trace))
      continue;
    q.abar[n - 2] = detail::random_conjugating_element(rng, ybar, tybar);
    q.abar[n - 1] = ybar;
    return q;
  }
  throw SamplerStuck("sample_cover: attempt budget exhausted");
}

//
// --- deck-fixed strata ------------------------------------------------------
//

// The stratum N_x of the deck-fixed locus attached to a twist x: cover points
// of the explicit shape
//   case i  : (c, b, A, c, b,   A x)
//   case ii : (c, b, A, c, b x, A x)
//   case iii: (c, b, A, c, b x, A)
// with x commuting with every letter. Equivalently (the criterion used by
// in_fixed_stratum): deck_swap(q) = act_pair(1, x^-1, q).
struct StratumCheck {
  bool member = false;
  double residual = 0;
};

template <typename S>
StratumCheck in_fixed_stratum(const DoubleRepPoint<S>& q, const Su2<S>& x,
                              const SurfaceSpec& spec,
                              S tolerance = S(tol::membership)) {
  check_arity(q, spec);
  DoubleRepPoint<S> lhs = deck_swap(q);
  DoubleRepPoint<S> rhs = act_pair(Su2<S>::identity(), x.inverse(), q, spec);
  S d = max_distance(lhs, rhs);
  return StratumCheck{d < tolerance, double(d)};
}

// Builds the doubled tuple of the explicit stratum shape from a base tuple.
template <typename S>
DoubleRepPoint<S> stratum_shape(const RepPoint<S>& p, const Su2<S>& x,
                                SurfaceCase kase) {
  DoubleRepPoint<S> q{p.c, p.b, p.a, p.c, p.b, p.a};
  if (kase != SurfaceCase::I) q.bbar = p.b * x;
  if (kase != SurfaceCase::III)
    for (auto& ab : q.abar) ab = ab * x;
  return q;
}

// Sampler for N_x. x = 1 lifts a base sample; x = -1 twists the base-relation
// right-hand side by the sign (-1)^k where the letter squares pick it up
// (cases i/ii) and needs no twist in case iii; a non-central x forces every
// letter into x's maximal torus, where the relator collapses to an angle
// equation solved for the last a-angle (cases i/ii) or to c^2 = 1 (case iii,
// so those tuples have central c and are outside the flow domain).
template <typename S>
DoubleRepPoint<S> sample_fixed_stratum(const SurfaceSpec& spec, const Su2<S>& x,
                                       Rng& rng,
                                       S eps = S(tol::degeneracy)) {
  validate_spec(spec, /*allow_k0=*/false);
  const int n = a_count(spec);
  if (x.is_central(eps)) {
    bool plus = x.w() > S(0);
    if (plus) return cover_lift(sample_base<S>(spec, rng), spec);
    if (spec.kase == SurfaceCase::III)
      return stratum_shape(sample_base<S>(spec, rng), x, spec.kase);
    // cases i/ii with x = -1: need a_1^2 ... a_k^2 = (-1)^k * (relator lhs)
    for (int attempt = 0; attempt < sampler_max_attempts; ++attempt) {
      RepPoint<S> p;
      p.c = haar_sample<S>(rng);
      p.b = haar_sample<S>(rng);
      p.a.assign(n, Su2<S>::identity());
      Su2<S> w = evaluate_word<S>(base_relation_lhs(spec), letter_values(p));
      if (spec.k % 2 == 1) w = -w;
      Su2<S> prefix = Su2<S>::identity();
      for (int j = 0; j + 1 < n; ++j) {
        p.a[j] = haar_sample<S>(rng);
        prefix = prefix * p.a[j] * p.a[j];
      }
      Su2<S> root = principal_sqrt(prefix.inverse() * w);
      if (rng.uniform01() < 0.5) root = -root;
      p.a[n - 1] = root;
      return stratum_shape(p, x, spec.kase);
    }
    throw SamplerStuck("sample_fixed_stratum: attempt budget exhausted");
  }

  // toral branch
  Vec3<S> u = axis_of(x, eps);
  S phi = rotation_angle(x, eps);
  auto tor = [&u](S theta) {
    Vec4<S> c;
    c[0] = std::cos(theta);
    c.template tail<3>() = std::sin(theta) * u;
    return Su2<S>::normalized(c);
  };
  const S two_pi = S(6.283185307179586476925286766559);
  RepPoint<S> p;
  p.a.assign(n, Su2<S>::identity());
  if (spec.kase == SurfaceCase::III) {
    // membership forces c^2 = 1 on an abelian tuple
    p.c = (rng.uniform01() < 0.5) ? Su2<S>::identity()
                                  : Su2<S>::minus_identity();
    p.b = tor(S(rng.uniform(0, 6.283185307179586)));
    for (int j = 0; j < n; ++j) p.a[j] = tor(S(rng.uniform(0, 6.283185307179586)));
    return stratum_shape(p, x, spec.kase);
  }
  S theta_c = 0;
  for (int attempt = 0;; ++attempt) {
    if (attempt >= sampler_max_attempts)
      throw SamplerStuck("sample_fixed_stratum: attempt budget exhausted");
    theta_c = S(rng.uniform(0, 6.283185307179586));
    if (std::abs(std::sin(theta_c)) > S(0.05)) break;  // keep c off the center
  }
  p.c = tor(theta_c);
  p.b = tor(S(rng.uniform(0, 6.283185307179586)));
  S angle_sum = 0;
  for (int j = 0; j + 1 < n; ++j) {
    S th = S(rng.uniform(0, 6.283185307179586));
    p.a[j] = tor(th);
    angle_sum += th;
  }
  // case i : 2*sum(theta_a) + k*phi = 0 (mod 2pi)
  // case ii: -2*theta_c = 2*sum(theta_a) + k*phi (mod 2pi)
  S rhs_target = -S(spec.k) * phi / S(2) - angle_sum;
  if (spec.kase == SurfaceCase::II) rhs_target -= theta_c;
  if (rng.uniform01() < 0.5) rhs_target += two_pi / S(2);
  p.a[n - 1] = tor(rhs_target);
  return stratum_shape(p, x, spec.kase);
}

}  // namespace goldman
