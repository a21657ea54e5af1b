#pragma once

// Surface presentations and their double covers, as letter/word machinery.
//
// Three cases of a compact surface S- with a distinguished two-sided curve and
// its orientable (case i: already-orientable quotient data is barred/unbarred
// halves of the cover; see the case table below) double cover S+:
//
//   case i   : S- nonorientable, S+ orientable,      chi = -k, generators c, b, a_1..a_k
//   case ii  : S- and S+ both nonorientable,         chi = -k, generators c, b, a_1..a_k
//   case iii : S- orientable, S+ nonorientable,      chi = -2k, generators c, b, a_1..a_2k
//
// Base relation (one relator, leftmost letter acts first):
//   case i   : b^-1 c b c^-1     = a_1^2 ... a_k^2
//   case ii  : b^-1 c^-1 b c^-1  = a_1^2 ... a_k^2
//   case iii : b^-1 c^-1 b c^-1  = [a_1,a_2] ... [a_2k-1,a_2k]
// with [x,y] = x y x^-1 y^-1.
//
// Cover presentation doubles every generator (barred copies) and carries two
// relators R1 (a loop at the base vertex P) and R2 (at Pbar):
//   case i   : R1: b^-1 c b c^-1        = a_1 abar_1 ... a_k abar_k
//              R2: bbar^-1 cbar bbar cbar^-1 = abar_1 a_1 ... abar_k a_k
//   case ii  : R1: bbar^-1 cbar^-1 bbar c^-1 = a_1 abar_1 ... a_k abar_k
//              R2: b^-1 c^-1 b cbar^-1       = abar_1 a_1 ... abar_k a_k
//   case iii : R1: bbar^-1 cbar^-1 bbar c^-1 = [a_1,a_2] ...
//              R2: b^-1 c^-1 b cbar^-1       = [abar_1,abar_2] ...
//
// Each letter is an arrow between the two vertices P, Pbar of the quotient
// graph; a word contributes a conjugation-invariant trace exactly when it
// closes up into a loop.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "goldman/errors.hpp"
#include "goldman/su2.hpp"

namespace goldman {

enum class SurfaceCase { I, II, III };

struct SurfaceSpec {
  SurfaceCase kase = SurfaceCase::I;
  int k = 1;

  friend bool operator==(const SurfaceSpec&, const SurfaceSpec&) = default;
};

inline std::string case_name(SurfaceCase c) {
  switch (c) {
    case SurfaceCase::I: return "i";
    case SurfaceCase::II: return "ii";
    case SurfaceCase::III: return "iii";
  }
  return "?";
}

inline std::optional<SurfaceCase> case_from_name(const std::string& s) {
  if (s == "i") return SurfaceCase::I;
  if (s == "ii") return SurfaceCase::II;
  if (s == "iii") return SurfaceCase::III;
  return std::nullopt;
}

// k = 0 only makes sense in case iii (a genus-one quotient with no a-letters)
// and is opt-in: the default pipelines require k >= 1.
inline void validate_spec(const SurfaceSpec& s, bool allow_k0 = false) {
  int min_k = (allow_k0 && s.kase == SurfaceCase::III) ? 0 : 1;
  if (s.k < min_k)
    throw InvalidElement("surface spec: k = " + std::to_string(s.k) +
                         " below minimum " + std::to_string(min_k) +
                         " for case " + case_name(s.kase));
}

// Number of a-generators.
inline int a_count(const SurfaceSpec& s) {
  return s.kase == SurfaceCase::III ? 2 * s.k : s.k;
}

inline int generator_count(const SurfaceSpec& s) { return 2 + a_count(s); }

inline int euler_characteristic(const SurfaceSpec& s) {
  return s.kase == SurfaceCase::III ? -2 * s.k : -s.k;
}

//
// --- letters and words ------------------------------------------------------
//

enum class Sym { C, B, A, Cbar, Bbar, Abar };

inline bool is_barred(Sym s) {
  return s == Sym::Cbar || s == Sym::Bbar || s == Sym::Abar;
}

struct Letter {
  Sym sym = Sym::C;
  int idx = 0;      // a-index, 0-based; unused for c, b
  bool inv = false;

  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

inline Letter inverse(Letter l) {
  l.inv = !l.inv;
  return l;
}

inline Word inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(inverse(*it));
  return r;
}

inline std::string letter_name(const Letter& l) {
  std::string s;
  switch (l.sym) {
    case Sym::C: s = "c"; break;
    case Sym::B: s = "b"; break;
    case Sym::A: s = "a" + std::to_string(l.idx + 1); break;
    case Sym::Cbar: s = "c~"; break;
    case Sym::Bbar: s = "b~"; break;
    case Sym::Abar: s = "a" + std::to_string(l.idx + 1) + "~"; break;
  }
  if (l.inv) s += "'";
  return s;
}

inline std::string word_name(const Word& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += letter_name(w[i]);
  }
  return s;
}

// Holonomy of a word: leftmost letter first, Hol(st) = Hol(s) Hol(t).
template <typename S>
Su2<S> evaluate_word(const Word& w,
                     const std::function<Su2<S>(Sym, int)>& value) {
  Su2<S> h = Su2<S>::identity();
  for (const Letter& l : w) {
    Su2<S> v = value(l.sym, l.idx);
    h = h * (l.inv ? v.inverse() : v);
  }
  return h;
}

//
// --- relation words ---------------------------------------------------------
//

namespace detail {

inline Word squares_rhs(int k, Sym a_sym) {
  Word w;
  for (int j = 0; j < k; ++j) {
    w.push_back({a_sym, j, false});
    w.push_back({a_sym, j, false});
  }
  return w;
}

inline Word commutators_rhs(int k, Sym a_sym) {
  Word w;
  for (int j = 0; j < k; ++j) {
    w.push_back({a_sym, 2 * j, false});
    w.push_back({a_sym, 2 * j + 1, false});
    w.push_back({a_sym, 2 * j, true});
    w.push_back({a_sym, 2 * j + 1, true});
  }
  return w;
}

// a_1 abar_1 ... a_k abar_k (first = true) or abar_1 a_1 ... (first = false)
inline Word alternating_rhs(int k, bool unbarred_first) {
  Word w;
  for (int j = 0; j < k; ++j) {
    if (unbarred_first) {
      w.push_back({Sym::A, j, false});
      w.push_back({Sym::Abar, j, false});
    } else {
      w.push_back({Sym::Abar, j, false});
      w.push_back({Sym::A, j, false});
    }
  }
  return w;
}

}  // namespace detail

// Left-hand side of the single base relator.
inline Word base_relation_lhs(const SurfaceSpec& s) {
  bool c_inverted = s.kase != SurfaceCase::I;
  return {{Sym::B, 0, true},
          {Sym::C, 0, c_inverted},
          {Sym::B, 0, false},
          {Sym::C, 0, true}};
}

inline Word base_relation_rhs(const SurfaceSpec& s) {
  return s.kase == SurfaceCase::III ? detail::commutators_rhs(s.k, Sym::A)
                                    : detail::squares_rhs(s.k, Sym::A);
}

struct RelationPair {
  Word lhs, rhs;
};

// Two relators of the cover presentation: R1 closes at P, R2 at Pbar.
inline std::array<RelationPair, 2> cover_relations(const SurfaceSpec& s) {
  RelationPair r1, r2;
  switch (s.kase) {
    case SurfaceCase::I:
      r1.lhs = {{Sym::B, 0, true},
                {Sym::C, 0, false},
                {Sym::B, 0, false},
                {Sym::C, 0, true}};
      r1.rhs = detail::alternating_rhs(s.k, true);
      r2.lhs = {{Sym::Bbar, 0, true},
                {Sym::Cbar, 0, false},
                {Sym::Bbar, 0, false},
                {Sym::Cbar, 0, true}};
      r2.rhs = detail::alternating_rhs(s.k, false);
      break;
    case SurfaceCase::II:
      r1.lhs = {{Sym::Bbar, 0, true},
                {Sym::Cbar, 0, true},
                {Sym::Bbar, 0, false},
                {Sym::C, 0, true}};
      r1.rhs = detail::alternating_rhs(s.k, true);
      r2.lhs = {{Sym::B, 0, true},
                {Sym::C, 0, true},
                {Sym::B, 0, false},
                {Sym::Cbar, 0, true}};
      r2.rhs = detail::alternating_rhs(s.k, false);
      break;
    case SurfaceCase::III:
      r1.lhs = {{Sym::Bbar, 0, true},
                {Sym::Cbar, 0, true},
                {Sym::Bbar, 0, false},
                {Sym::C, 0, true}};
      r1.rhs = detail::commutators_rhs(s.k, Sym::A);
      r2.lhs = {{Sym::B, 0, true},
                {Sym::C, 0, true},
                {Sym::B, 0, false},
                {Sym::Cbar, 0, true}};
      r2.rhs = detail::commutators_rhs(s.k, Sym::Abar);
      break;
  }
  return {r1, r2};
}

//
// --- arrow typing -----------------------------------------------------------
//

enum class Vertex { P, Pbar };

struct Arrow {
  Vertex src = Vertex::P, tgt = Vertex::P;
};

// Source/target vertex of each positively-oriented letter. c is always a loop
// at P and cbar at Pbar; the a-letters cross in cases i/ii and are loops in
// case iii; b crosses exactly in cases ii/iii.
inline Arrow arrow_of(SurfaceCase c, Sym s) {
  auto loop = [](Vertex v) { return Arrow{v, v}; };
  bool b_crosses = (c != SurfaceCase::I);
  bool a_crosses = (c != SurfaceCase::III);
  switch (s) {
    case Sym::C: return loop(Vertex::P);
    case Sym::Cbar: return loop(Vertex::Pbar);
    case Sym::B:
      return b_crosses ? Arrow{Vertex::P, Vertex::Pbar} : loop(Vertex::P);
    case Sym::Bbar:
      return b_crosses ? Arrow{Vertex::Pbar, Vertex::P} : loop(Vertex::Pbar);
    case Sym::A:
      return a_crosses ? Arrow{Vertex::P, Vertex::Pbar} : loop(Vertex::P);
    case Sym::Abar:
      return a_crosses ? Arrow{Vertex::Pbar, Vertex::P} : loop(Vertex::Pbar);
  }
  return loop(Vertex::P);
}

inline Arrow arrow_of(SurfaceCase c, const Letter& l) {
  Arrow a = arrow_of(c, l.sym);
  return l.inv ? Arrow{a.tgt, a.src} : a;
}

// Vertex the word loops at, if it composes and closes; nullopt otherwise.
inline std::optional<Vertex> closed_loop_vertex(const Word& w, SurfaceCase c) {
  if (w.empty()) return std::nullopt;
  Arrow first = arrow_of(c, w.front());
  Vertex at = first.tgt;
  for (size_t i = 1; i < w.size(); ++i) {
    Arrow a = arrow_of(c, w[i]);
    if (a.src != at) return std::nullopt;
    at = a.tgt;
  }
  if (at != first.src) return std::nullopt;
  return first.src;
}

//
// --- residuals --------------------------------------------------------------
//

// Distance of lhs * rhs^-1 from the identity in quaternion coordinates.
template <typename S>
S relation_defect(const Word& lhs, const Word& rhs,
                  const std::function<Su2<S>(Sym, int)>& value) {
  Su2<S> l = evaluate_word<S>(lhs, value);
  Su2<S> r = evaluate_word<S>(rhs, value);
  return (l * r.inverse()).distance(Su2<S>::identity());
}

}  // namespace goldman
