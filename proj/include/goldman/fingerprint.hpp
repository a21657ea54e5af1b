#pragma once

// Conjugation-invariant trace fingerprints. The word list for a given surface
// is fixed once: all words of length <= 4 over the tuple's letters and their
// inverses that close into a loop at the base vertex P, cyclically reduced,
// deduplicated up to cyclic rotation and word inversion. Traces of such words
// are invariant under the (two-sided) action, so disagreement certifies
// distinct orbits; agreement is only a filter.

#include <algorithm>
#include <map>
#include <mutex>
#include <vector>

#include "goldman/repvar.hpp"
#include "goldman/surface.hpp"

namespace goldman {

struct Fingerprint {
  std::vector<std::string> words;
  std::vector<double> traces;
};

namespace detail {

// Stable integer encoding of a letter for canonicalization.
inline int letter_code(const Letter& l) {
  int sym = static_cast<int>(l.sym);
  return ((sym * 64 + l.idx) << 1) | (l.inv ? 1 : 0);
}

inline bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int ca = letter_code(a[i]), cb = letter_code(b[i]);
    if (ca != cb) return ca < cb;
  }
  return false;
}

inline bool cyclically_reduced(const Word& w) {
  auto cancels = [](const Letter& x, const Letter& y) {
    return x.sym == y.sym && x.idx == y.idx && x.inv != y.inv;
  };
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (cancels(w[i], w[i + 1])) return false;
  if (w.size() > 1 && cancels(w.back(), w.front())) return false;
  return true;
}

// Minimum over all rotations of w and of w^-1.
inline Word canonical_class_rep(const Word& w) {
  Word best = w;
  auto consider = [&best](Word rot) {
    for (size_t r = 0; r < rot.size(); ++r) {
      if (word_less(rot, best)) best = rot;
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    }
  };
  consider(w);
  consider(inverse(w));
  return best;
}

inline std::vector<Letter> alphabet(const SurfaceSpec& spec, bool doubled) {
  std::vector<Letter> out;
  auto add = [&out](Sym s, int idx) {
    out.push_back({s, idx, false});
    out.push_back({s, idx, true});
  };
  add(Sym::C, 0);
  add(Sym::B, 0);
  for (int j = 0; j < a_count(spec); ++j) add(Sym::A, j);
  if (doubled) {
    add(Sym::Cbar, 0);
    add(Sym::Bbar, 0);
    for (int j = 0; j < a_count(spec); ++j) add(Sym::Abar, j);
  }
  return out;
}

inline std::vector<Word> build_word_list(const SurfaceSpec& spec,
                                         bool doubled) {
  std::vector<Letter> letters = alphabet(spec, doubled);
  std::vector<Word> canon;
  // Base-variety words always close (one vertex); cover words must loop at P.
  auto closes = [&](const Word& w) {
    return !doubled || closed_loop_vertex(w, spec.kase) == Vertex::P;
  };
  // depth-first enumeration in letter order gives a deterministic list
  std::function<void(Word&)> recurse = [&](Word& w) {
    if (!w.empty()) {
      if (cyclically_reduced(w) && closes(w)) {
        Word rep = canonical_class_rep(w);
        canon.push_back(rep);
      }
    }
    if (w.size() == 4) return;
    for (const Letter& l : letters) {
      w.push_back(l);
      recurse(w);
      w.pop_back();
    }
  };
  Word w;
  recurse(w);
  std::sort(canon.begin(), canon.end(), word_less);
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  return canon;
}

inline const std::vector<Word>& word_list(const SurfaceSpec& spec,
                                          bool doubled) {
  struct Key {
    SurfaceCase kase;
    int k;
    bool doubled;
    auto operator<=>(const Key&) const = default;
  };
  static std::mutex mu;
  static std::map<Key, std::vector<Word>> cache;
  std::lock_guard<std::mutex> lock(mu);
  Key key{spec.kase, spec.k, doubled};
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, build_word_list(spec, doubled)).first;
  return it->second;
}

}  // namespace detail

template <typename S>
Fingerprint fingerprint(const RepPoint<S>& p, const SurfaceSpec& spec) {
  check_arity(p, spec);
  Fingerprint fp;
  auto vals = letter_values(p);
  for (const Word& w : detail::word_list(spec, false)) {
    fp.words.push_back(word_name(w));
    fp.traces.push_back(double(evaluate_word<S>(w, vals).trace()));
  }
  return fp;
}

template <typename S>
Fingerprint fingerprint(const DoubleRepPoint<S>& q, const SurfaceSpec& spec) {
  check_arity(q, spec);
  Fingerprint fp;
  auto vals = letter_values(q);
  for (const Word& w : detail::word_list(spec, true)) {
    fp.words.push_back(word_name(w));
    fp.traces.push_back(double(evaluate_word<S>(w, vals).trace()));
  }
  return fp;
}

inline double fingerprint_distance(const Fingerprint& a, const Fingerprint& b) {
  if (a.traces.size() != b.traces.size())
    throw SpecMismatch("fingerprints of different word lists");
  double d = 0;
  for (size_t i = 0; i < a.traces.size(); ++i)
    d = std::max(d, std::abs(a.traces[i] - b.traces[i]));
  return d;
}

}  // namespace goldman
