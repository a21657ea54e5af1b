#pragma once

// Orbit-equality decisions via intertwiner kernels. Conjugating g with
// g v g^-1 = v' for every letter is, after clearing the inverse, the linear
// system (R(v) - L(v')) g = 0; pairs (g, h) stack two 4-column blocks. The
// SVD null space of the stacked system contains every exact witness (any
// equation letter v g = v' h forces |g| = |h|, so null directions normalize
// to group elements), candidates are verified against the multiplicative
// action, and fingerprints give a sound fast "no".

#include <Eigen/Core>
#include <Eigen/SVD>

#include <optional>
#include <vector>

#include "goldman/defaults.hpp"
#include "goldman/fingerprint.hpp"
#include "goldman/repvar.hpp"

namespace goldman {

enum class OrbitVerdict { Equal, NotEqual, Inconclusive };

inline const char* verdict_name(OrbitVerdict v) {
  switch (v) {
    case OrbitVerdict::Equal: return "equal";
    case OrbitVerdict::NotEqual: return "not_equal";
    case OrbitVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

template <typename S>
struct OrbitResult {
  OrbitVerdict verdict = OrbitVerdict::Inconclusive;
  std::optional<Su2<S>> witness_g;  // set when verdict == Equal
  std::optional<Su2<S>> witness_h;  // pair decisions only
  double witness_defect = 0;        // action residual of the verified witness
  int kernel_dim = 0;
};

struct OrbitOptions {
  double fingerprint_tol = tol::fingerprint_filter;
  double rank_cutoff = tol::rank_cutoff;
  double witness_tol = tol::witness;
  int grid = 17;  // grid x grid candidate directions on a multi-dim kernel
};

namespace detail {

template <typename S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

// Null-space basis, smallest singular directions first.
template <typename S>
MatX<S> kernel_basis(const MatX<S>& m, double rank_cutoff, int* dim_out) {
  Eigen::JacobiSVD<MatX<S>> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  S largest = sv.size() ? sv[0] : S(0);
  int cols = int(m.cols());
  int dim = 0;
  if (largest <= S(0)) {
    dim = cols;
  } else {
    for (int i = 0; i < sv.size(); ++i)
      if (sv[i] <= S(rank_cutoff) * largest) ++dim;
    dim += cols - int(sv.size());  // implicit zeros when rows < cols
  }
  *dim_out = dim;
  MatX<S> basis(cols, dim);
  for (int j = 0; j < dim; ++j)
    basis.col(j) = svd.matrixV().col(cols - 1 - j);
  return basis;
}

// Candidate kernel directions: each basis vector, then (for dim >= 2) a
// grid over the span of the first directions. The grid only matters when the
// rank cutoff admitted a borderline direction; exact kernels verify on the
// first basis vector already.
template <typename S>
std::vector<Eigen::Matrix<S, Eigen::Dynamic, 1>> kernel_candidates(
    const MatX<S>& basis, int grid) {
  std::vector<Eigen::Matrix<S, Eigen::Dynamic, 1>> out;
  int dim = int(basis.cols());
  for (int j = 0; j < dim; ++j) out.push_back(basis.col(j));
  const S pi = S(3.14159265358979323846);
  if (dim == 2) {
    int total = grid * grid;
    for (int i = 1; i < total; ++i) {
      S th = pi * S(i) / S(total);
      out.push_back(std::cos(th) * basis.col(0) + std::sin(th) * basis.col(1));
    }
  } else if (dim >= 3) {
    for (int i = 0; i < grid; ++i) {
      S th = pi * S(i) / S(grid);
      for (int j = 0; j < grid; ++j) {
        S ph = pi * S(j) / S(grid);
        out.push_back(std::cos(th) * basis.col(0) +
                      std::sin(th) * std::cos(ph) * basis.col(1) +
                      std::sin(th) * std::sin(ph) * basis.col(2));
      }
    }
  }
  return out;
}

// Flip sign so the first coordinate of g is nonnegative (g and -g act the
// same; pairs flip jointly).
template <typename S>
void canonicalize_sign(Vec4<S>& g) {
  for (int i = 0; i < 4; ++i) {
    if (g[i] > S(0)) return;
    if (g[i] < S(0)) {
      g = -g;
      return;
    }
  }
}

}  // namespace detail

// Same orbit under simultaneous conjugation on the base variety.
template <typename S>
OrbitResult<S> same_orbit(const RepPoint<S>& p, const RepPoint<S>& p2,
                          const SurfaceSpec& spec,
                          const OrbitOptions& opt = OrbitOptions{}) {
  check_arity(p, spec);
  check_arity(p2, spec);
  OrbitResult<S> res;
  if (fingerprint_distance(fingerprint(p, spec), fingerprint(p2, spec)) >
      opt.fingerprint_tol) {
    res.verdict = OrbitVerdict::NotEqual;
    return res;
  }

  const int m = 2 + int(p.a.size());
  detail::MatX<S> sys(4 * m, 4);
  auto put = [&sys](int row, const Su2<S>& v, const Su2<S>& vp) {
    sys.template block<4, 4>(4 * row, 0) =
        right_mul_matrix(v) - left_mul_matrix(vp);
  };
  put(0, p.c, p2.c);
  put(1, p.b, p2.b);
  for (size_t j = 0; j < p.a.size(); ++j)
    put(2 + int(j), p.a[j], p2.a[j]);

  res.kernel_dim = 0;
  detail::MatX<S> basis = detail::kernel_basis(sys, opt.rank_cutoff, &res.kernel_dim);
  if (res.kernel_dim == 0) {
    res.verdict = OrbitVerdict::NotEqual;
    return res;
  }
  for (auto& cand : detail::kernel_candidates(basis, opt.grid)) {
    Vec4<S> gc = cand;
    if (gc.norm() < S(1e-9)) continue;
    gc /= gc.norm();
    detail::canonicalize_sign(gc);
    Su2<S> g = Su2<S>::from_raw(gc);
    S defect = max_distance(conjugate_tuple(g, p), p2);
    if (defect < S(opt.witness_tol)) {
      res.verdict = OrbitVerdict::Equal;
      res.witness_g = g;
      res.witness_defect = double(defect);
      return res;
    }
  }
  res.verdict = res.kernel_dim == 1 ? OrbitVerdict::NotEqual
                                    : OrbitVerdict::Inconclusive;
  return res;
}

// Same orbit under the two-sided action on the cover variety.
template <typename S>
OrbitResult<S> same_orbit_pair(const DoubleRepPoint<S>& q,
                               const DoubleRepPoint<S>& q2,
                               const SurfaceSpec& spec,
                               const OrbitOptions& opt = OrbitOptions{}) {
  check_arity(q, spec);
  check_arity(q2, spec);
  OrbitResult<S> res;
  if (fingerprint_distance(fingerprint(q, spec), fingerprint(q2, spec)) >
      opt.fingerprint_tol) {
    res.verdict = OrbitVerdict::NotEqual;
    return res;
  }

  std::vector<Sym> syms{Sym::C, Sym::B};
  std::vector<int> idxs{0, 0};
  for (size_t j = 0; j < q.a.size(); ++j) {
    syms.push_back(Sym::A);
    idxs.push_back(int(j));
  }
  syms.push_back(Sym::Cbar);
  idxs.push_back(0);
  syms.push_back(Sym::Bbar);
  idxs.push_back(0);
  for (size_t j = 0; j < q.abar.size(); ++j) {
    syms.push_back(Sym::Abar);
    idxs.push_back(int(j));
  }

  auto vals = letter_values(q);
  auto vals2 = letter_values(q2);
  const int m = int(syms.size());
  detail::MatX<S> sys = detail::MatX<S>::Zero(4 * m, 8);
  for (int r = 0; r < m; ++r) {
    Arrow ar = arrow_of(spec.kase, syms[r]);
    Su2<S> v = vals(syms[r], idxs[r]);
    Su2<S> vp = vals2(syms[r], idxs[r]);
    int lcol = (ar.src == Vertex::P) ? 0 : 4;
    int rcol = (ar.tgt == Vertex::P) ? 0 : 4;
    // left * v = v' * right
    sys.template block<4, 4>(4 * r, lcol) += right_mul_matrix(v);
    sys.template block<4, 4>(4 * r, rcol) -= left_mul_matrix(vp);
  }

  res.kernel_dim = 0;
  detail::MatX<S> basis = detail::kernel_basis(sys, opt.rank_cutoff, &res.kernel_dim);
  if (res.kernel_dim == 0) {
    res.verdict = OrbitVerdict::NotEqual;
    return res;
  }
  for (auto& cand : detail::kernel_candidates(basis, opt.grid)) {
    Vec4<S> gc = cand.template head<4>();
    Vec4<S> hc = cand.template tail<4>();
    if (gc.norm() < S(1e-9) || hc.norm() < S(1e-9)) continue;
    gc /= gc.norm();
    hc /= hc.norm();
    bool flip = false;
    for (int i = 0; i < 4; ++i) {
      if (gc[i] != S(0)) {
        flip = gc[i] < S(0);
        break;
      }
    }
    if (flip) {
      gc = -gc;
      hc = -hc;
    }
    Su2<S> g = Su2<S>::from_raw(gc);
    Su2<S> h = Su2<S>::from_raw(hc);
    S defect = max_distance(act_pair(g, h, q, spec), q2);
    if (defect < S(opt.witness_tol)) {
      res.verdict = OrbitVerdict::Equal;
      res.witness_g = g;
      res.witness_h = h;
      res.witness_defect = double(defect);
      return res;
    }
  }
  res.verdict = res.kernel_dim == 1 ? OrbitVerdict::NotEqual
                                    : OrbitVerdict::Inconclusive;
  return res;
}

// A cover point is generic when its two-sided stabilizer is exactly the
// central pair {(1,1), (-1,-1)}: the self-intertwiner kernel is then the
// single line through (1, 1).
template <typename S>
bool is_generic(const DoubleRepPoint<S>& q, const SurfaceSpec& spec,
                double rank_cutoff = tol::rank_cutoff) {
  OrbitOptions opt;
  opt.rank_cutoff = rank_cutoff;
  OrbitResult<S> r = same_orbit_pair(q, q, spec, opt);
  return r.kernel_dim == 1;
}

}  // namespace goldman
