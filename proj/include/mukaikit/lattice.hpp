#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cohlat.hpp"

namespace mukai {

/// Enumeration budget: candidate count bound for short-vector and decomposition searches.
/// Overridable via the MUKAI_KIT_MAX_ENUM environment variable.
inline Int max_enum_budget() {
  const char* e = std::getenv("MUKAI_KIT_MAX_ENUM");
  if (e == nullptr || *e == '\0') return Int(10000000);
  Rat v = parse_rat(e);
  require(is_integer(v) && v > 0, ErrKind::parse, "MUKAI_KIT_MAX_ENUM must be a positive integer");
  return numerator(v);
}

/// Saturated sublattice of the integral Mukai lattice, carried with its basis (as
/// cohomology classes), the coordinate rows of that basis, and the induced pairing.
struct SubLattice {
  std::vector<CohClass> basis;
  MatZ basis_coords;  // rows: basis vectors in Mukai coordinates
  MatQ gram;          // induced Mukai pairing
};

namespace detail {

inline MatQ gram_of(const SurfaceData& s, const std::vector<CohClass>& basis) {
  MatQ g(basis.size(), VecQ(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      g[i][j] = mukai_pairing(s, basis[i], basis[j]);
  return g;
}

inline Int budget_tick(Int& used, const Int& budget) {
  if (++used > budget)
    fail(ErrKind::enum_limit, "enumeration exceeded MUKAI_KIT_MAX_ENUM = " + budget.str());
  return used;
}

/// Clear denominators and content: the primitive integer row proportional to f.
inline VecZ integer_row(const VecQ& f) {
  Int lcm = 1;
  for (const auto& q : f) lcm = lcm / gcd_int(lcm, rat_den(q)) * rat_den(q);
  VecZ row(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) row[k] = rat_num(f[k]) * (lcm / rat_den(f[k]));
  Int c = content(row);
  if (c > 1)
    for (auto& x : row) x /= c;
  return row;
}

}  // namespace detail

/// Saturated integer basis (rows) of the orthogonal complement of H inside NS.
inline MatZ ns_perp_basis(const SurfaceData& s, const VecQ& H) {
  require(H.size() == s.rank, ErrKind::dimension_mismatch, "NS class size != surface rank");
  return kernel_basis_int({detail::integer_row(mat_vec(s.gram, H))}, s.rank);
}

/// Saturated orthogonal complement of the given (linearly independent, possibly
/// rational) classes inside the integral Mukai lattice.
inline SubLattice perp_sublattice(const SurfaceData& s, const std::vector<CohClass>& vs) {
  std::size_t n = s.rank + 2;
  MatQ coords;
  for (const auto& v : vs) coords.push_back(mukai_coords(s, v));
  require(vs.empty() || mat_rank(coords) == vs.size(), ErrKind::validation,
          "perp input classes must be linearly independent");
  MatQ j = mukai_gram(s);
  MatZ rows;
  for (const auto& v : vs)
    rows.push_back(detail::integer_row(mat_vec(j, mukai_coords(s, v))));
  SubLattice out;
  out.basis_coords = kernel_basis_int(rows, n);
  for (const auto& row : out.basis_coords) {
    VecQ v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = Rat(row[k]);
    out.basis.push_back(coh_from_coords(s, v));
  }
  out.gram = detail::gram_of(s, out.basis);
  return out;
}

/// Coordinates of an integral class in the sublattice basis; fails when the class is
/// not an integral combination of the basis.
inline VecZ sublattice_coords(const SurfaceData& s, const SubLattice& sub, const CohClass& x) {
  MatQ a;  // columns = basis vectors
  std::size_t n = s.rank + 2;
  a.assign(n, VecQ(sub.basis.size(), Rat(0)));
  for (std::size_t bidx = 0; bidx < sub.basis.size(); ++bidx) {
    VecQ col = mukai_coords(s, sub.basis[bidx]);
    for (std::size_t i = 0; i < n; ++i) a[i][bidx] = col[i];
  }
  VecQ sol = solve_full_rank(a, mukai_coords(s, x));
  VecZ out(sol.size());
  for (std::size_t i = 0; i < sol.size(); ++i)
    out[i] = to_int(sol[i], ErrKind::validation, "sublattice coordinate");
  return out;
}

/// Quotient of a sublattice by a primitive isotropic vector lying in its radical.
struct QuotientLattice {
  SubLattice parent;
  VecZ rad_coords;                   // the quotiented vector, in parent coordinates
  CohClass rad;                      // and as a class
  MatZ lift_coords;                  // rows: chosen lifts of the quotient basis
  std::vector<CohClass> lift_basis;  // the same lifts as classes
  MatQ gram;                         // induced (well-defined) pairing
  bool negative_definite = false;
  bool even = false;
};

inline QuotientLattice quotient_mod(const SurfaceData& s, const SubLattice& sub,
                                    const VecZ& v_coords) {
  std::size_t k = sub.basis.size();
  require(v_coords.size() == k, ErrKind::dimension_mismatch, "quotient vector size");
  require(abs(content(v_coords)) == 1, ErrKind::not_primitive,
          "quotient vector must be primitive");
  VecQ vq = vec_from_z(v_coords);
  VecQ pair_with_basis = mat_vec(sub.gram, vq);
  for (const auto& p : pair_with_basis)
    require(p == 0, ErrKind::form_not_descending,
            "form does not descend: vector is not in the radical of the sublattice");
  QuotientLattice out;
  out.parent = sub;
  out.rad_coords = v_coords;
  {
    VecQ acc(s.rank + 2, Rat(0));
    for (std::size_t i = 0; i < k; ++i)
      acc = vec_add(acc, vec_scale(Rat(v_coords[i]), mukai_coords(s, sub.basis[i])));
    out.rad = coh_from_coords(s, acc);
  }
  MatZ u = complete_primitive(v_coords);  // columns: v, then complement
  for (std::size_t c = 1; c < k; ++c) {
    VecZ lift(k);
    for (std::size_t i = 0; i < k; ++i) lift[i] = u[i][c];
    out.lift_coords.push_back(std::move(lift));
  }
  for (const auto& lc : out.lift_coords) {
    VecQ acc(s.rank + 2, Rat(0));
    for (std::size_t i = 0; i < k; ++i)
      acc = vec_add(acc, vec_scale(Rat(lc[i]), mukai_coords(s, sub.basis[i])));
    out.lift_basis.push_back(coh_from_coords(s, acc));
  }
  out.gram = detail::gram_of(s, out.lift_basis);
  out.negative_definite = is_negative_definite(out.gram);
  out.even = true;
  for (std::size_t i = 0; i < out.gram.size(); ++i)
    if (rat_num(out.gram[i][i]) % 2 != 0) out.even = false;
  return out;
}

inline QuotientLattice quotient_mod(const SurfaceData& s, const SubLattice& sub,
                                    const CohClass& v) {
  return quotient_mod(s, sub, sublattice_coords(s, sub, v));
}

// ---------------------------------------------------------------------------
// short-vector enumeration (exact Fincke-Pohst)
// ---------------------------------------------------------------------------

namespace detail {

/// Largest integer n with n <= r + sqrt(sq), sq >= 0; exact.
inline Int floor_plus_sqrt(const Rat& r, const Rat& sq) {
  auto leq = [&](const Int& n) {
    Rat d = Rat(n) - r;
    if (d <= 0) return true;
    return d * d <= sq;
  };
  Int n = floor_rat(r) + isqrt(floor_rat(sq));
  while (leq(n + 1)) ++n;
  while (!leq(n)) --n;
  return n;
}

struct LdlData {
  std::vector<Rat> d;  // positive pivots
  MatQ l;              // strictly-lower multipliers, l[j][i] for j > i
};

/// LDL^T data of a positive definite rational matrix; fails when not positive definite.
inline LdlData ldl_positive(MatQ q) {
  std::size_t n = q.size();
  LdlData out;
  out.d.resize(n);
  out.l = mat_identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(q[i][i] > 0, ErrKind::not_negative_definite,
            "form is not definite of the expected sign");
    out.d[i] = q[i][i];
    for (std::size_t j = i + 1; j < n; ++j) out.l[j][i] = q[j][i] / q[i][i];
    for (std::size_t a = i + 1; a < n; ++a)
      for (std::size_t b = i + 1; b < n; ++b) q[a][b] -= out.l[a][i] * out.l[b][i] * q[i][i];
  }
  return out;
}

}  // namespace detail

/// All integer vectors x (in basis coordinates) with x^T gram x = norm, for gram
/// negative definite and norm < 0. Output is sorted lexicographically and closed
/// under negation. Candidate visits are bounded by `budget` (enum_limit error).
inline std::vector<VecZ> enumerate_vectors_of_norm(const MatQ& gram, const Rat& norm,
                                                   const Int& budget) {
  std::size_t n = gram.size();
  require(norm < 0, ErrKind::validation, "norm must be negative");
  if (n == 0) return {};
  require(is_negative_definite(gram), ErrKind::not_negative_definite,
          "enumeration requires a negative definite form");
  MatQ q(n, VecQ(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = -gram[i][j];
  detail::LdlData ldl = detail::ldl_positive(q);
  Rat target = -norm;
  std::vector<VecZ> found;
  VecZ x(n, 0);
  Int used = 0;
  // descend from the last coordinate; remaining budget shrinks by d_i (x_i + offset)^2
  auto rec = [&](auto&& self, std::size_t level, const Rat& remaining) -> void {
    std::size_t i = level - 1;
    Rat off(0);  // sum_{j > i} l[j][i] x_j
    for (std::size_t j = i + 1; j < n; ++j) off += ldl.l[j][i] * Rat(x[j]);
    Rat bound = remaining / ldl.d[i];
    Int hi = detail::floor_plus_sqrt(-off, bound);
    Int lo = -detail::floor_plus_sqrt(off, bound);
    for (Int v = lo; v <= hi; ++v) {
      detail::budget_tick(used, budget);
      x[i] = v;
      Rat t = Rat(v) + off;
      Rat term = ldl.d[i] * t * t;
      if (term > remaining) continue;  // guards rounding-free exactness at the edges
      if (i == 0) {
        if (term == remaining) found.push_back(x);
      } else {
        self(self, level - 1, remaining - term);
      }
    }
    x[i] = 0;
  };
  rec(rec, n, target);
  std::sort(found.begin(), found.end());
  return found;
}

/// Root-set container: vectors of the requested norm in a sublattice, in basis coords.
struct RootSet {
  MatQ gram;
  Rat norm = -2;
  std::vector<VecZ> roots;
};

inline RootSet enumerate_roots(const MatQ& gram, const Rat& norm = Rat(-2)) {
  RootSet rs;
  rs.gram = gram;
  rs.norm = norm;
  rs.roots = enumerate_vectors_of_norm(gram, norm, max_enum_budget());
  return rs;
}

// ---------------------------------------------------------------------------
// the v0 / delta(H) pipeline and rank-window root lifts
// ---------------------------------------------------------------------------

/// The lattice package attached to (v0, H): L = {v0, delta(H)}^perp, its quotient
/// M = L / Z v0, and bookkeeping to lift quotient vectors back to cohomology.
struct PerpData {
  CohClass v0;
  VecQ H;
  SubLattice L;
  QuotientLattice M;
  VecZ v0_coords;  // v0 in the basis of L
};

inline void validate_v0_H(const SurfaceData& s, const CohClass& v0, const VecQ& H) {
  check_dim(s, v0);
  require(coh_integral(v0), ErrKind::validation, "v0 must be integral");
  require(coh_primitive(v0), ErrKind::not_primitive, "v0 must be primitive");
  require(v0.r > 0, ErrKind::validation, "v0 must have positive rank");
  require(mukai_pairing(s, v0, v0) == 0, ErrKind::validation, "v0 must be isotropic");
  require(H.size() == s.rank, ErrKind::dimension_mismatch, "H size != surface rank");
  require(ns_pair(s, H, H) > 0, ErrKind::validation, "H must have positive self-intersection");
}

inline PerpData build_perp_data(const SurfaceData& s, const CohClass& v0, const VecQ& H) {
  validate_v0_H(s, v0, H);
  PerpData out;
  out.v0 = v0;
  out.H = H;
  out.L = perp_sublattice(s, {v0, delta_class(s, v0, H)});
  out.v0_coords = sublattice_coords(s, out.L, v0);
  out.M = quotient_mod(s, out.L, out.v0_coords);
  require(out.M.negative_definite, ErrKind::not_negative_definite,
          "quotient lattice is not negative definite");
  return out;
}

/// All lifts of a quotient vector whose rank lies in [lo, hi], ordered by rank.
/// The lifts differ by multiples of the radical vector, so their ranks form an
/// arithmetic progression with step rk(radical).
inline std::vector<CohClass> window_lifts(const SurfaceData& s, const QuotientLattice& m,
                                          const VecZ& qvec, const Int& lo, const Int& hi) {
  require(qvec.size() == m.lift_basis.size(), ErrKind::dimension_mismatch,
          "quotient vector size");
  CohClass x = coh_zero(s);
  for (std::size_t i = 0; i < qvec.size(); ++i)
    x = coh_add(x, coh_scale(Rat(qvec[i]), m.lift_basis[i]));
  Int r0 = to_int(m.rad.r, ErrKind::validation, "radical rank");
  require(r0 > 0, ErrKind::validation, "radical vector must have positive rank");
  Int rx = to_int(x.r, ErrKind::validation, "lift rank");
  // smallest n with lo <= rx + n r0
  Int n = (lo - rx) / r0;
  while (rx + n * r0 < lo) ++n;
  while (rx + (n - 1) * r0 >= lo) --n;
  std::vector<CohClass> out;
  for (; rx + n * r0 <= hi; ++n) out.push_back(coh_add(x, coh_scale(Rat(n), m.rad)));
  return out;
}

/// The minimal-rank lift in the window, when one exists.
inline std::optional<CohClass> window_lift(const SurfaceData& s, const QuotientLattice& m,
                                           const VecZ& qvec, const Int& lo, const Int& hi) {
  auto lifts = window_lifts(s, m, qvec, lo, hi);
  if (lifts.empty()) return std::nullopt;
  return lifts.front();
}

/// All (-2)-classes of L with rank in [1, rk v0 - 1]: one lift per quotient root when
/// the window admits it. These are the exceptional-candidate classes.
inline std::vector<CohClass> window_roots(const SurfaceData& s, const PerpData& pd) {
  Int r0 = numerator(pd.v0.r);
  std::vector<CohClass> out;
  if (r0 <= 1) return out;
  RootSet rs = enumerate_roots(pd.M.gram);
  for (const auto& q : rs.roots) {
    auto lift = window_lift(s, pd.M, q, 1, r0 - 1);
    if (lift) out.push_back(*lift);
  }
  return out;
}

// ---------------------------------------------------------------------------
// decompositions of classes into (-2)-classes with rank constraints
// ---------------------------------------------------------------------------

/// A decomposition target = sum of mult * root over distinct roots.
using Decomposition = std::vector<std::pair<Int, CohClass>>;

namespace detail {

inline bool lex_less_coh(const SurfaceData& s, const CohClass& a, const CohClass& b) {
  return mukai_coords(s, a) < mukai_coords(s, b);
}

/// Depth-first multiset search: sum over candidates (each usable with multiplicity
/// 0..cap) equal to target. Candidate ranks are positive, so the rank budget bounds
/// the depth. Every node visit counts against the enumeration budget.
inline void decomposition_dfs(const SurfaceData& s, const std::vector<CohClass>& cands,
                              std::size_t idx, const CohClass& target, const Int& rank_left,
                              const Int& mult_cap, Decomposition& acc,
                              std::vector<Decomposition>& out, Int& used, const Int& budget) {
  budget_tick(used, budget);
  if (rank_left == 0) {
    bool zero = target.r == 0 && target.s == 0 && vec_is_zero(target.c1);
    if (zero && !acc.empty()) out.push_back(acc);
    return;
  }
  if (idx == cands.size()) return;
  Int rk = numerator(cands[idx].r);
  Int top = rank_left / rk;
  if (mult_cap > 0 && top > mult_cap) top = mult_cap;
  // multiplicity 0 first, then 1..top, keeping candidate order for determinism
  decomposition_dfs(s, cands, idx + 1, target, rank_left, mult_cap, acc, out, used, budget);
  CohClass rem = target;
  for (Int c = 1; c <= top; ++c) {
    rem = coh_sub(rem, cands[idx]);
    acc.emplace_back(c, cands[idx]);
    decomposition_dfs(s, cands, idx + 1, rem, rank_left - c * rk, mult_cap, acc, out, used,
                      budget);
    acc.pop_back();
  }
}

}  // namespace detail

/// True when u (a (-2)-class of L with positive rank) admits no decomposition
/// u = sum b_i u_i into (-2)-classes u_i of L with 0 < rk u_i < rk u and b_i >= 1.
inline bool numerically_irreducible(const SurfaceData& s, const PerpData& pd,
                                    const CohClass& u) {
  check_dim(s, u);
  require(mukai_pairing(s, u, u) == -2, ErrKind::validation, "u must have square -2");
  require(coh_integral(u) && u.r > 0, ErrKind::validation, "u must be integral of positive rank");
  Int rk_u = numerator(u.r);
  if (rk_u <= 1) return true;  // rank window (0, rk u) admits no smaller-rank roots
  RootSet rs = enumerate_roots(pd.M.gram);
  std::vector<CohClass> cands;
  for (const auto& q : rs.roots)
    for (auto& lift : window_lifts(s, pd.M, q, 1, rk_u - 1)) cands.push_back(std::move(lift));
  std::sort(cands.begin(), cands.end(), [&](const CohClass& a, const CohClass& b) {
    return detail::lex_less_coh(s, a, b);
  });
  std::vector<Decomposition> out;
  Decomposition acc;
  Int used = 0;
  detail::decomposition_dfs(s, cands, 0, u, rk_u, Int(0), acc, out, used, max_enum_budget());
  return out.empty();
}

/// All decompositions v0 = sum a_i u_i into distinct rank-window (-2)-classes of L with
/// positive integer multiplicities, up to permutation. Multiplicities are capped by the
/// rank budget and by 6 (the largest mark of any affine ADE diagram).
inline std::vector<Decomposition> decompose_isotropic(const SurfaceData& s, const PerpData& pd) {
  std::vector<CohClass> cands = window_roots(s, pd);
  std::sort(cands.begin(), cands.end(), [&](const CohClass& a, const CohClass& b) {
    return detail::lex_less_coh(s, a, b);
  });
  std::vector<Decomposition> out;
  Decomposition acc;
  Int used = 0;
  detail::decomposition_dfs(s, cands, 0, pd.v0, numerator(pd.v0.r), Int(6), acc, out, used,
                            max_enum_budget());
  return out;
}

}  // namespace mukai
