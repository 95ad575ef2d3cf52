#pragma once

#include <string>

#include "surface.hpp"

namespace mukai {

/// Element of H^ev(X, Q) written as (r, c1, s) with r the H^0 part, c1 in NS coords and
/// s the H^4 coefficient against the point class.
struct CohClass {
  Rat r = 0;
  VecQ c1;
  Rat s = 0;
};

/// Chern-character-level invariants (rank, c1, Euler characteristic).
struct GammaClass {
  Rat r = 0;
  VecQ c1;
  Rat chi = 0;
};

inline CohClass make_coh(Rat r, VecQ c1, Rat s) { return CohClass{std::move(r), std::move(c1), std::move(s)}; }

inline void check_dim(const SurfaceData& s, const CohClass& x) {
  require(x.c1.size() == s.rank, ErrKind::dimension_mismatch, "c1 size != surface rank");
}

inline bool coh_integral(const CohClass& x) {
  return is_integer(x.r) && is_integer(x.s) && vec_is_integral(x.c1);
}

inline bool coh_eq(const CohClass& a, const CohClass& b) {
  return a.r == b.r && a.s == b.s && a.c1 == b.c1;
}

inline CohClass coh_add(const CohClass& a, const CohClass& b) {
  return {a.r + b.r, vec_add(a.c1, b.c1), a.s + b.s};
}

inline CohClass coh_sub(const CohClass& a, const CohClass& b) {
  return {a.r - b.r, vec_sub(a.c1, b.c1), a.s - b.s};
}

inline CohClass coh_scale(const Rat& c, const CohClass& a) {
  return {c * a.r, vec_scale(c, a.c1), c * a.s};
}

inline CohClass coh_zero(const SurfaceData& s) { return {0, VecQ(s.rank, Rat(0)), 0}; }

/// The point class (0, 0, 1).
inline CohClass point_class(const SurfaceData& s) { return {0, VecQ(s.rank, Rat(0)), 1}; }

/// Mukai pairing <x, y> = (x1, y1) - x0 y2 - x2 y0.
inline Rat mukai_pairing(const SurfaceData& s, const CohClass& x, const CohClass& y) {
  check_dim(s, x);
  check_dim(s, y);
  return ns_pair(s, x.c1, y.c1) - x.r * y.s - x.s * y.r;
}

/// Cup product on H^ev of a surface.
inline CohClass cup(const SurfaceData& s, const CohClass& x, const CohClass& y) {
  check_dim(s, x);
  check_dim(s, y);
  return {x.r * y.r, vec_add(vec_scale(x.r, y.c1), vec_scale(y.r, x.c1)),
          x.r * y.s + x.s * y.r + ns_pair(s, x.c1, y.c1)};
}

/// Dualization x -> x^vee = (x0, -x1, x2).
inline CohClass dual(const CohClass& x) { return {x.r, vec_scale(Rat(-1), x.c1), x.s}; }

/// Degree-4 integral over the surface.
inline Rat integral(const SurfaceData& s, const CohClass& x) {
  check_dim(s, x);
  return x.s;
}

/// Todd class td_X = (1, -K/2, chi(O)).
inline CohClass todd(const SurfaceData& s) {
  return {1, vec_scale(Rat(-1, 2), s.canonical), s.chiO};
}

/// Euler form chi(x, y) = integral of x^vee . y . td_X for Chern characters x, y.
/// Asymmetry is governed exactly by euler_form(x,y) - euler_form(y,x) =
/// (y.r * x.c1 - x.r * y.c1, K).
inline Rat euler_form(const SurfaceData& s, const CohClass& x, const CohClass& y) {
  return integral(s, cup(s, cup(s, dual(x), y), todd(s)));
}

/// Mukai vector (r, c1, chi - r); defined when the surface is K3-type or r = 0.
inline CohClass mukai_vector(const SurfaceData& s, const GammaClass& g) {
  require(g.c1.size() == s.rank, ErrKind::dimension_mismatch, "c1 size != surface rank");
  require(k3_type(s) || g.r == 0, ErrKind::not_defined,
          "Mukai vector requires a K3-type surface or rank 0");
  return {g.r, g.c1, g.chi - g.r};
}

/// Chern character from (rank, c1, chi): ch2 = chi - r chi(O) + (c1, K)/2.
inline CohClass ch_from_gamma(const SurfaceData& s, const GammaClass& g) {
  require(g.c1.size() == s.rank, ErrKind::dimension_mismatch, "c1 size != surface rank");
  return {g.r, g.c1, g.chi - g.r * s.chiO + ns_pair(s, g.c1, s.canonical) / 2};
}

/// Inverse of ch_from_gamma.
inline GammaClass gamma_from_ch(const SurfaceData& s, const CohClass& x) {
  check_dim(s, x);
  return {x.r, x.c1, x.s + x.r * s.chiO - ns_pair(s, x.c1, s.canonical) / 2};
}

/// G-twisted Chern character: chGE / sqrt(chG), where chG = ch(G^vee ox G) must have
/// square rank and vanishing c1 and chGE = ch(G^vee ox E).
inline CohClass twisted_chern(const SurfaceData& s, const CohClass& chG, const CohClass& chGE) {
  check_dim(s, chG);
  check_dim(s, chGE);
  require(vec_is_zero(chG.c1), ErrKind::validation, "ch(G^vee ox G) must have c1 = 0");
  require(chG.r > 0, ErrKind::not_square, "ch(G^vee ox G) must have positive rank");
  Rat a = sqrt_rat(chG.r);  // throws not_square unless r is a perfect rational square
  // inverse of sqrt(chG) = (a, 0, t/(2a)) is (1/a, 0, -t/(2a^3))
  CohClass inv_sqrt{Rat(1) / a, VecQ(s.rank, Rat(0)), -chG.s / (2 * a * a * a)};
  return cup(s, chGE, inv_sqrt);
}

/// Twisted degree deg_G(v) = (vG.r * c1(v) - v.r * c1(vG), H).
inline Rat deg_twisted(const SurfaceData& s, const CohClass& vG, const CohClass& v,
                       const VecQ& H) {
  check_dim(s, vG);
  check_dim(s, v);
  return ns_pair(s, vec_sub(vec_scale(vG.r, v.c1), vec_scale(v.r, vG.c1)), H);
}

/// Twisted slope deg_G(v) / (vG.r * v.r); undefined when either rank vanishes.
inline Rat mu_twisted(const SurfaceData& s, const CohClass& vG, const CohClass& v,
                      const VecQ& H) {
  require(vG.r != 0 && v.r != 0, ErrKind::zero_rank, "mu undefined for rank-0 class");
  return deg_twisted(s, vG, v, H) / (vG.r * v.r);
}

/// Expected dimension <v, v> + 2 of the moduli space attached to v.
inline Rat expected_dim(const SurfaceData& s, const CohClass& v) {
  return mukai_pairing(s, v, v) + 2;
}

/// delta_{v0}(D) = (0, D, (D, xi0)/r0), the embedding of NS classes attached to a
/// positive-rank class v0 = (r0, xi0, a0). Satisfies <delta(D), v0> = 0 and
/// <delta(D), delta(D')> = (D, D').
inline CohClass delta_class(const SurfaceData& s, const CohClass& v0, const VecQ& d) {
  check_dim(s, v0);
  require(v0.r != 0, ErrKind::zero_rank, "delta requires rk v0 != 0");
  require(d.size() == s.rank, ErrKind::dimension_mismatch, "NS class size != surface rank");
  return {0, d, ns_pair(s, d, v0.c1) / v0.r};
}

/// Coordinates of x in the rank-(rank+2) integral Mukai lattice basis
/// (1,0,0), (0, e_i, 0), (0,0,1).
inline VecQ mukai_coords(const SurfaceData& s, const CohClass& x) {
  check_dim(s, x);
  VecQ v;
  v.reserve(s.rank + 2);
  v.push_back(x.r);
  for (const auto& c : x.c1) v.push_back(c);
  v.push_back(x.s);
  return v;
}

inline CohClass coh_from_coords(const SurfaceData& s, const VecQ& v) {
  require(v.size() == s.rank + 2, ErrKind::dimension_mismatch, "Mukai coordinate size");
  return {v.front(), VecQ(v.begin() + 1, v.end() - 1), v.back()};
}

/// Gram matrix of the Mukai pairing in the integral basis above.
inline MatQ mukai_gram(const SurfaceData& s) {
  std::size_t n = s.rank + 2;
  MatQ j(n, VecQ(n, Rat(0)));
  j[0][n - 1] = j[n - 1][0] = -1;
  for (std::size_t a = 0; a < s.rank; ++a)
    for (std::size_t b = 0; b < s.rank; ++b) j[1 + a][1 + b] = s.gram[a][b];
  return j;
}

/// Content-1 test over the integral Mukai lattice.
inline bool coh_primitive(const CohClass& x) {
  if (!coh_integral(x)) return false;
  Int g = gcd_int(rat_num(x.r), rat_num(x.s));
  for (const auto& c : x.c1) g = gcd_int(g, rat_num(c));
  return abs(g) == 1;
}

}  // namespace mukai
