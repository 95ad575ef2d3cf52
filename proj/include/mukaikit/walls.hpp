#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "lattice.hpp"

namespace mukai {

/// A rational hyperplane of twist parameters: alpha lies on the wall iff
/// normal . alpha + offset = 0. The defining class is kept for reporting.
struct Wall {
  VecQ normal;
  Rat offset = 0;
  CohClass u;
};

struct WallFamily {
  std::vector<Wall> walls;
  std::vector<CohClass> degenerate;  // classes defining no honest hyperplane
};

namespace detail {

/// Scale so the normal is integral of content 1 with positive leading entry.
/// Returns false when the normal vanishes (no hyperplane).
inline bool canonicalize_wall(VecQ& normal, Rat& offset) {
  if (vec_is_zero(normal)) return false;
  Int lcm = 1;
  for (const auto& q : normal) lcm = lcm / gcd_int(lcm, rat_den(q)) * rat_den(q);
  Int cont = 0;
  for (const auto& q : normal) cont = gcd_int(cont, rat_num(q) * (lcm / rat_den(q)));
  Rat scale = Rat(lcm) / Rat(cont);
  for (const auto& q : normal)
    if (q != 0) {
      if (q < 0) scale = -scale;
      break;
    }
  for (auto& q : normal) q *= scale;
  offset *= scale;
  return true;
}

}  // namespace detail

/// Walls of the 0-dimensional setting: for each u, the locus of NS classes alpha with
/// <u,(0,alpha,0)> <v,vG> = <v,(0,alpha,0)> <u,vG>, cleared of denominators.
inline WallFamily walls_zero_dim(const SurfaceData& s, const CohClass& v, const CohClass& vG,
                                 const std::vector<CohClass>& roots) {
  check_dim(s, v);
  check_dim(s, vG);
  Rat dv = mukai_pairing(s, v, vG);
  require(dv != 0, ErrKind::degenerate, "<v, vG> vanishes; walls are undefined");
  WallFamily fam;
  for (const auto& u : roots) {
    check_dim(s, u);
    Rat du = mukai_pairing(s, u, vG);
    if (du == 0) {
      fam.degenerate.push_back(u);
      continue;
    }
    VecQ combo = vec_sub(vec_scale(dv, u.c1), vec_scale(du, v.c1));
    Wall w;
    w.normal = mat_vec(s.gram, combo);
    w.offset = 0;
    w.u = u;
    if (!detail::canonicalize_wall(w.normal, w.offset)) {
      fam.degenerate.push_back(u);
      continue;
    }
    fam.walls.push_back(std::move(w));
  }
  return fam;
}

/// Walls of the 2-dimensional setting: one wall per rank-window (-2)-class u of
/// L = {v0, delta(H)}^perp, cutting the locus <v0 + delta(alpha), u> = 0 for alpha
/// in the orthogonal complement of H. Normals are expressed on full NS coordinates.
inline WallFamily walls_two_dim(const SurfaceData& s, const CohClass& v0, const VecQ& H) {
  PerpData pd = build_perp_data(s, v0, H);
  WallFamily fam;
  for (const auto& u : window_roots(s, pd)) {
    VecQ combo = vec_sub(u.c1, vec_scale(u.r / v0.r, v0.c1));
    Wall w;
    w.normal = mat_vec(s.gram, combo);
    w.offset = 0;
    w.u = u;
    if (!detail::canonicalize_wall(w.normal, w.offset)) {
      fam.degenerate.push_back(u);
      continue;
    }
    fam.walls.push_back(std::move(w));
  }
  return fam;
}

inline bool on_wall(const Wall& w, const VecQ& alpha) {
  require(alpha.size() == w.normal.size(), ErrKind::dimension_mismatch,
          "alpha size != wall normal size");
  return vec_dot(w.normal, alpha) + w.offset == 0;
}

inline bool is_general(const VecQ& alpha, const std::vector<Wall>& walls) {
  for (const auto& w : walls)
    if (on_wall(w, alpha)) return false;
  return true;
}

/// Deterministic rational point in the coordinate box [lo, hi] avoiding every wall.
/// With a basis (rows), coordinates parameterize the subspace it spans and the result
/// is the combination; otherwise coordinates are the alpha coordinates themselves.
/// The box center is always tried first, so wall-free sampling is seed-independent.
inline VecQ sample_generic(const std::vector<Wall>& walls, const VecQ& lo, const VecQ& hi,
                           const Int& seed, const MatZ& basis = {}) {
  std::size_t m = lo.size();
  require(hi.size() == m && m > 0, ErrKind::dimension_mismatch, "box bounds sizes differ");
  for (std::size_t i = 0; i < m; ++i)
    require(lo[i] < hi[i], ErrKind::validation, "box must have positive width");
  if (!basis.empty())
    require(basis.size() == m, ErrKind::dimension_mismatch, "basis rows != box dimension");
  auto to_alpha = [&](const VecQ& coords) {
    if (basis.empty()) return coords;
    VecQ a(basis.front().size(), Rat(0));
    for (std::size_t i = 0; i < m; ++i) a = vec_add(a, vec_scale(coords[i], vec_from_z(basis[i])));
    return a;
  };
  // effective functional of each wall on box coordinates
  std::vector<std::pair<VecQ, Rat>> effective;
  for (const auto& w : walls) {
    VecQ n(m);
    if (basis.empty()) {
      n = w.normal;
    } else {
      for (std::size_t i = 0; i < m; ++i) n[i] = vec_dot(w.normal, vec_from_z(basis[i]));
    }
    effective.emplace_back(std::move(n), w.offset);
  }
  VecQ center(m);
  for (std::size_t i = 0; i < m; ++i) center[i] = (lo[i] + hi[i]) / 2;
  auto general_at = [&](const VecQ& coords) {
    for (const auto& [n, off] : effective)
      if (vec_dot(n, coords) + off == 0) return false;
    return true;
  };
  if (general_at(center)) return to_alpha(center);
  // dither along w = (1/p, 1/p^2, ...) with p large enough that no nonzero effective
  // normal annihilates w; each wall then excludes at most one step multiple
  Rat maxsum(0);
  for (const auto& [n, off] : effective) {
    Rat sum(0);
    for (const auto& q : n) sum += abs(q);
    if (sum > maxsum) maxsum = sum;
  }
  Int p = ceil_rat(maxsum) + 2;
  VecQ dir(m);
  Rat pw(1);
  for (std::size_t i = 0; i < m; ++i) {
    pw /= p;
    dir[i] = pw;
  }
  Rat min_half = (hi[0] - lo[0]) / 2;
  for (std::size_t i = 1; i < m; ++i) {
    Rat half = (hi[i] - lo[i]) / 2;
    if (half < min_half) min_half = half;
  }
  std::size_t tries = effective.size() + 1;
  Int shift = (seed % 16 + 16) % 16 + 1;
  Int denom = Int(tries) + 1;
  Rat step = min_half * Rat(p) / (Rat(denom) * Rat(shift));
  for (std::size_t j = 1; j <= tries; ++j) {
    VecQ coords = vec_add(center, vec_scale(Rat(Int(j)) * step, dir));
    if (general_at(coords)) return to_alpha(coords);
  }
  fail(ErrKind::box_exhausted, "no wall-free point found in the box");
}

/// Ordered wall crossings of the open segment from alpha1 to alpha2; simultaneous
/// crossings are grouped by their common parameter.
struct Crossing {
  Rat t;
  std::vector<Wall> walls;
};

struct ChamberPath {
  VecQ start;
  VecQ end;
  std::vector<Crossing> crossings;
};

inline ChamberPath crossing_path(const VecQ& alpha1, const VecQ& alpha2,
                                 const std::vector<Wall>& walls) {
  require(is_general(alpha1, walls), ErrKind::endpoint_on_wall, "start point lies on a wall");
  require(is_general(alpha2, walls), ErrKind::endpoint_on_wall, "end point lies on a wall");
  std::map<Rat, std::vector<Wall>> groups;
  for (const auto& w : walls) {
    Rat a = vec_dot(w.normal, alpha1) + w.offset;
    Rat b = vec_dot(w.normal, alpha2) + w.offset;
    if ((a > 0) == (b > 0)) continue;  // endpoints on one side, or parallel
    groups[a / (a - b)].push_back(w);
  }
  ChamberPath path;
  path.start = alpha1;
  path.end = alpha2;
  for (auto& [t, ws] : groups) path.crossings.push_back({t, std::move(ws)});
  return path;
}

}  // namespace mukai
