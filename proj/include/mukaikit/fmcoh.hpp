#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weyl.hpp"

namespace mukai {

// ---------------------------------------------------------------------------
// isometry data
// ---------------------------------------------------------------------------

/// One side of a cohomological correspondence: a surface with a polarization H and a
/// positive-rank isotropic class (r0, xi0, a0), plus the saturated H-complement in NS.
struct FMSide {
  SurfaceData surface;
  CohClass v0;
  VecQ H;
  MatZ perp_basis;  // rows: integer basis of the orthogonal complement of H in NS
  MatQ perp_gram;
};

inline FMSide make_fm_side(SurfaceData surface, CohClass v0, VecQ H, bool require_primitive) {
  validate_surface(surface);
  check_dim(surface, v0);
  require(coh_integral(v0), ErrKind::validation, "side class must be integral");
  require(v0.r > 0, ErrKind::validation, "side class must have positive rank");
  require(mukai_pairing(surface, v0, v0) == 0, ErrKind::validation,
          "side class must be isotropic");
  if (require_primitive)
    require(coh_primitive(v0), ErrKind::not_primitive, "v0 must be primitive");
  require(H.size() == surface.rank, ErrKind::dimension_mismatch,
          "NS class size != surface rank");
  require(ns_pair(surface, H, H) > 0, ErrKind::validation,
          "H must have positive self-intersection");
  FMSide side;
  side.perp_basis = ns_perp_basis(surface, H);
  side.perp_gram.assign(side.perp_basis.size(), VecQ(side.perp_basis.size()));
  for (std::size_t i = 0; i < side.perp_basis.size(); ++i)
    for (std::size_t j = 0; j < side.perp_basis.size(); ++j)
      side.perp_gram[i][j] =
          ns_pair(surface, vec_from_z(side.perp_basis[i]), vec_from_z(side.perp_basis[j]));
  side.surface = std::move(surface);
  side.v0 = std::move(v0);
  side.H = std::move(H);
  return side;
}

/// Lattice-level Fourier-Mukai isometry: v0 |-> point class, point class |-> w0,
/// delta(H) |-> -delta'(H'), delta(D) |-> -delta'(theta D) on D orthogonal to H.
/// theta acts in the perp_basis coordinates of the two sides. An optional
/// post-translation by a target NS class models renormalizing the underlying family;
/// it multiplies the base matrix on the left.
struct FMIsometry {
  FMSide source;
  FMSide target;
  MatQ theta;
  VecQ post_translate;  // empty = none
  MatQ base_matrix;     // the map defined by the four image rules
  MatQ matrix;          // post_translate applied after the base map
};

/// Expand an NS class orthogonal to H in the side's perp basis.
inline VecQ perp_coords(const FMSide& side, const VecQ& d) {
  std::size_t k = side.perp_basis.size();
  MatQ cols(side.surface.rank, VecQ(k));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < side.surface.rank; ++i) cols[i][j] = Rat(side.perp_basis[j][i]);
  return solve_full_rank(cols, d);
}

inline VecQ perp_vector(const FMSide& side, const VecQ& coords) {
  VecQ d(side.surface.rank, Rat(0));
  for (std::size_t j = 0; j < coords.size(); ++j)
    d = vec_add(d, vec_scale(coords[j], vec_from_z(side.perp_basis[j])));
  return d;
}

inline FMIsometry make_fm_iso(FMSide source, FMSide target, MatQ theta,
                              VecQ post_translate = {}) {
  require(source.surface.rank == target.surface.rank, ErrKind::dimension_mismatch,
          "source and target NS ranks differ");
  require(source.v0.r == target.v0.r, ErrKind::validation,
          "source and target classes must share their rank");
  std::size_t k = source.perp_basis.size();
  require(theta.size() == k, ErrKind::dimension_mismatch, "theta row count");
  for (const auto& row : theta)
    require(row.size() == target.perp_basis.size(), ErrKind::dimension_mismatch,
            "theta column count");
  std::size_t n = source.surface.rank + 2;
  MatQ a(n, VecQ(n)), c(n, VecQ(n));
  auto set_col = [n](MatQ& m, std::size_t j, const VecQ& v) {
    for (std::size_t i = 0; i < n; ++i) m[i][j] = v[i];
  };
  set_col(a, 0, mukai_coords(source.surface, source.v0));
  set_col(a, 1, mukai_coords(source.surface, point_class(source.surface)));
  set_col(a, 2, mukai_coords(source.surface, delta_class(source.surface, source.v0, source.H)));
  set_col(c, 0, mukai_coords(target.surface, point_class(target.surface)));
  set_col(c, 1, mukai_coords(target.surface, target.v0));
  set_col(c, 2,
          vec_scale(Rat(-1), mukai_coords(target.surface,
                                          delta_class(target.surface, target.v0, target.H))));
  for (std::size_t j = 0; j < k; ++j) {
    VecQ b = vec_from_z(source.perp_basis[j]);
    set_col(a, 3 + j, mukai_coords(source.surface, delta_class(source.surface, source.v0, b)));
    VecQ tcol(k);
    for (std::size_t i = 0; i < k; ++i) tcol[i] = theta[i][j];
    VecQ image = perp_vector(target, tcol);
    set_col(c, 3 + j,
            vec_scale(Rat(-1), mukai_coords(target.surface,
                                            delta_class(target.surface, target.v0, image))));
  }
  FMIsometry iso;
  iso.base_matrix = mat_mul(c, mat_inverse(a));
  iso.matrix = iso.base_matrix;
  if (!post_translate.empty()) {
    require(post_translate.size() == target.surface.rank, ErrKind::dimension_mismatch,
            "post-translation class size");
    iso.matrix =
        mat_mul(gen_matrix(target.surface, make_trans(target.surface, post_translate)),
                iso.base_matrix);
  }
  iso.source = std::move(source);
  iso.target = std::move(target);
  iso.theta = std::move(theta);
  iso.post_translate = std::move(post_translate);
  return iso;
}

// ---------------------------------------------------------------------------
// decomposition and application
// ---------------------------------------------------------------------------

/// Unique coordinates of v = l v0 + a rho + delta(d H + D) with D orthogonal to H.
struct FMDecomposition {
  Rat l;
  Rat a;
  Rat d;
  VecQ D;
};

inline FMDecomposition fm_decompose(const FMIsometry& iso, const CohClass& v) {
  const FMSide& side = iso.source;
  check_dim(side.surface, v);
  Rat r0 = side.v0.r;
  Rat h2 = ns_pair(side.surface, side.H, side.H);
  FMDecomposition out;
  out.l = v.r / r0;
  out.a = -mukai_pairing(side.surface, v, side.v0) / r0;
  out.d = deg_twisted(side.surface, side.v0, v, side.H) / (r0 * h2);
  out.D = vec_sub(v.c1, vec_add(vec_scale(out.l, side.v0.c1), vec_scale(out.d, side.H)));
  require(ns_pair(side.surface, out.D, side.H) == 0, ErrKind::validation,
          "decomposition residue is not orthogonal to H");
  CohClass rebuilt = coh_add(
      coh_add(coh_scale(out.l, side.v0), coh_scale(out.a, point_class(side.surface))),
      delta_class(side.surface, side.v0,
                  vec_add(vec_scale(out.d, side.H), out.D)));
  require(coh_eq(rebuilt, v), ErrKind::validation, "decomposition does not reassemble");
  return out;
}

inline CohClass fm_apply(const FMIsometry& iso, const CohClass& v) {
  check_dim(iso.source.surface, v);
  return coh_from_coords(iso.target.surface,
                         mat_vec(iso.matrix, mukai_coords(iso.source.surface, v)));
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

struct FMReport {
  bool pass = true;
  std::string first_violation;  // empty when pass
  bool integral = false;        // base matrix maps integral classes to integral classes
};

namespace detail {

inline Int deg_subgroup_gcd(const SurfaceData& s, const CohClass& v0, const VecQ& H) {
  Int g = 0;
  std::size_t n = s.rank + 2;
  for (std::size_t k = 0; k < n; ++k) {
    VecQ e(n, Rat(0));
    e[k] = 1;
    CohClass x = coh_from_coords(s, e);
    g = gcd_int(g, to_int(deg_twisted(s, v0, x, H), ErrKind::validation, "integral degree"));
  }
  return abs(g);
}

}  // namespace detail

/// Report-style verification of every isometry invariant; stops at the first failure.
inline FMReport fm_validate(const FMIsometry& iso) {
  FMReport rep;
  auto check = [&](bool ok, const char* what) {
    if (rep.pass && !ok) {
      rep.pass = false;
      rep.first_violation = what;
    }
    return ok;
  };
  const FMSide& src = iso.source;
  const FMSide& tgt = iso.target;
  rep.integral = true;
  for (const auto& row : iso.base_matrix)
    for (const auto& e : row)
      if (!is_integer(e)) rep.integral = false;
  check(coh_primitive(src.v0), "v0 is primitive");
  check(mukai_pairing(src.surface, src.v0, src.v0) == 0, "v0 is isotropic");
  check(mukai_pairing(tgt.surface, tgt.v0, tgt.v0) == 0, "w0 is isotropic");
  check(src.v0.r == tgt.v0.r && src.v0.r > 0, "rk v0 = rk w0 > 0");
  check(ns_pair(src.surface, src.H, src.H) == ns_pair(tgt.surface, tgt.H, tgt.H),
        "(H^2) is preserved");
  if (!rep.pass) return rep;
  // a rank-one Picard lattice has a zero-dimensional H-complement; the empty
  // theta is its unique (trivially isometric) endomorphism
  check(src.perp_gram.empty()
            ? iso.theta.empty() && tgt.perp_gram.empty()
            : mat_mul(mat_mul(mat_transpose(iso.theta), tgt.perp_gram), iso.theta) ==
                  src.perp_gram,
        "theta is an isometry of the H-complements");
  check(mat_mul(mat_mul(mat_transpose(iso.matrix), mukai_gram(tgt.surface)), iso.matrix) ==
            mukai_gram(src.surface),
        "full matrix preserves the Mukai pairing");
  {
    MatQ base_only = iso.base_matrix;
    auto apply_base = [&](const CohClass& v) {
      return coh_from_coords(tgt.surface, mat_vec(base_only, mukai_coords(src.surface, v)));
    };
    check(coh_eq(apply_base(src.v0), point_class(tgt.surface)), "v0 maps to the point class");
    check(coh_eq(apply_base(point_class(src.surface)), tgt.v0), "point class maps to w0");
    check(coh_eq(apply_base(delta_class(src.surface, src.v0, src.H)),
                 coh_scale(Rat(-1), delta_class(tgt.surface, tgt.v0, tgt.H))),
          "delta(H) maps to -delta'(H')");
    if (!rep.pass) return rep;
    std::size_t n = src.surface.rank + 2;
    for (std::size_t k = 0; k < n; ++k) {
      VecQ e(n, Rat(0));
      e[k] = 1;
      CohClass x = coh_from_coords(src.surface, e);
      Rat d1 = deg_twisted(src.surface, src.v0, x, src.H);
      Rat d2 = deg_twisted(tgt.surface, tgt.v0, apply_base(x), tgt.H);
      if (!check(d1 == -d2, "degree anti-preservation on the lattice basis")) return rep;
    }
  }
  check(detail::deg_subgroup_gcd(src.surface, src.v0, src.H) ==
            detail::deg_subgroup_gcd(tgt.surface, tgt.v0, tgt.H),
        "degree subgroups coincide");
  return rep;
}

/// Inverse isometry: sides swapped, theta inverted. Defined only without a
/// post-translation, where the base rules invert exactly.
inline FMIsometry fm_inverse(const FMIsometry& iso) {
  require(iso.post_translate.empty(), ErrKind::unsupported,
          "inverse of a post-translated isometry is not defined");
  FMIsometry inv = make_fm_iso(iso.target, iso.source,
                               iso.theta.empty() ? MatQ{} : mat_inverse(iso.theta));
  require(mat_mul(inv.matrix, iso.matrix) == mat_identity(iso.source.surface.rank + 2),
          ErrKind::validation, "inverse construction does not invert the matrix");
  return inv;
}

// ---------------------------------------------------------------------------
// conjugation of reflection words
// ---------------------------------------------------------------------------

/// Transport a word of reflections along the isometry: Refl(u) |-> Refl(apply(u)).
/// Verified against the exact intertwining identity on matrices.
inline WeylWord conjugate(const WeylWord& w, const FMIsometry& iso) {
  std::vector<WeylGen> gens;
  for (const auto& g : w.gens) {
    require(g.kind == WeylGen::Kind::refl, ErrKind::unsupported,
            "only reflection words conjugate along an isometry");
    gens.push_back(make_refl(iso.target.surface, fm_apply(iso, g.u)));
  }
  WeylWord out = make_word(iso.target.surface, std::move(gens));
  require(mat_mul(out.matrix, iso.matrix) == mat_mul(iso.matrix, w.matrix),
          ErrKind::validation, "conjugated word fails the intertwining identity");
  return out;
}

}  // namespace mukai
