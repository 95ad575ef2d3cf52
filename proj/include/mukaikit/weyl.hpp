#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dynkin.hpp"

namespace mukai {

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

struct WeylGen {
  enum class Kind { refl, trans };
  Kind kind;
  CohClass u;  // refl: class of square -2
  VecQ d;      // trans: NS class
};

inline WeylGen make_refl(const SurfaceData& s, CohClass u) {
  check_dim(s, u);
  require(mukai_pairing(s, u, u) == -2, ErrKind::validation,
          "reflection class must have square -2");
  return WeylGen{WeylGen::Kind::refl, std::move(u), {}};
}

inline WeylGen make_trans(const SurfaceData& s, VecQ d) {
  require(d.size() == s.rank, ErrKind::dimension_mismatch, "NS class size != surface rank");
  return WeylGen{WeylGen::Kind::trans, CohClass{}, std::move(d)};
}

/// Reflection in a (-2)-class: v + <v,u> u.
inline CohClass reflect(const SurfaceData& s, const CohClass& v, const CohClass& u) {
  check_dim(s, v);
  require(mukai_pairing(s, u, u) == -2, ErrKind::validation,
          "reflection class must have square -2");
  return coh_add(v, coh_scale(mukai_pairing(s, v, u), u));
}

/// Multiplication by the exponential class e^D = (1, D, (D,D)/2).
inline CohClass translate(const SurfaceData& s, const CohClass& v, const VecQ& d) {
  check_dim(s, v);
  require(d.size() == s.rank, ErrKind::dimension_mismatch, "NS class size != surface rank");
  return cup(s, v, CohClass{1, d, ns_pair(s, d, d) / 2});
}

inline MatQ gen_matrix(const SurfaceData& s, const WeylGen& g) {
  std::size_t n = s.rank + 2;
  if (g.kind == WeylGen::Kind::refl) {
    VecQ u = mukai_coords(s, g.u);
    VecQ ju = mat_vec(mukai_gram(s), u);
    MatQ m = mat_identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] += u[i] * ju[j];
    return m;
  }
  MatQ m = mat_identity(n);
  for (std::size_t i = 0; i < s.rank; ++i) m[1 + i][0] = g.d[i];
  m[n - 1][0] = ns_pair(s, g.d, g.d) / 2;
  for (std::size_t j = 0; j < s.rank; ++j) {
    Rat p(0);
    for (std::size_t k = 0; k < s.rank; ++k) p += s.gram[j][k] * g.d[k];
    m[n - 1][1 + j] = p;
  }
  return m;
}

// ---------------------------------------------------------------------------
// words
// ---------------------------------------------------------------------------

struct WeylWord {
  std::vector<WeylGen> gens;
  MatQ matrix;  // composite of the generator matrices, applied left to right
};

inline WeylWord make_word(const SurfaceData& s, std::vector<WeylGen> gens) {
  WeylWord w;
  w.matrix = mat_identity(s.rank + 2);
  for (const auto& g : gens) w.matrix = mat_mul(gen_matrix(s, g), w.matrix);
  w.gens = std::move(gens);
  return w;
}

inline CohClass apply_word(const SurfaceData& s, const WeylWord& w, const CohClass& v) {
  check_dim(s, v);
  return coh_from_coords(s, mat_vec(w.matrix, mukai_coords(s, v)));
}

// ---------------------------------------------------------------------------
// alcove data: blocks of simple (-2)-curve classes
// ---------------------------------------------------------------------------

struct AlcoveBlock {
  std::vector<VecQ> simples;  // NS classes C_j, a connected finite ADE simple system
  VecZ marks;                 // highest-root coefficients over the simples
  VecQ z;                     // Z = sum marks_j C_j, the highest root; (Z,Z) = -2
  std::string label;
};

inline AlcoveBlock make_block(const SurfaceData& s, std::vector<VecQ> simples) {
  require(!simples.empty(), ErrKind::validation, "block needs at least one simple class");
  for (const auto& c : simples) {
    require(c.size() == s.rank, ErrKind::dimension_mismatch, "NS class size != surface rank");
    require(vec_is_integral(c), ErrKind::validation, "block classes must be integral");
  }
  MatQ g(simples.size(), VecQ(simples.size()));
  for (std::size_t i = 0; i < simples.size(); ++i)
    for (std::size_t j = 0; j < simples.size(); ++j) g[i][j] = ns_pair(s, simples[i], simples[j]);
  FiniteClassification fc = classify_finite(g);
  require(fc.labels.size() == 1, ErrKind::validation, "block must be a connected ADE diagram");
  AlcoveBlock b;
  b.label = fc.labels.front();
  RootSet rs = enumerate_roots(g);
  VecZ theta;
  Int best = -1;
  for (const auto& x : rs.roots) {
    Int sum = 0;
    bool nonneg = true;
    for (const auto& c : x) {
      if (c < 0) nonneg = false;
      sum += c;
    }
    if (nonneg && sum > best) {
      best = sum;
      theta = x;
    }
  }
  b.marks = theta;
  b.z = VecQ(s.rank, Rat(0));
  for (std::size_t j = 0; j < simples.size(); ++j)
    b.z = vec_add(b.z, vec_scale(Rat(theta[j]), simples[j]));
  require(ns_pair(s, b.z, b.z) == -2, ErrKind::validation, "highest root must have square -2");
  b.simples = std::move(simples);
  return b;
}

struct AlcoveMembership {
  bool inside = false;
  bool on_wall = false;
};

inline AlcoveMembership in_fund_chamber(const SurfaceData& s, const VecQ& alpha,
                                        const std::vector<VecQ>& simples) {
  AlcoveMembership m;
  m.inside = true;
  for (const auto& c : simples) {
    Rat p = ns_pair(s, alpha, c);
    if (p == 0) m.on_wall = true;
    if (p <= 0) m.inside = false;
  }
  return m;
}

inline AlcoveMembership in_fund_alcove(const SurfaceData& s, const VecQ& alpha,
                                       const std::vector<AlcoveBlock>& blocks) {
  AlcoveMembership m;
  m.inside = true;
  for (const auto& b : blocks) {
    for (const auto& c : b.simples) {
      Rat p = ns_pair(s, alpha, c);
      if (p == 0) m.on_wall = true;
      if (p <= 0) m.inside = false;
    }
    Rat pz = ns_pair(s, alpha, b.z);
    if (pz == 1) m.on_wall = true;
    if (pz >= 1) m.inside = false;
  }
  return m;
}

// ---------------------------------------------------------------------------
// alcove reduction
// ---------------------------------------------------------------------------

struct AlcoveReduction {
  WeylWord word;
  VecQ alpha0;
};

namespace detail {

inline void validate_blocks(const SurfaceData& s, const std::vector<AlcoveBlock>& blocks) {
  for (std::size_t p = 0; p < blocks.size(); ++p)
    for (std::size_t q = p + 1; q < blocks.size(); ++q)
      for (const auto& a : blocks[p].simples)
        for (const auto& b : blocks[q].simples)
          require(ns_pair(s, a, b) == 0, ErrKind::validation,
                  "blocks must be mutually orthogonal");
}

/// Generous upper bound on the number of affine walls separating alpha from the
/// fundamental alcove: each reduction step removes at least one separating wall,
/// and a wall family (.,beta)=k can separate only for |k| up to ~|(alpha,beta)|.
inline Int reduction_bound(const SurfaceData& s, const VecQ& alpha,
                           const std::vector<AlcoveBlock>& blocks) {
  Int bound = 16;
  for (const auto& b : blocks) {
    MatQ g(b.simples.size(), VecQ(b.simples.size()));
    for (std::size_t i = 0; i < b.simples.size(); ++i)
      for (std::size_t j = 0; j < b.simples.size(); ++j)
        g[i][j] = ns_pair(s, b.simples[i], b.simples[j]);
    for (const auto& x : enumerate_roots(g).roots) {
      VecQ beta(s.rank, Rat(0));
      for (std::size_t j = 0; j < b.simples.size(); ++j)
        beta = vec_add(beta, vec_scale(Rat(x[j]), b.simples[j]));
      Rat t = ns_pair(s, alpha, beta);
      bound += 2 + ceil_rat(abs(t));
    }
  }
  return bound;
}

}  // namespace detail

/// Reduce alpha into the open fundamental alcove by reflections in violated simple
/// walls and affine-wall flips (a reflection-translation pair). The returned word maps
/// the exponential datum (1, alpha, (alpha^2)/2) to that of alpha0. Deterministic:
/// the first violated inequality in block order is fixed at each step.
inline AlcoveReduction alcove_reduce(const SurfaceData& s, const VecQ& alpha,
                                     const std::vector<AlcoveBlock>& blocks) {
  require(alpha.size() == s.rank, ErrKind::dimension_mismatch, "NS class size != surface rank");
  detail::validate_blocks(s, blocks);
  Int bound = detail::reduction_bound(s, alpha, blocks);
  VecQ cur = alpha;
  std::vector<WeylGen> gens;
  for (Int step = 0;; ++step) {
    require(step <= bound, ErrKind::reduction_limit,
            "alcove reduction exceeded its wall-separation bound");
    bool acted = false;
    for (const auto& b : blocks) {
      for (const auto& c : b.simples) {
        Rat p = ns_pair(s, cur, c);
        if (p < 0) {
          cur = vec_add(cur, vec_scale(p, c));
          gens.push_back(make_refl(s, CohClass{0, c, 0}));
          acted = true;
          break;
        }
      }
      if (acted) break;
      Rat pz = ns_pair(s, cur, b.z);
      if (pz > 1) {
        cur = vec_add(cur, vec_scale(pz - 1, b.z));
        gens.push_back(make_refl(s, CohClass{0, b.z, 0}));
        gens.push_back(make_trans(s, vec_scale(Rat(-1), b.z)));
        acted = true;
        break;
      }
    }
    if (acted) continue;
    AlcoveMembership m = in_fund_alcove(s, cur, blocks);
    require(!m.on_wall, ErrKind::on_wall, "alpha lies on an affine wall");
    break;
  }
  AlcoveReduction out;
  out.word = make_word(s, std::move(gens));
  out.alpha0 = cur;
  CohClass datum{1, alpha, ns_pair(s, alpha, alpha) / 2};
  CohClass image = apply_word(s, out.word, datum);
  require(image.r == 1 && image.c1 == out.alpha0 &&
              image.s == ns_pair(s, out.alpha0, out.alpha0) / 2,
          ErrKind::validation, "reduction word does not reproduce the reduced class");
  return out;
}

// ---------------------------------------------------------------------------
// twist-pair identity
// ---------------------------------------------------------------------------

/// Exact matrix check of Refl((0,C,b+2)) after Refl(-(0,C,b+1)) equalling Trans(-C)
/// for a (-2)-class C. A false return signals an implementation bug.
inline bool twist_pair_identity(const SurfaceData& s, const VecQ& c, const Int& b) {
  require(ns_pair(s, c, c) == -2, ErrKind::validation, "C must have square -2");
  CohClass v1{0, vec_scale(Rat(-1), c), Rat(-(b + 1))};
  CohClass v2{0, c, Rat(b + 2)};
  WeylWord lhs = make_word(s, {make_refl(s, v1), make_refl(s, v2)});
  MatQ rhs = gen_matrix(s, make_trans(s, vec_scale(Rat(-1), c)));
  return lhs.matrix == rhs;
}

}  // namespace mukai
