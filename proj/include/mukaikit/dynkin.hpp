#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace mukai {

// ---------------------------------------------------------------------------
// positive and simple roots
// ---------------------------------------------------------------------------

namespace detail {

/// Deterministic positivity: by functional value, then lexicographically. The lex
/// tiebreak acts as an exact infinitesimal perturbation, so no root is ever "zero".
inline bool root_positive(const VecQ& functional, const VecZ& x) {
  Rat fx(0);
  for (std::size_t i = 0; i < x.size(); ++i) fx += functional[i] * Rat(x[i]);
  if (fx != 0) return fx > 0;
  for (const auto& c : x)
    if (c != 0) return c > 0;
  return false;
}

}  // namespace detail

inline std::vector<VecZ> positive_roots(const RootSet& rs, const VecQ& functional) {
  std::vector<VecZ> out;
  for (const auto& x : rs.roots)
    if (detail::root_positive(functional, x)) out.push_back(x);
  return out;
}

/// Simple roots: positive roots that are not the sum of two positive roots.
inline std::vector<VecZ> simple_system(const RootSet& rs, const VecQ& functional) {
  std::vector<VecZ> pos = positive_roots(rs, functional);
  std::set<VecZ> pos_set(pos.begin(), pos.end());
  std::vector<VecZ> simples;
  for (const auto& p : pos) {
    bool decomposable = false;
    for (const auto& q : pos) {
      VecZ diff(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) diff[i] = p[i] - q[i];
      if (pos_set.count(diff)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simples.push_back(p);
  }
  std::sort(simples.begin(), simples.end());
  return simples;
}

/// Pairing matrix of a vector family under a gram form.
inline MatQ simples_gram(const MatQ& gram, const std::vector<VecZ>& vectors) {
  MatQ g(vectors.size(), VecQ(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < vectors.size(); ++j)
      g[i][j] = form_value(gram, vec_from_z(vectors[i]), vec_from_z(vectors[j]));
  return g;
}

// ---------------------------------------------------------------------------
// finite ADE classification
// ---------------------------------------------------------------------------

namespace detail {

struct Diagram {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> adj;
};

/// Adjacency of a simply-laced diagram from a pairing gram: diagonal -2, off-diagonal
/// 0 or 1. Off-diagonal 2 is legal only in the affine A1 case, handled by the caller.
inline Diagram diagram_from_gram(const MatQ& g, bool allow_double_edge, ErrKind bad) {
  Diagram d;
  d.n = g.size();
  d.adj.resize(d.n);
  for (std::size_t i = 0; i < d.n; ++i) {
    require(g[i].size() == d.n, ErrKind::dimension_mismatch, "gram not square");
    require(g[i][i] == -2, bad, "diagonal entry is not -2");
    for (std::size_t j = i + 1; j < d.n; ++j) {
      require(g[i][j] == g[j][i], bad, "gram not symmetric");
      Rat v = g[i][j];
      require(is_integer(v) && v >= 0, bad, "off-diagonal pairing must be a nonnegative integer");
      if (v == 0) continue;
      require(v == 1 || (allow_double_edge && v == 2 && d.n == 2), bad,
              "off-diagonal pairing " + rat_str(v) + " is outside the simply-laced range");
      d.adj[i].push_back(j);
      d.adj[j].push_back(i);
    }
  }
  return d;
}

inline std::vector<std::vector<std::size_t>> connected_components(const Diagram& d) {
  std::vector<std::vector<std::size_t>> comps;
  std::vector<bool> seen(d.n, false);
  for (std::size_t start = 0; start < d.n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp, stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (std::size_t w : d.adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

/// Label of one connected simply-laced tree by its arm-length profile.
inline std::string classify_tree(const Diagram& d, const std::vector<std::size_t>& nodes) {
  std::size_t n = nodes.size();
  std::size_t edges = 0;
  std::vector<std::size_t> branch;
  for (std::size_t v : nodes) {
    edges += d.adj[v].size();
    if (d.adj[v].size() > 3) fail(ErrKind::not_ade, "node of degree > 3");
    if (d.adj[v].size() == 3) branch.push_back(v);
  }
  edges /= 2;
  require(edges + 1 == n, ErrKind::not_ade, "diagram contains a cycle");
  if (branch.empty()) return "A" + std::to_string(n);
  require(branch.size() == 1, ErrKind::not_ade, "more than one branch node");
  std::size_t center = branch.front();
  std::vector<std::size_t> arms;
  for (std::size_t first : d.adj[center]) {
    std::size_t len = 0, prev = center, cur = first;
    while (true) {
      ++len;
      std::size_t next = d.n;
      for (std::size_t w : d.adj[cur])
        if (w != prev) next = w;
      if (next == d.n) break;
      prev = cur;
      cur = next;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
    return "E" + std::to_string(n);
  fail(ErrKind::not_ade, "arm profile matches no ADE diagram");
}

}  // namespace detail

struct FiniteClassification {
  std::vector<std::vector<std::size_t>> components;  // node index sets, each sorted
  std::vector<std::string> labels;                   // parallel to components
};

/// Classify the diagram of a simple-root gram (pairing matrix, diagonal -2) into
/// finite ADE components. Raises not_definite when the form is not negative definite
/// (the affine diagrams land there) and not_ade on any non-ADE shape.
inline FiniteClassification classify_finite(const MatQ& gram) {
  detail::Diagram d = detail::diagram_from_gram(gram, false, ErrKind::not_ade);
  FiniteClassification out;
  if (d.n == 0) return out;
  require(is_negative_definite(gram), ErrKind::not_definite,
          "simple-root gram is not negative definite");
  for (auto& comp : detail::connected_components(d)) {
    out.labels.push_back(detail::classify_tree(d, comp));
    out.components.push_back(std::move(comp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// affine ADE classification
// ---------------------------------------------------------------------------

struct AffineInfo {
  std::string label;        // "~A2", "~D4", "~E8", ...
  VecZ marks;               // primitive positive kernel vector of the gram
  std::size_t affine_node;  // first node with mark 1
};

/// Classify a connected affine ADE gram (pairing matrix, diagonal -2, semidefinite of
/// corank 1). Marks are the unique primitive positive integer kernel vector.
inline AffineInfo classify_affine(const MatQ& gram) {
  detail::Diagram d = detail::diagram_from_gram(gram, true, ErrKind::hypothesis_violation);
  require(d.n >= 2, ErrKind::hypothesis_violation, "affine diagram needs at least 2 nodes");
  require(detail::connected_components(d).size() == 1, ErrKind::hypothesis_violation,
          "affine diagram must be connected");
  MatZ rows(d.n, VecZ(d.n));
  for (std::size_t i = 0; i < d.n; ++i)
    for (std::size_t j = 0; j < d.n; ++j) rows[i][j] = rat_num(gram[i][j]);
  MatZ ker = kernel_basis_int(rows, d.n);
  require(ker.size() == 1, ErrKind::kernel_not_one_dimensional,
          "affine gram kernel has dimension " + std::to_string(ker.size()));
  VecZ marks = ker.front();
  bool all_pos = true, all_neg = true;
  for (const auto& m : marks) {
    if (m <= 0) all_pos = false;
    if (m >= 0) all_neg = false;
  }
  require(all_pos || all_neg, ErrKind::hypothesis_violation,
          "kernel vector of an affine diagram must be one-signed");
  if (all_neg)
    for (auto& m : marks) m = -m;
  AffineInfo out;
  out.marks = marks;
  std::size_t del = d.n;
  for (std::size_t i = 0; i < d.n && del == d.n; ++i)
    if (marks[i] == 1) del = i;
  require(del < d.n, ErrKind::hypothesis_violation, "no node of mark 1");
  out.affine_node = del;
  MatQ sub;
  for (std::size_t i = 0; i < d.n; ++i) {
    if (i == del) continue;
    VecQ row;
    for (std::size_t j = 0; j < d.n; ++j)
      if (j != del) row.push_back(gram[i][j]);
    sub.push_back(std::move(row));
  }
  FiniteClassification fc = classify_finite(sub);
  require(fc.labels.size() == 1, ErrKind::hypothesis_violation,
          "deleting the affine node must leave one connected finite diagram");
  out.label = "~" + fc.labels.front();
  return out;
}

// ---------------------------------------------------------------------------
// frozen templates (node orderings documented in README)
// ---------------------------------------------------------------------------

namespace detail {

inline MatQ gram_from_edges(std::size_t n,
                            const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                            const Rat& edge_value = Rat(1)) {
  MatQ g(n, VecQ(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = -2;
  for (auto [a, b] : edges) g[a][b] = g[b][a] = edge_value;
  return g;
}

}  // namespace detail

/// Pairing gram (negated Cartan matrix) of a finite ADE diagram.
/// A_n: path 0-1-...-(n-1). D_n: path 0-...-(n-2) plus leaf n-1 on node n-3.
/// E_n: path 0-...-(n-2) plus leaf n-1 on node 2.
inline MatQ ade_template_gram(const std::string& label) {
  require(label.size() >= 2, ErrKind::parse, "bad ADE label");
  char fam = label[0];
  std::size_t n = static_cast<std::size_t>(std::stoul(label.substr(1)));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (fam == 'A') {
    require(n >= 1, ErrKind::parse, "A_n needs n >= 1");
    for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  } else if (fam == 'D') {
    require(n >= 4, ErrKind::parse, "D_n needs n >= 4");
    for (std::size_t i = 0; i + 2 < n; ++i) edges.push_back({i, i + 1});
    edges.push_back({n - 3, n - 1});
  } else if (fam == 'E') {
    require(n >= 6 && n <= 8, ErrKind::parse, "E_n needs n in {6,7,8}");
    for (std::size_t i = 0; i + 2 < n; ++i) edges.push_back({i, i + 1});
    edges.push_back({2, n - 1});
  } else {
    fail(ErrKind::parse, "bad ADE family letter");
  }
  return detail::gram_from_edges(n, edges);
}

/// Pairing gram of an affine ADE diagram; the affine node is the last index n.
/// ~A1 is the doubled edge; ~A_n (n >= 2) the cycle; ~D_n adds a leaf on node 1;
/// ~E6/~E7/~E8 extend the short/long arm per the classical diagrams.
inline MatQ affine_template_gram(const std::string& label) {
  require(label.size() >= 3 && label[0] == '~', ErrKind::parse, "bad affine label");
  std::string base = label.substr(1);
  char fam = base[0];
  std::size_t n = static_cast<std::size_t>(std::stoul(base.substr(1)));
  if (fam == 'A' && n == 1)
    return detail::gram_from_edges(2, {{0, 1}}, Rat(2));
  MatQ g = ade_template_gram(base);
  std::size_t m = n + 1;
  for (auto& row : g) row.resize(m, Rat(0));
  g.push_back(VecQ(m, Rat(0)));
  g[n][n] = -2;
  auto link = [&](std::size_t a) { g[n][a] = g[a][n] = 1; };
  if (fam == 'A') {
    link(0);
    link(n - 1);
  } else if (fam == 'D') {
    link(1);
  } else if (n == 6) {
    link(5);
  } else if (n == 7) {
    link(0);
  } else {
    link(6);
  }
  return g;
}

// ---------------------------------------------------------------------------
// disjointness of isotropic decompositions
// ---------------------------------------------------------------------------

enum class Disjointness { equal, orthogonal, violation };

inline const char* disjointness_name(Disjointness d) {
  switch (d) {
    case Disjointness::equal: return "equal";
    case Disjointness::orthogonal: return "orthogonal";
    default: return "violation";
  }
}

namespace detail {

inline void check_decomposition_hypotheses(const SurfaceData& s, const Decomposition& v,
                                           const char* tag) {
  require(!v.empty(), ErrKind::hypothesis_violation, std::string(tag) + " is empty");
  for (const auto& [a, u] : v) {
    require(a >= 1, ErrKind::hypothesis_violation,
            std::string(tag) + " has a non-positive multiplicity");
    require(coh_integral(u), ErrKind::hypothesis_violation,
            std::string(tag) + " contains a non-integral class");
    require(mukai_pairing(s, u, u) == -2, ErrKind::hypothesis_violation,
            std::string(tag) + " contains a class of square != -2");
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      require(!coh_eq(v[i].second, v[j].second), ErrKind::hypothesis_violation,
              std::string(tag) + " lists a class twice");
      require(mukai_pairing(s, v[i].second, v[j].second) >= 0, ErrKind::hypothesis_violation,
              std::string(tag) + " has a negative cross pairing");
    }
}

inline CohClass decomposition_sum(const SurfaceData& s, const Decomposition& v) {
  CohClass acc = coh_zero(s);
  for (const auto& [a, u] : v) acc = coh_add(acc, coh_scale(Rat(a), u));
  return acc;
}

inline std::vector<std::pair<VecQ, Int>> decomposition_key(const SurfaceData& s,
                                                           const Decomposition& v) {
  std::vector<std::pair<VecQ, Int>> key;
  for (const auto& [a, u] : v) key.emplace_back(mukai_coords(s, u), a);
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace detail

/// Alternative of the two-decomposition lemma that holds for V1, V2 (decompositions of
/// the same isotropic class): equal as multisets, supported on mutually orthogonal
/// classes, or `violation` when the shared hypotheses fail across the pair.
inline Disjointness disjointness_check(const SurfaceData& s, const Decomposition& v1,
                                       const Decomposition& v2) {
  detail::check_decomposition_hypotheses(s, v1, "V1");
  detail::check_decomposition_hypotheses(s, v2, "V2");
  CohClass s1 = detail::decomposition_sum(s, v1);
  CohClass s2 = detail::decomposition_sum(s, v2);
  require(coh_eq(s1, s2), ErrKind::hypothesis_violation,
          "V1 and V2 decompose different classes");
  require(mukai_pairing(s, s1, s1) == 0, ErrKind::hypothesis_violation,
          "decomposed class is not isotropic");
  if (detail::decomposition_key(s, v1) == detail::decomposition_key(s, v2))
    return Disjointness::equal;
  bool orthogonal = true, cross_ok = true;
  for (const auto& [a, u] : v1)
    for (const auto& [b, w] : v2) {
      Rat p = mukai_pairing(s, u, w);
      if (p != 0) orthogonal = false;
      if (p < 0) cross_ok = false;
    }
  if (!cross_ok) return Disjointness::violation;
  return orthogonal ? Disjointness::orthogonal : Disjointness::violation;
}

// ---------------------------------------------------------------------------
// singularity report
// ---------------------------------------------------------------------------

struct SingularComponent {
  std::string label;            // finite ADE type of the predicted rational double point
  MatZ simple_roots;            // finite simple roots, quotient coordinates
  std::string affine_label;     // extended type of the full exceptional configuration
  MatZ affine_simple_roots;     // the realizing affine configuration, quotient coords
  VecZ marks;                   // affine marks, parallel to affine_simple_roots
  std::size_t affine_node = 0;  // mark-1 node flagged as the v_{i0} slot
  std::vector<CohClass> lifts;  // rank-window lifts, parallel to affine_simple_roots
  Decomposition decomposition;  // (mark, lift) pairs summing to v0
};

struct DynkinReport {
  PerpData perp;
  std::vector<SingularComponent> components;
};

namespace detail {

/// True when x lies in the rational span of the given vectors (assumed independent).
inline bool in_span(const std::vector<VecZ>& spanning, const VecZ& x) {
  std::size_t m = x.size();
  MatQ cols(m, VecQ(spanning.size()));
  for (std::size_t j = 0; j < spanning.size(); ++j)
    for (std::size_t i = 0; i < m; ++i) cols[i][j] = Rat(spanning[j][i]);
  try {
    solve_full_rank(cols, vec_from_z(x));
    return true;
  } catch (const MukaiError&) {
    return false;
  }
}

}  // namespace detail

/// Lattice-level prediction of the rational double points of the moduli space attached
/// to (v0, H): a finite ADE component of the quotient root system is reported when v0
/// decomposes into rank-window lifts of roots from that component forming the matching
/// affine diagram, weighted exactly by its marks. The search is over all decompositions,
/// so the outcome does not depend on the coordinates of the quotient lattice.
inline DynkinReport singularity_report(const SurfaceData& s, const CohClass& v0,
                                       const VecQ& H) {
  DynkinReport report;
  report.perp = build_perp_data(s, v0, H);
  const PerpData& pd = report.perp;
  Int r0 = numerator(pd.v0.r);
  if (pd.M.gram.empty() || r0 <= 1) return report;
  RootSet rs = enumerate_roots(pd.M.gram);
  if (rs.roots.empty()) return report;
  VecQ functional(pd.M.gram.size(), Rat(0));
  std::vector<VecZ> simples = simple_system(rs, functional);
  FiniteClassification fc = classify_finite(simples_gram(rs.gram, simples));
  for (std::size_t c = 0; c < fc.components.size(); ++c) {
    SingularComponent comp;
    comp.label = fc.labels[c];
    for (std::size_t idx : fc.components[c]) comp.simple_roots.push_back(simples[idx]);
    // window lifts of the roots lying in this component's span
    std::vector<CohClass> cands;
    std::map<VecQ, VecZ> image_of;
    for (const auto& q : rs.roots) {
      if (!detail::in_span(comp.simple_roots, q)) continue;
      auto lift = window_lift(s, pd.M, q, 1, r0 - 1);
      if (!lift) continue;
      image_of[mukai_coords(s, *lift)] = q;
      cands.push_back(std::move(*lift));
    }
    std::sort(cands.begin(), cands.end(), [&](const CohClass& a, const CohClass& b) {
      return detail::lex_less_coh(s, a, b);
    });
    std::vector<Decomposition> found;
    Decomposition acc;
    Int used = 0;
    detail::decomposition_dfs(s, cands, 0, pd.v0, r0, Int(6), acc, found, used,
                              max_enum_budget());
    for (const Decomposition& d : found) {
      MatZ nodes;
      VecZ mults;
      for (const auto& [a, u] : d) {
        nodes.push_back(image_of.at(mukai_coords(s, u)));
        mults.push_back(a);
      }
      AffineInfo ai;
      try {
        ai = classify_affine(simples_gram(rs.gram, nodes));
      } catch (const MukaiError&) {
        continue;
      }
      if (ai.label != "~" + comp.label || ai.marks != mults) continue;
      comp.affine_label = ai.label;
      comp.affine_simple_roots = nodes;
      comp.marks = ai.marks;
      comp.affine_node = ai.affine_node;
      for (const auto& [a, u] : d) comp.lifts.push_back(u);
      comp.decomposition = d;
      report.components.push_back(comp);
      break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// tilting obstruction check
// ---------------------------------------------------------------------------

/// True iff r divides (xi, D) for no (-2)-class D in the orthogonal complement of H
/// inside NS. The complement must be negative definite.
inline bool tilting_check(const SurfaceData& s, const Int& r, const VecQ& xi, const VecQ& H,
                          VecQ* witness = nullptr) {
  require(r > 0, ErrKind::validation, "r must be positive");
  require(xi.size() == s.rank && H.size() == s.rank, ErrKind::dimension_mismatch,
          "NS class size != surface rank");
  require(ns_pair(s, H, H) > 0, ErrKind::validation, "H must have positive self-intersection");
  MatZ basis = ns_perp_basis(s, H);
  if (basis.empty()) return true;
  MatQ gperp(basis.size(), VecQ(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      gperp[i][j] = ns_pair(s, vec_from_z(basis[i]), vec_from_z(basis[j]));
  require(is_negative_definite(gperp), ErrKind::not_negative_definite,
          "orthogonal complement of H is not negative definite");
  RootSet rs = enumerate_roots(gperp);
  for (const auto& c : rs.roots) {
    VecQ d(s.rank, Rat(0));
    for (std::size_t i = 0; i < basis.size(); ++i)
      d = vec_add(d, vec_scale(Rat(c[i]), vec_from_z(basis[i])));
    Rat val = ns_pair(s, xi, d);
    Int v = to_int(val, ErrKind::validation, "pairing with integral root");
    if (v % r == 0) {
      if (witness) *witness = d;
      return false;
    }
  }
  return true;
}

}  // namespace mukai
