#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace mukai {

using VecQ = std::vector<Rat>;
using MatQ = std::vector<VecQ>;
using VecZ = std::vector<Int>;
using MatZ = std::vector<VecZ>;

inline MatQ mat_identity(std::size_t n) {
  MatQ m(n, VecQ(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline VecQ vec_add(const VecQ& a, const VecQ& b) {
  require(a.size() == b.size(), ErrKind::dimension_mismatch, "vector sizes differ");
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline VecQ vec_sub(const VecQ& a, const VecQ& b) {
  require(a.size() == b.size(), ErrKind::dimension_mismatch, "vector sizes differ");
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline VecQ vec_scale(const Rat& c, const VecQ& a) {
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Rat vec_dot(const VecQ& a, const VecQ& b) {
  require(a.size() == b.size(), ErrKind::dimension_mismatch, "vector sizes differ");
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool vec_is_zero(const VecQ& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

inline VecQ vec_from_z(const VecZ& a) {
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
  return r;
}

inline VecQ mat_vec(const MatQ& m, const VecQ& v) {
  VecQ r(m.size(), Rat(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    require(m[i].size() == v.size(), ErrKind::dimension_mismatch, "matrix/vector size");
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  }
  return r;
}

inline MatQ mat_mul(const MatQ& a, const MatQ& b) {
  require(!a.empty() && !b.empty() && a[0].size() == b.size(), ErrKind::dimension_mismatch,
          "matrix product size");
  MatQ r(a.size(), VecQ(b[0].size(), Rat(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

inline MatQ mat_transpose(const MatQ& a) {
  if (a.empty()) return {};
  MatQ r(a[0].size(), VecQ(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

/// Bilinear form value x^T G y.
inline Rat form_value(const MatQ& g, const VecQ& x, const VecQ& y) {
  return vec_dot(x, mat_vec(g, y));
}

/// Exact inverse by Gauss-Jordan; fails with ErrKind::degenerate on singular input.
inline MatQ mat_inverse(const MatQ& a) {
  std::size_t n = a.size();
  require(n > 0 && a[0].size() == n, ErrKind::dimension_mismatch, "inverse of non-square");
  MatQ m = a, inv = mat_identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    require(piv < n, ErrKind::degenerate, "singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Rat d = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

/// Solves A x = b exactly (A square invertible).
inline VecQ solve_linear(const MatQ& a, const VecQ& b) { return mat_vec(mat_inverse(a), b); }

/// Solves A x = b exactly for rectangular A (m x n) of full column rank; fails with
/// ErrKind::validation if the system is inconsistent or rank-deficient.
inline VecQ solve_full_rank(MatQ a, VecQ b) {
  std::size_t m = a.size();
  require(m == b.size(), ErrKind::dimension_mismatch, "solve sizes differ");
  std::size_t n = m == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivot_row(n, m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = r;
    while (piv < m && a[piv][c] == 0) ++piv;
    require(piv < m, ErrKind::validation, "matrix does not have full column rank");
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_row[c] = r;
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    require(b[i] == 0, ErrKind::validation, "inconsistent linear system");
  VecQ x(n, Rat(0));
  for (std::size_t c = 0; c < n; ++c) x[c] = b[pivot_row[c]] / a[pivot_row[c]][c];
  return x;
}

inline std::size_t mat_rank(MatQ m) {
  std::size_t rows = m.size();
  if (rows == 0) return 0;
  std::size_t cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};

/// Exact signature of a symmetric rational matrix via pivoted congruence elimination.
/// Zero-diagonal blocks are handled by the row+column addition trick, so no square roots
/// or floating point enter; pivot signs are read off directly.
inline Signature symmetric_signature(MatQ g) {
  std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i)
    require(g[i].size() == n, ErrKind::dimension_mismatch, "signature of non-square");
  std::vector<bool> done(n, false);
  Signature sig;
  auto add_row_col = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) g[i][k] += g[j][k];
    for (std::size_t k = 0; k < n; ++k) g[k][i] += g[k][j];
  };
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && g[i][i] != 0) piv = i;
    if (piv == n) {
      // all active diagonal entries vanish; hunt for an off-diagonal entry
      std::size_t a = n, b = n;
      for (std::size_t i = 0; i < n && a == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j)
          if (!done[j] && g[i][j] != 0) {
            a = i;
            b = j;
            break;
          }
      }
      if (a == n) {
        for (std::size_t i = 0; i < n; ++i)
          if (!done[i]) ++sig.zero;
        return sig;
      }
      add_row_col(a, b);  // now g[a][a] = 2 g[a][b] != 0
      piv = a;
    }
    Rat p = g[piv][piv];
    if (p > 0)
      ++sig.positive;
    else
      ++sig.negative;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || i == piv || g[i][piv] == 0) continue;
      Rat f = g[i][piv] / p;
      for (std::size_t k = 0; k < n; ++k) g[i][k] -= f * g[piv][k];
      for (std::size_t k = 0; k < n; ++k) g[k][i] -= f * g[k][piv];
    }
    done[piv] = true;
  }
  return sig;
}

inline bool is_negative_definite(const MatQ& g) {
  if (g.empty()) return true;
  Signature s = symmetric_signature(g);
  return s.positive == 0 && s.zero == 0;
}

// ---------------------------------------------------------------------------
// integer lattice routines
// ---------------------------------------------------------------------------

inline Int content(const VecZ& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd_int(g, x);
  return g;  // content of the zero vector is 0
}

/// Row Hermite normal form (canonical echelon over Z): pivots positive, entries above a
/// pivot reduced to [0, pivot). Returns the reduced rows with zero rows dropped.
inline MatZ hnf_rows(MatZ m) {
  if (m.empty()) return m;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // gcd-out column c below row r
    for (std::size_t i = r + 1; i < rows; ++i) {
      while (m[i][c] != 0) {
        if (m[r][c] == 0) {
          std::swap(m[r], m[i]);
          continue;
        }
        Int q = m[i][c] / m[r][c];
        for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
        if (m[i][c] != 0) std::swap(m[r], m[i]);
      }
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (std::size_t j = 0; j < cols; ++j) m[r][j] = -m[r][j];
    for (std::size_t i = 0; i < r; ++i) {
      Int q = m[i][c] / m[r][c];
      if (m[i][c] < 0 && q * m[r][c] != m[i][c]) --q;  // floor division
      if (q == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

/// Z-basis of { x in Z^n : A x = 0 }, canonicalized by row HNF. Kernels of integer maps
/// into Z^m are saturated, so the result is a saturated sublattice basis.
inline MatZ kernel_basis_int(const MatZ& a, std::size_t ncols) {
  std::size_t m = a.size();
  // column reduction of A, tracking the column operations in U (n x n)
  MatZ w = a;
  for (auto& row : w)
    require(row.size() == ncols, ErrKind::dimension_mismatch, "kernel input row size");
  std::size_t n = ncols;
  MatZ u(n, VecZ(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t i = 0; i < m; ++i) w[i][dst] -= q * w[i][src];
    for (std::size_t i = 0; i < n; ++i) u[i][dst] -= q * u[i][src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < m; ++i) std::swap(w[i][x], w[i][y]);
    for (std::size_t i = 0; i < n; ++i) std::swap(u[i][x], u[i][y]);
  };
  std::size_t lead = 0;
  for (std::size_t row = 0; row < m && lead < n; ++row) {
    // clear row `row` to a single entry in column `lead`
    bool any = false;
    for (std::size_t c = lead; c < n; ++c)
      if (w[row][c] != 0) any = true;
    if (!any) continue;
    for (;;) {
      std::size_t best = n;
      for (std::size_t c = lead; c < n; ++c) {
        if (w[row][c] == 0) continue;
        if (best == n || abs(w[row][c]) < abs(w[row][best])) best = c;
      }
      col_swap(lead, best);
      bool clean = true;
      for (std::size_t c = lead + 1; c < n; ++c) {
        if (w[row][c] == 0) continue;
        Int q = w[row][c] / w[row][lead];
        col_sub(c, lead, q);
        if (w[row][c] != 0) clean = false;
      }
      if (clean) break;
    }
    ++lead;
  }
  MatZ ker;
  for (std::size_t c = lead; c < n; ++c) {
    VecZ v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i][c];
    ker.push_back(std::move(v));
  }
  // also pick up any columns before `lead` that ended up zero (defensive; reduction
  // above always leaves zero columns at the back, but keep the scan cheap and total)
  for (std::size_t c = 0; c < lead; ++c) {
    bool zero = true;
    for (std::size_t i = 0; i < m && zero; ++i) zero = (w[i][c] == 0);
    if (zero) {
      VecZ v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = u[i][c];
      ker.push_back(std::move(v));
    }
  }
  return hnf_rows(std::move(ker));
}

/// Unimodular matrix whose first column is the given primitive vector.
inline MatZ complete_primitive(const VecZ& v) {
  std::size_t n = v.size();
  require(n > 0, ErrKind::validation, "empty vector");
  require(abs(content(v)) == 1, ErrKind::not_primitive, "vector is not primitive");
  // reduce v to e1 by row operations; apply the inverse operations to columns of winv
  VecZ x = v;
  MatZ winv(n, VecZ(n, 0));
  for (std::size_t i = 0; i < n; ++i) winv[i][i] = 1;
  auto row_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    x[dst] -= q * x[src];
    for (std::size_t i = 0; i < n; ++i) winv[i][src] += q * winv[i][dst];
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    std::swap(x[a], x[b]);
    for (std::size_t i = 0; i < n; ++i) std::swap(winv[i][a], winv[i][b]);
  };
  auto row_negate = [&](std::size_t a) {
    x[a] = -x[a];
    for (std::size_t i = 0; i < n; ++i) winv[i][a] = -winv[i][a];
  };
  for (;;) {
    std::size_t nz = 0, best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      ++nz;
      if (best == n || abs(x[i]) < abs(x[best])) best = i;
    }
    if (nz == 1) {
      if (best != 0) row_swap(0, best);
      if (x[0] < 0) row_negate(0);
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == best || x[i] == 0) continue;
      row_sub(i, best, x[i] / x[best]);
    }
  }
  return winv;  // columns: v itself, then a complement basis
}

}  // namespace mukai
