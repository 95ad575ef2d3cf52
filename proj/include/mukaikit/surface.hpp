#pragma once

#include <string>

#include "linalg.hpp"

namespace mukai {

/// Numerical input data of a smooth projective surface: the Neron-Severi intersection
/// form (integer, symmetric, signature (1, rank-1)), the canonical class K written in
/// the chosen basis, and chi(O).
struct SurfaceData {
  std::size_t rank = 0;
  MatQ gram;       // integer entries
  VecQ canonical;  // integer entries
  Rat chiO = 0;
};

inline void validate_surface(const SurfaceData& s) {
  require(s.rank >= 1, ErrKind::validation, "surface rank must be >= 1");
  require(s.gram.size() == s.rank, ErrKind::dimension_mismatch, "gram size != rank");
  for (std::size_t i = 0; i < s.rank; ++i) {
    require(s.gram[i].size() == s.rank, ErrKind::dimension_mismatch, "gram is not square");
    for (std::size_t j = 0; j < s.rank; ++j) {
      require(is_integer(s.gram[i][j]), ErrKind::validation, "gram entries must be integers");
      require(s.gram[i][j] == s.gram[j][i], ErrKind::validation, "gram must be symmetric");
    }
  }
  require(s.canonical.size() == s.rank, ErrKind::dimension_mismatch, "canonical size != rank");
  for (const auto& x : s.canonical)
    require(is_integer(x), ErrKind::validation, "canonical entries must be integers");
  require(is_integer(s.chiO), ErrKind::validation, "chiO must be an integer");
  Signature sig = symmetric_signature(s.gram);
  require(sig.positive == 1 && sig.zero == 0, ErrKind::validation,
          "gram signature must be (1, rank-1), got (" + std::to_string(sig.positive) + "," +
              std::to_string(sig.negative) + "," + std::to_string(sig.zero) + ")");
}

/// Intersection pairing (x, y) on NS(X) x NS(X).
inline Rat ns_pair(const SurfaceData& s, const VecQ& x, const VecQ& y) {
  require(x.size() == s.rank && y.size() == s.rank, ErrKind::dimension_mismatch,
          "NS class size != surface rank");
  return form_value(s.gram, x, y);
}

/// K3-type means K = 0 and chi(O) = 2; this is the regime where Mukai vectors of
/// positive-rank classes are defined.
inline bool k3_type(const SurfaceData& s) {
  if (s.chiO != 2) return false;
  return vec_is_zero(s.canonical);
}

inline bool ns_even(const SurfaceData& s) {
  for (std::size_t i = 0; i < s.rank; ++i)
    if (rat_num(s.gram[i][i]) % 2 != 0) return false;
  return true;
}

inline bool vec_is_integral(const VecQ& v) {
  for (const auto& x : v)
    if (!is_integer(x)) return false;
  return true;
}

inline VecZ vec_to_z(const VecQ& v, ErrKind kind = ErrKind::validation) {
  VecZ r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_int(v[i], kind, "coordinate");
  return r;
}

}  // namespace mukai
