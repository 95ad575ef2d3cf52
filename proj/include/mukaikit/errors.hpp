#pragma once

#include <stdexcept>
#include <string>

namespace mukai {

/// Machine-readable failure kinds; the CLI maps these to exit codes and JSON error objects.
enum class ErrKind {
  parse,               // malformed input text/JSON
  io,                  // missing or unreadable file
  dimension_mismatch,  // vector/matrix sizes disagree with the surface rank
  not_defined,         // operation undefined for the given data (e.g. Mukai vector off K3)
  not_square,          // rank component is not the square of a positive rational
  zero_rank,           // rank-0 denominator in a slope/μ computation
  not_negative_definite,
  not_definite,        // Cartan data not of finite type
  not_ade,             // pairing/graph data outside the simply laced dictionary
  form_not_descending, // quotient form not well defined (vector not in the radical)
  not_primitive,
  hypothesis_violation,
  kernel_not_one_dimensional,
  on_wall,
  endpoint_on_wall,
  box_exhausted,
  degenerate,          // degenerate denominator / singular matrix
  enum_limit,          // enumeration exceeded MUKAI_KIT_MAX_ENUM
  reduction_limit,     // alcove reduction exceeded its step bound
  unsupported,         // operation not defined for this generator/data combination
  validation           // generic precondition failure
};

inline const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::parse: return "parse";
    case ErrKind::io: return "io";
    case ErrKind::dimension_mismatch: return "dimension_mismatch";
    case ErrKind::not_defined: return "not_defined";
    case ErrKind::not_square: return "not_square";
    case ErrKind::zero_rank: return "zero_rank";
    case ErrKind::not_negative_definite: return "not_negative_definite";
    case ErrKind::not_definite: return "not_definite";
    case ErrKind::not_ade: return "not_ade";
    case ErrKind::form_not_descending: return "form_not_descending";
    case ErrKind::not_primitive: return "not_primitive";
    case ErrKind::hypothesis_violation: return "hypothesis_violation";
    case ErrKind::kernel_not_one_dimensional: return "kernel_not_one_dimensional";
    case ErrKind::on_wall: return "on_wall";
    case ErrKind::endpoint_on_wall: return "endpoint_on_wall";
    case ErrKind::box_exhausted: return "box_exhausted";
    case ErrKind::degenerate: return "degenerate";
    case ErrKind::enum_limit: return "enum_limit";
    case ErrKind::reduction_limit: return "reduction_limit";
    case ErrKind::unsupported: return "unsupported";
    case ErrKind::validation: return "validation";
  }
  return "unknown";
}

class MukaiError : public std::runtime_error {
 public:
  MukaiError(ErrKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}
  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& detail) {
  throw MukaiError(kind, detail);
}

inline void require(bool cond, ErrKind kind, const std::string& detail) {
  if (!cond) fail(kind, detail);
}

}  // namespace mukai
