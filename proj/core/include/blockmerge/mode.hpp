#pragma once

#include <string>

#include "blockmerge/big_float.hpp"

namespace blockmerge {

/// Arithmetic mode of a pipeline: exact rationals or MPFR floats at `bits`.
struct Mode {
  enum class Kind { exact, bigfloat };

  Kind kind = Kind::exact;
  mpfr_prec_t bits = BigFloat::kDefaultBits;

  static Mode exact() { return {Kind::exact, 0}; }
  static Mode bigfloat(mpfr_prec_t bits = BigFloat::kDefaultBits) { return {Kind::bigfloat, bits}; }

  bool is_exact() const { return kind == Kind::exact; }
  /// "exact" or "bigfloat(256)".
  std::string name() const;
  /// Inverse of name(); also accepts "bigfloat" (256 bits) and "float".
  static Mode parse(const std::string& text);

  friend bool operator==(const Mode&, const Mode&) = default;
};

/// Largest n for which exact mode is the default.
inline constexpr unsigned kExactDefaultLimit = 150;

inline Mode default_mode_for(unsigned n) {
  return n <= kExactDefaultLimit ? Mode::exact() : Mode::bigfloat();
}

}  // namespace blockmerge
