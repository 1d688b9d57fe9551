#pragma once

#include <string>

#include "blockmerge/big_float.hpp"
#include "blockmerge/exact_rational.hpp"
#include "blockmerge/mode.hpp"

namespace blockmerge {

/// Glue that lets the reference DPs run over either scalar type.
template <class Scalar>
struct ScalarOps;

template <>
struct ScalarOps<ExactRational> {
  static constexpr bool exact = true;
  static ExactRational from(const ExactRational& q, mpfr_prec_t) { return q; }
  static ExactRational from(long v, mpfr_prec_t) { return ExactRational(v); }
  static ExactRational abs(const ExactRational& q) { return ::abs(q); }
  static double to_double(const ExactRational& q) { return blockmerge::to_double(q); }
  static bool is_negative(const ExactRational& q) { return sgn(q) < 0; }
};

template <>
struct ScalarOps<BigFloat> {
  static constexpr bool exact = false;
  static BigFloat from(const ExactRational& q, mpfr_prec_t bits) { return BigFloat(q, bits); }
  static BigFloat from(long v, mpfr_prec_t bits) { return BigFloat(v, bits); }
  static BigFloat abs(const BigFloat& x) { return blockmerge::abs(x); }
  static double to_double(const BigFloat& x) { return x.to_double(); }
  static bool is_negative(const BigFloat& x) { return mpfr_sgn(x.get()) < 0; }
};

/// Working precision a mode implies for scalar construction (ignored when exact).
inline mpfr_prec_t working_bits(const Mode& mode) {
  return mode.is_exact() ? BigFloat::kDefaultBits : mode.bits;
}

}  // namespace blockmerge
