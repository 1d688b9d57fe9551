#pragma once

#include <mpfr.h>

#include <string>

#include "blockmerge/exact_rational.hpp"

namespace blockmerge {

/// Binary floating value with a per-object mantissa width, backed by MPFR.
/// Binary operations produce a result at the wider of the two operand
/// precisions; every operation rounds to nearest.
class BigFloat {
 public:
  static constexpr mpfr_prec_t kDefaultBits = 256;

  explicit BigFloat(mpfr_prec_t bits = kDefaultBits);
  BigFloat(long value, mpfr_prec_t bits);
  BigFloat(double value, mpfr_prec_t bits);
  /// Correctly rounded conversion from an exact rational.
  BigFloat(const ExactRational& value, mpfr_prec_t bits);
  BigFloat(const BigInt& value, mpfr_prec_t bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_prec_t bits() const { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  BigFloat operator-() const;

  friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
  friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
  friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
  friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }

  friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.value_, b.value_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return compare(a, b) == 0; }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Scientific rendering with `digits` significant decimal digits.
  std::string to_string(int digits = 30) const;

 private:
  mpfr_t value_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat pow(const BigFloat& base, unsigned long exp);
BigFloat pow(const BigFloat& base, const BigFloat& exp);

}  // namespace blockmerge
