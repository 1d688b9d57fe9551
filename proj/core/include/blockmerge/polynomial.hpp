#pragma once

#include <string>
#include <vector>

#include "blockmerge/exact_rational.hpp"

namespace blockmerge {

/// Polynomial in z with exact rational coefficients; coeffs()[i] multiplies
/// z^i. Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and degree -1.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<ExactRational> coeffs);

  static RationalPolynomial monomial(const ExactRational& c, unsigned power);
  /// (a + b z)^m expanded by the binomial theorem.
  static RationalPolynomial binomial_power(const ExactRational& a, const ExactRational& b, unsigned m);

  const std::vector<ExactRational>& coeffs() const { return coeffs_; }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  ExactRational coeff(unsigned power) const;
  ExactRational evaluate(const ExactRational& z) const;

  RationalPolynomial& operator+=(const RationalPolynomial& rhs);
  RationalPolynomial& operator-=(const RationalPolynomial& rhs);
  RationalPolynomial& operator*=(const ExactRational& scalar);

  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(RationalPolynomial a, const ExactRational& s) { return a *= s; }
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();

  std::vector<ExactRational> coeffs_;
};

}  // namespace blockmerge
