#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "blockmerge/big_float.hpp"
#include "blockmerge/exact_rational.hpp"
#include "blockmerge/polynomial.hpp"

namespace blockmerge {

/// A(0..n_max) from the three-term recurrence. Every entry is checked
/// against the closed form (n+2)!/(n+1) * sum_{i<=n+2} (-1)^i/i!; a mismatch
/// throws InternalConsistencyError.
std::vector<BigInt> a_sequence(unsigned n_max);

/// (n+2)!/(n+1) * sum_{i=0}^{n+2} (-1)^i / i!, evaluated exactly.
ExactRational a_closed_form(unsigned n);

enum class Certification { holds, fails, indeterminate };

struct FloorCheck {
  Certification status = Certification::indeterminate;
  /// Precision at which the floor became unambiguous (or the cap).
  mpfr_prec_t bits_used = 0;
  /// Certified floor((n+2) n!/e + 1/2); meaningful unless indeterminate.
  BigInt floor_value;
};

/// Checks A(n) == floor((n+2) n!/e + 1/2). The argument is enclosed in an
/// interval with directed rounding; precision doubles until both ends share
/// one floor or `cap_bits` is reached (then the result is indeterminate).
FloorCheck a_floor_check(unsigned n, mpfr_prec_t start_bits = 64, mpfr_prec_t cap_bits = 16384);

struct MomentIdentity {
  unsigned n = 0;
  unsigned ell = 0;
  /// sum_k P(Y_n = k) (n-k)^ell, with 0^0 = 1.
  ExactRational lhs;
  /// B_ell - (B_{ell+1} - B_ell)/n.
  ExactRational rhs;
  /// sum_{m <= min(n-1, ell)} (n-m)/n * {ell m}.
  ExactRational stirling_form;

  /// The Bell closed form is only claimed for n >= ell.
  bool applies() const { return n >= ell; }
  bool holds() const { return !applies() || lhs == rhs; }
};

/// Both sides of the (n-k)^ell moment identity, computed independently. The
/// Stirling form must equal lhs for every n >= 1; a mismatch throws
/// InternalConsistencyError.
MomentIdentity nk_moment_identity(unsigned n, unsigned ell);

/// Left: sum_k P(Y_n = k) z^k. Right: sum_{m<n} (n-m)/(n m!) z^{n-m} (1-z)^m.
std::pair<RationalPolynomial, RationalPolynomial> z_polynomial_sides(unsigned n);
bool z_polynomial_identity(unsigned n);

/// Left: sum_t S_n(t) z^t. Right: z^n + sum_{1<=m<n} (n-m)/(n m!) z^{n-m} (1-z)^{m-1}.
std::pair<RationalPolynomial, RationalPolynomial> s_polynomial_sides(unsigned n);
bool s_polynomial_identity(unsigned n);

struct SSumIdentities {
  unsigned n = 0;
  ExactRational sum0, sum_inv, sum_inv2;
  ExactRational rhs0, rhs_inv, rhs_inv2;

  bool holds() const { return sum0 == rhs0 && sum_inv == rhs_inv && sum_inv2 == rhs_inv2; }
};

/// sum_t S_n(t) t^p for p = 0, -1, -2 against their closed forms in n, n!
/// and harmonic numbers.
SSumIdentities s_sum_identities(unsigned n);

/// sum_t S_n(t) t^ell, exactly.
ExactRational s_weighted_power_sum(unsigned n, unsigned ell);

struct QWeightedSum {
  /// Present when s is a non-negative integer.
  std::optional<ExactRational> exact;
  BigFloat value;
};

/// sum_k P(Y_n = k) (n-k)^ell k^s. Non-integer or negative s is evaluated in
/// MPFR at `bits`, with k^s = exp(s log k).
QWeightedSum q_weighted_sum(unsigned n, unsigned ell, double s, mpfr_prec_t bits = BigFloat::kDefaultBits);

/// Coefficients of the formal power series exp(-x)/(1-x)^2 up to x^{count-1}.
std::vector<ExactRational> egf_coefficients(unsigned count);
/// True when egf_coefficients(count)[n] == A(n)/n! for every n < count.
bool egf_identity(unsigned count);

/// S_n(n-1) = P(Y_n < n), summed from the row (not via 1 - A(n-1)/n!).
ExactRational s_penultimate(unsigned n);

/// sum_{m=2}^{n-1} (n-m)! / (m n!).
ExactRational factorial_tail_sum(unsigned n);

struct DobinskiCheck {
  unsigned ell = 0;
  /// sum_m {ell m} against B_ell from the Aitken triangle.
  bool row_sum = false;
  /// sum_m m {ell m} against B_{ell+1} - B_ell.
  bool weighted_sum = false;
  /// The recurrence triangle against the alternating-sum formula for {ell m}.
  bool explicit_stirling = false;

  bool holds() const { return row_sum && weighted_sum && explicit_stirling; }
};

/// Bell numbers B_0..B_L by the Aitken (Bell) triangle, independent of the
/// Stirling table.
std::vector<BigInt> bell_triangle(unsigned max_index);

/// One entry per ell = 0..max_ell.
std::vector<DobinskiCheck> dobinski_identities(unsigned max_ell);

}  // namespace blockmerge
