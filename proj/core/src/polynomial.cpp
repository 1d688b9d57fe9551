#include "blockmerge/polynomial.hpp"

#include <algorithm>

#include "blockmerge/sequences.hpp"

namespace blockmerge {

RationalPolynomial::RationalPolynomial(std::vector<ExactRational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

RationalPolynomial RationalPolynomial::monomial(const ExactRational& c, unsigned power) {
  std::vector<ExactRational> coeffs(power + 1, ExactRational(0));
  coeffs[power] = c;
  return RationalPolynomial(std::move(coeffs));
}

RationalPolynomial RationalPolynomial::binomial_power(const ExactRational& a, const ExactRational& b,
                                                      unsigned m) {
  std::vector<ExactRational> coeffs(m + 1);
  for (unsigned i = 0; i <= m; ++i) {
    coeffs[i] = ExactRational(seq::binomial(m, i)) * pow(a, m - i) * pow(b, i);
  }
  return RationalPolynomial(std::move(coeffs));
}

ExactRational RationalPolynomial::coeff(unsigned power) const {
  return power < coeffs_.size() ? coeffs_[power] : ExactRational(0);
}

ExactRational RationalPolynomial::evaluate(const ExactRational& z) const {
  ExactRational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), ExactRational(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), ExactRational(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const ExactRational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  trim();
  return *this;
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
  std::vector<ExactRational> out(a.coeffs_.size() + b.coeffs_.size() - 1, ExactRational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RationalPolynomial(std::move(out));
}

std::string RationalPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs_[i].get_str() + ")";
    if (i > 0) out += "*z^" + std::to_string(i);
  }
  return out;
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

}  // namespace blockmerge
