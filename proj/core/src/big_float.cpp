#include "blockmerge/big_float.hpp"

#include <algorithm>
#include <vector>

namespace blockmerge {

namespace {

mpfr_prec_t wider(const BigFloat& a, const BigFloat& b) { return std::max(a.bits(), b.bits()); }

}  // namespace

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(long value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(double value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const ExactRational& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigInt& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.bits());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, other.bits());
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat out(bits());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

std::string BigFloat::to_string(int digits) const {
  if (digits < 1) digits = 1;
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  int len = mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  if (len >= static_cast<int>(buf.size())) {
    buf.resize(static_cast<std::size_t>(len) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  }
  return std::string(buf.data());
}

BigFloat abs(const BigFloat& x) {
  BigFloat out(x.bits());
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat out(x.bits());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat log(const BigFloat& x) {
  BigFloat out(x.bits());
  mpfr_log(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat exp(const BigFloat& x) {
  BigFloat out(x.bits());
  mpfr_exp(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat pow(const BigFloat& base, unsigned long exp) {
  BigFloat out(base.bits());
  mpfr_pow_ui(out.get(), base.get(), exp, MPFR_RNDN);
  return out;
}

BigFloat pow(const BigFloat& base, const BigFloat& exp) {
  BigFloat out(wider(base, exp));
  mpfr_pow(out.get(), base.get(), exp.get(), MPFR_RNDN);
  return out;
}

}  // namespace blockmerge
