#include "blockmerge/exact_rational.hpp"

#include <mpfr.h>

#include <cctype>
#include <stdexcept>
#include <vector>

namespace blockmerge {

ExactRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

ExactRational pow(const ExactRational& base, unsigned long exp) {
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exp);
  // Powers of coprime integers stay coprime.
  ExactRational q;
  mpz_swap(q.get_num_mpz_t(), num.get_mpz_t());
  mpz_swap(q.get_den_mpz_t(), den.get_mpz_t());
  return q;
}

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

std::pair<std::string, std::string> to_decimal_strings(const ExactRational& q) {
  return {q.get_num().get_str(10), q.get_den().get_str(10)};
}

ExactRational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  }
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  auto parse_int = [&](const std::string& s) {
    BigInt v;
    if (s.empty() || v.set_str(s, 10) != 0) {
      throw std::invalid_argument("malformed rational literal '" + raw + "'");
    }
    return v;
  };

  if (auto slash = text.find('/'); slash != std::string::npos) {
    return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }

  std::string mantissa = text;
  long exponent = 0;
  if (auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
    try {
      exponent = std::stol(mantissa.substr(e + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed rational literal '" + raw + "'");
    }
    mantissa.resize(e);
  }
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  if (mantissa == "-" || mantissa == "+") mantissa += "0";
  if (!mantissa.empty() && mantissa.front() == '+') mantissa.erase(0, 1);
  BigInt num = parse_int(mantissa);
  BigInt scale = pow(BigInt(10), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? make_rational(num, scale) : ExactRational(num * scale);
}

std::string to_decimal(const ExactRational& q, int digits) {
  if (digits < 1) digits = 1;
  // 4 bits per decimal digit plus slack keeps the rendering faithful.
  mpfr_t tmp;
  mpfr_init2(tmp, static_cast<mpfr_prec_t>(digits) * 4 + 64);
  mpfr_set_q(tmp, q.get_mpq_t(), MPFR_RNDN);
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  int len = mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, tmp);
  if (len >= static_cast<int>(buf.size())) {
    buf.resize(static_cast<std::size_t>(len) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, tmp);
  }
  mpfr_clear(tmp);
  return std::string(buf.data());
}

double to_double(const ExactRational& q) {
  mpfr_t tmp;
  mpfr_init2(tmp, 53);
  mpfr_set_q(tmp, q.get_mpq_t(), MPFR_RNDN);
  double out = mpfr_get_d(tmp, MPFR_RNDN);
  mpfr_clear(tmp);
  return out;
}

}  // namespace blockmerge
