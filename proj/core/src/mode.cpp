#include "blockmerge/mode.hpp"

#include <stdexcept>

namespace blockmerge {

std::string Mode::name() const {
  if (kind == Kind::exact) return "exact";
  return "bigfloat(" + std::to_string(bits) + ")";
}

Mode Mode::parse(const std::string& text) {
  if (text == "exact") return exact();
  if (text == "bigfloat" || text == "float") return bigfloat();
  const std::string prefix = "bigfloat(";
  if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size() + 1 && text.back() == ')') {
    const std::string digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    std::size_t used = 0;
    long bits = 0;
    try {
      bits = std::stol(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == digits.size() && bits >= MPFR_PREC_MIN && bits <= 1 << 20) return bigfloat(bits);
  }
  throw std::invalid_argument("unknown mode '" + text + "' (expected exact or bigfloat(<bits>))");
}

}  // namespace blockmerge
