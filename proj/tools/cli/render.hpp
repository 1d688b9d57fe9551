#pragma once

#include <sstream>
#include <string>

#include "blockmerge/io/serialize.hpp"
#include "blockmerge/mode.hpp"
#include "context.hpp"

namespace blockmerge::cli {

inline double as_double(const ExactRational& q) { return to_double(q); }
inline double as_double(const BigFloat& x) { return x.to_double(); }

/// Short fixed rendering for console tables.
inline std::string brief(double x, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << x;
  return s.str();
}

/// "auto" picks exact up to the default limit.
inline Mode resolve_mode(const std::string& text, unsigned n) {
  if (text == "auto") return default_mode_for(n);
  try {
    return Mode::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad --mode: ") + e.what());
  }
}

}  // namespace blockmerge::cli
