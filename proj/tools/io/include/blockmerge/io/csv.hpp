#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace blockmerge::io {

/// Minimal CSV writer; fields are quoted only when they need it.
class CsvWriter {
 public:
  explicit CsvWriter(std::string preamble = {}) { out_ << preamble; }

  CsvWriter& row(const std::vector<std::string>& fields);
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

}  // namespace blockmerge::io
