#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "blockmerge/io/manifest.hpp"

namespace blockmerge::cli {

/// Bad flag values discovered after parsing; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct Context {
  std::filesystem::path out;
  std::string format = "json";
  int digits = 30;
  unsigned jobs = 1;
  bool quiet = false;
  io::RunManifest manifest;

  std::ostream& console() const;
  /// Writes <out>/<command>.<format> and <out>/<command>.manifest.json.
  /// `doc` is used for json, `csv_body` (header row plus data) for csv.
  void emit(const io::json& doc, const std::string& csv_body) const;
  /// Extra CSV artifact <out>/<command>_<suffix>.csv, always with the
  /// manifest header.
  void emit_csv(const std::string& suffix, const std::string& csv_body) const;
  /// JSON-only sidecar <out>/<command>_<suffix>.json (e.g. large series).
  bool json() const { return format == "json"; }
};

}  // namespace blockmerge::cli
