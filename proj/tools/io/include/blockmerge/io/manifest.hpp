#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "blockmerge/io/serialize.hpp"

namespace blockmerge::io {

/// Everything needed to regenerate an output file.
struct RunManifest {
  std::string tool = "blockmerge";
  std::string version;
  std::string command;
  /// Arguments after the program name, exactly as given.
  std::vector<std::string> argv;
  /// Parsed flag values, for humans and schemas.
  json flags = json::object();
  std::string mode;
  std::vector<std::uint64_t> seeds;
  /// ISO-8601 UTC. Only written to the sidecar, never into data files, so
  /// that reruns are byte-identical.
  std::string timestamp;
};

json manifest_json(const RunManifest& m, bool with_timestamp);
RunManifest manifest_from_json(const json& j);

RunManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const RunManifest& m);

/// "# key: value" lines for the top of a CSV file (no timestamp).
std::string csv_header(const RunManifest& m, int digits);

std::string utc_timestamp();

/// Writes `text` to `path`, creating parent directories. Throws
/// std::runtime_error on I/O failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace blockmerge::io
