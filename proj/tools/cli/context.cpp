#include "context.hpp"

#include <iostream>
#include <sstream>

namespace blockmerge::cli {

namespace {

struct NullBuffer : std::streambuf {
  int overflow(int c) override { return c; }
};

}  // namespace

std::ostream& Context::console() const {
  static NullBuffer null_buffer;
  static std::ostream null_stream(&null_buffer);
  return quiet ? null_stream : std::cout;
}

void Context::emit(const io::json& doc, const std::string& csv_body) const {
  const std::string& cmd = manifest.command;
  if (json()) {
    io::json full;
    full["schema"] = "blockmerge/" + cmd;
    full["schema_version"] = io::kSchemaVersion;
    full["manifest"] = io::manifest_json(manifest, false);
    for (auto it = doc.begin(); it != doc.end(); ++it) full[it.key()] = it.value();
    io::write_text(out / (cmd + ".json"), full.dump(2) + "\n");
  } else {
    io::write_text(out / (cmd + ".csv"), io::csv_header(manifest, digits) + csv_body);
  }
  io::write_manifest(out / (cmd + ".manifest.json"), manifest);
}

void Context::emit_csv(const std::string& suffix, const std::string& csv_body) const {
  io::write_text(out / (manifest.command + "_" + suffix + ".csv"), io::csv_header(manifest, digits) + csv_body);
}

}  // namespace blockmerge::cli
