#include "blockmerge/io/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace blockmerge::io {

json manifest_json(const RunManifest& m, bool with_timestamp) {
  json j{{"schema_version", kSchemaVersion},
         {"tool", m.tool},
         {"version", m.version},
         {"command", m.command},
         {"argv", m.argv},
         {"flags", m.flags},
         {"mode", m.mode},
         {"seeds", m.seeds}};
  if (with_timestamp) j["timestamp"] = m.timestamp;
  return j;
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.tool = j.value("tool", "blockmerge");
  m.version = j.value("version", "");
  m.command = j.at("command").get<std::string>();
  m.argv = j.at("argv").get<std::vector<std::string>>();
  m.flags = j.value("flags", json::object());
  m.mode = j.value("mode", "");
  m.seeds = j.value("seeds", std::vector<std::uint64_t>{});
  m.timestamp = j.value("timestamp", "");
  return m;
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("bad manifest " + path.string() + ": " + e.what());
  }
  // data files embed the manifest under "manifest"
  if (j.contains("manifest") && j["manifest"].is_object()) return manifest_from_json(j["manifest"]);
  return manifest_from_json(j);
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  write_text(path, manifest_json(m, true).dump(2) + "\n");
}

std::string csv_header(const RunManifest& m, int digits) {
  std::ostringstream out;
  out << "# tool: " << m.tool << ' ' << m.version << '\n';
  out << "# schema_version: " << kSchemaVersion << '\n';
  out << "# command: " << m.command << '\n';
  out << "# argv:";
  for (const auto& a : m.argv) out << ' ' << a;
  out << '\n';
  out << "# flags: " << m.flags.dump() << '\n';
  out << "# mode: " << m.mode << '\n';
  out << "# digits: " << digits << '\n';
  if (!m.seeds.empty()) {
    out << "# seeds:";
    for (auto s : m.seeds) out << ' ' << s;
    out << '\n';
  }
  return out.str();
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace blockmerge::io
