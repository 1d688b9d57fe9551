#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "blockmerge/io/csv.hpp"
#include "blockmerge/io/manifest.hpp"
#include "blockmerge/io/serialize.hpp"
#include "commands.hpp"

namespace fs = std::filesystem;
using blockmerge::cli::run_cli;
using blockmerge::io::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("bm_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(const fs::path& out, std::vector<std::string> args) {
  args.insert(args.begin(), {"--quiet", "--out", out.string()});
  return run_cli(args);
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("exit codes") {
  TempDir d;
  CHECK(cli(d.path, {"exact", "--n-max", "1"}) == 0);
  CHECK(cli(d.path, {"exact", "--identities", "nosuch"}) == 2);
  CHECK(cli(d.path, {"simulate", "--n", "5", "--samples", "0"}) == 2);
  CHECK(cli(d.path, {"pmf", "--n", "3", "--m-max", "zero"}) == 2);
  CHECK(cli(d.path, {"moments", "--n-max", "3", "--mode", "quad"}) == 2);
  CHECK(cli(d.path, {"nosuchcommand"}) == 2);
  CHECK(cli(d.path, {}) == 2);
  CHECK(cli(d.path, {"recurrence", "--initial", "0", "--n-max", "5"}) == 2);
  // an unattainable TV target is a check failure, not a usage error
  CHECK(cli(d.path, {"simulate", "--n", "4", "--samples", "200", "--max-tv", "1e-9"}) == 1);
}

TEST_CASE("binary exit codes") {
  TempDir d;
  auto status = [&](const std::string& args) {
    const std::string cmd = std::string(BLOCKMERGE_BINARY) + " --quiet --out " + d.path.string() + " " + args +
                            " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("exact --n-max 1") == 0);
  CHECK(status("exact --identities nosuch") == 2);
  CHECK(status("simulate --samples 0 --n 3") == 2);
  CHECK(status("--help") == 0);
}

TEST_CASE("moments output carries exact means") {
  TempDir d;
  REQUIRE(cli(d.path, {"moments", "--n-max", "3", "--order", "1", "--mode", "exact"}) == 0);
  const json j = load(d.path / "moments.json");
  CHECK(j["schema"] == "blockmerge/moments");
  CHECK(j["rows"][2]["mu"]["num"] == "10");
  CHECK(j["rows"][2]["mu"]["den"] == "3");
  CHECK(blockmerge::io::rational_from_json(j["rows"][1]["mu"]) == 2);
  REQUIRE(cli(d.path, {"moments", "--n-max", "1"}) == 0);
  CHECK(load(d.path / "moments.json")["rows"][0]["mu"]["num"] == "0");
}

TEST_CASE("pmf output") {
  TempDir d;
  REQUIRE(cli(d.path, {"pmf", "--n", "2", "--m-max", "10"}) == 0);
  const json j = load(d.path / "pmf.json");
  for (unsigned m = 1; m <= 10; ++m) {
    CHECK(blockmerge::io::rational_from_json(j["rows"][m - 1]["p"]) ==
          blockmerge::pow(blockmerge::ExactRational(1, 2), m));
  }
  REQUIRE(cli(d.path, {"pmf", "--n", "1"}) == 0);
  const json t = load(d.path / "pmf.json");
  CHECK(t["terminal"] == true);
  CHECK(t["residual"]["num"] == "0");
  REQUIRE(cli(d.path, {"pmf", "--n", "10", "--m-max", "auto"}) == 0);
  const auto res = blockmerge::io::rational_from_json(load(d.path / "pmf.json")["residual"]);
  CHECK(res < blockmerge::ExactRational(1) / blockmerge::ExactRational(blockmerge::pow(blockmerge::BigInt(10), 30)));
}

TEST_CASE("recurrence output matches the mean column") {
  TempDir d;
  REQUIRE(cli(d.path, {"recurrence", "--lambda-const", "1", "--initial", "0,2", "--n-max", "15"}) == 0);
  const json r = load(d.path / "recurrence.json");
  REQUIRE(cli(d.path, {"moments", "--n-max", "15", "--order", "1", "--mode", "exact"}) == 0);
  const json m = load(d.path / "moments.json");
  for (unsigned n = 1; n <= 15; ++n) CHECK(r["rows"][n - 1]["xi"] == m["rows"][n - 1]["mu"]);

  REQUIRE(cli(d.path, {"recurrence", "--lambda-const", "0", "--initial", "0,0", "--n-max", "10"}) == 0);
  for (const auto& row : load(d.path / "recurrence.json")["rows"]) CHECK(row["xi"]["num"] == "0");

  {
    std::ofstream f(d.path / "lambda.txt");
    f << "# lambda_n = n\n";
    for (int n = 1; n <= 200; ++n) f << n << "\n";
  }
  REQUIRE(cli(d.path, {"recurrence", "--L", "1", "--M", "1", "--lambda-file", (d.path / "lambda.txt").string(),
                       "--initial", "0,0", "--n-max", "200", "--mode", "bigfloat(128)"}) == 0);
  const json rows = load(d.path / "recurrence.json")["rows"];
  const double last = rows[199]["trend"].get<double>();
  const double early = rows[19]["trend"].get<double>();
  CHECK(std::abs(last - 1) < std::abs(early - 1));
  CHECK(std::abs(last - 1) < 0.05);
  CHECK(cli(d.path, {"recurrence", "--lambda-file", (d.path / "lambda.txt").string(), "--n-max", "500"}) == 2);
}

TEST_CASE("manifest replay is byte-identical") {
  TempDir a, b;
  const std::vector<std::vector<std::string>> runs = {
      {"moments", "--n-max", "12", "--order", "4", "--mode", "exact"},
      {"--format", "csv", "moments", "--n-max", "12", "--order", "3", "--mode", "exact", "--bell-max", "2",
       "--bell-from", "4"},
      {"pmf", "--n", "6", "--m-max", "auto", "--moments", "2"},
      {"exact", "--n-max", "20", "--identities", "sum_one,s_sums"},
      {"simulate", "--n", "9", "--samples", "9000", "--seed", "3", "--workers", "3"},
      {"--format", "csv", "clt", "--n", "30", "--samples", "5000", "--seed", "1", "--plot-data"},
      {"recurrence", "--L", "1", "--M", "1/2", "--initial", "0,1,1", "--n-max", "30"},
  };
  for (const auto& args : runs) {
    CAPTURE(args.front());
    fs::remove_all(a.path);
    fs::remove_all(b.path);
    REQUIRE(cli(a.path, args) == 0);
    std::string command;
    for (const auto& entry : fs::directory_iterator(a.path)) {
      const std::string name = entry.path().filename().string();
      if (name.size() > 14 && name.substr(name.size() - 14) == ".manifest.json") command = name.substr(0, name.size() - 14);
    }
    REQUIRE(!command.empty());
    const fs::path manifest = a.path / (command + ".manifest.json");
    CHECK(load(manifest).contains("timestamp"));
    REQUIRE(run_cli({"--quiet", "--out", b.path.string(), "replay", manifest.string()}) == 0);
    for (const auto& entry : fs::directory_iterator(a.path)) {
      const std::string name = entry.path().filename().string();
      if (name.find(".manifest.json") != std::string::npos) continue;
      CAPTURE(name);
      REQUIRE(fs::exists(b.path / name));
      CHECK(slurp(entry.path()) == slurp(b.path / name));
    }
  }
}

TEST_CASE("csv artifacts start with a manifest header") {
  TempDir d;
  REQUIRE(cli(d.path, {"--format", "csv", "pmf", "--n", "3", "--m-max", "5"}) == 0);
  const std::string text = slurp(d.path / "pmf.csv");
  CHECK(text.rfind("# tool: blockmerge", 0) == 0);
  CHECK(text.find("# command: pmf") != std::string::npos);
  CHECK(text.find("timestamp") == std::string::npos);
  CHECK(text.find("\nm,p,survival\n") != std::string::npos);
}

TEST_CASE("environment default for the output directory") {
  TempDir d;
  ::setenv("BLOCKMERGE_OUT_DIR", d.path.string().c_str(), 1);
  CHECK(run_cli({"--quiet", "exact", "--n-max", "2", "--identities", "sum_one"}) == 0);
  ::unsetenv("BLOCKMERGE_OUT_DIR");
  CHECK(fs::exists(d.path / "exact.json"));
}

TEST_CASE("csv quoting and serialization round trips") {
  blockmerge::io::CsvWriter w;
  w.row({"a", "b,c", "d\"e"});
  CHECK(w.str() == "a,\"b,c\",\"d\"\"e\"\n");
  const blockmerge::ExactRational q(-22, 7);
  CHECK(blockmerge::io::rational_from_json(blockmerge::io::to_json(q)) == q);
  CHECK(blockmerge::io::decimal(0.1) == "0.1");

  blockmerge::SimConfig cfg;
  cfg.n = 6;
  cfg.samples = 3000;
  cfg.seed = 4;
  const auto s = blockmerge::run(cfg);
  const auto back = blockmerge::io::summary_from_json(blockmerge::io::summary_json(s));
  CHECK(back == s);
  CHECK(back.stream_seeds == s.stream_seeds);
}
