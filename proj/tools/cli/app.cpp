#include <cstdlib>
#include <iostream>
#include <map>

#include "blockmerge/errors.hpp"
#include "blockmerge/distribution.hpp"
#include "commands.hpp"

#ifndef BLOCKMERGE_VERSION
#define BLOCKMERGE_VERSION "0.0.0"
#endif

namespace blockmerge::cli {

namespace {

std::string default_out() {
  if (const char* env = std::getenv("BLOCKMERGE_OUT_DIR"); env && *env) return env;
  return "blockmerge_out";
}

/// argv minus --out and --quiet: neither changes the content of the
/// artifacts, and leaving them out keeps replays byte-identical.
std::vector<std::string> recorded_args(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--out" || a == "-o") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0 || a == "--quiet" || a == "-q") continue;
    kept.push_back(a);
  }
  return kept;
}

io::json flag_values(const CLI::App& sub) {
  io::json flags = io::json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_type_size() == 0) {
        flags[name] = true;
      } else if (res.size() == 1) {
        flags[name] = res.front();
      } else {
        flags[name] = res;
      }
    } else if (!opt->get_default_str().empty()) {
      flags[name] = opt->get_default_str();
    }
  }
  return flags;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Exact engine and simulator for the block-merge shuffling process", "blockmerge"};
  app.set_version_flag("--version", BLOCKMERGE_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  std::string out = default_out();
  app.add_option("-o,--out", out, "Output directory (default: $BLOCKMERGE_OUT_DIR or ./blockmerge_out)");
  app.add_option("--format", ctx.format, "Artifact format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--digits", ctx.digits, "Significant digits for floating output")
      ->check(CLI::Range(5, 1000))
      ->capture_default_str();
  app.add_option("-j,--jobs", ctx.jobs, "Parallel jobs")->check(CLI::Range(1u, 1024u))->capture_default_str();
  app.add_flag("-q,--quiet", ctx.quiet, "No tables on stdout, no progress on stderr");

  std::map<const CLI::App*, Runner> runners;
  auto reg = [&](const char* name, const char* help, Runner (*add)(CLI::App&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    runners[sub] = add(*sub);
  };
  reg("exact", "Exact identity suite", add_exact);
  reg("moments", "Moment tables and asymptotic diagnostics", add_moments);
  reg("pmf", "Truncated law of the absorption time", add_pmf);
  reg("simulate", "Monte Carlo runs of the process", add_simulate);
  reg("clt", "Normal-approximation diagnostics from a simulation", add_clt);
  reg("recurrence", "Generic first-step recurrence", add_recurrence);

  CLI::App* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string manifest_path;
  replay->add_option("manifest", manifest_path, "Manifest file (or a JSON artifact)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  ctx.out = out;

  try {
    if (replay->parsed()) {
      const io::RunManifest m = io::read_manifest(manifest_path);
      if (m.command.empty() || m.command == "replay") throw UsageError("manifest has no replayable command");
      std::vector<std::string> again{"--out", out};
      if (ctx.quiet) again.push_back("--quiet");
      again.insert(again.end(), m.argv.begin(), m.argv.end());
      return run_cli(again);
    }

    for (const auto& [sub, runner] : runners) {
      if (!sub->parsed()) continue;
      ctx.manifest.version = BLOCKMERGE_VERSION;
      ctx.manifest.command = sub->get_name();
      ctx.manifest.argv = recorded_args(args);
      ctx.manifest.flags = flag_values(*sub);
      ctx.manifest.flags["format"] = ctx.format;
      ctx.manifest.flags["digits"] = ctx.digits;
      ctx.manifest.flags["jobs"] = ctx.jobs;
      ctx.manifest.timestamp = io::utc_timestamp();
      return runner(ctx);
    }
  } catch (const UsageError& e) {
    std::cerr << "blockmerge: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "blockmerge: " << e.what() << "\n";
    return kUsage;
  } catch (const TailBoundError& e) {
    std::cerr << "blockmerge: " << e.what() << "\n";
    return kUsage;
  } catch (const InternalConsistencyError& e) {
    std::cerr << "blockmerge: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "blockmerge: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace blockmerge::cli
