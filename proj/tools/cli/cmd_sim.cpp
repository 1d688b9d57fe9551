#include <atomic>
#include <iomanip>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>

#include "blockmerge/clt.hpp"
#include "blockmerge/distribution.hpp"
#include "blockmerge/io/csv.hpp"
#include "blockmerge/moments.hpp"
#include "blockmerge/simulator.hpp"
#include "commands.hpp"
#include "render.hpp"

namespace blockmerge::cli {

namespace {

// Above this the exact pmf gets expensive; TV / chi-square are skipped.
constexpr unsigned kPmfLimit = 60;
// Mean and variance hints come from the float engine up to here.
constexpr unsigned kHintLimit = 400;

struct SimOptions {
  unsigned n = 10;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string backend = "chain";
  unsigned workers = 0;
  std::optional<double> max_tv;
};

void add_sim_flags(CLI::App& app, SimOptions& o) {
  app.add_option("--n", o.n, "Deck size")->required()->check(CLI::Range(1u, 100000000u));
  app.add_option("--samples", o.samples, "Number of runs")->required();
  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--backend", o.backend, "chain (size chain) or full (explicit permutations)")
      ->check(CLI::IsMember({"chain", "full", "size_chain", "full_permutation"}))
      ->capture_default_str();
  app.add_option("--workers", o.workers, "Worker threads (default: --jobs)");
  app.add_option("--max-tv", o.max_tv, "Fail when TV distance to the exact law exceeds this");
}

SimSummary simulate(const Context& ctx, const SimOptions& o) {
  if (o.samples == 0) throw UsageError("--samples must be positive");
  SimConfig cfg;
  cfg.n = o.n;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.backend = parse_backend(o.backend);
  cfg.workers = o.workers ? o.workers : ctx.jobs;

  Progress progress;
  if (!ctx.quiet) {
    auto last = std::make_shared<std::atomic<int>>(-1);
    auto mutex = std::make_shared<std::mutex>();
    progress = [last, mutex](std::uint64_t done, std::uint64_t total) {
      const int pct = static_cast<int>(100 * done / total);
      if (pct / 5 == *last / 5 && pct != 100) return;
      std::lock_guard lock(*mutex);
      if (pct <= *last) return;
      *last = pct;
      std::cerr << "\rsimulate: " << pct << "%" << (pct == 100 ? "\n" : "") << std::flush;
    };
  }
  return run(cfg, progress);
}

std::optional<PmfView> exact_view(unsigned n, std::uint64_t observed_max) {
  if (n < 2 || n > kPmfLimit) return std::nullopt;
  unsigned m_max = std::max<unsigned>(auto_m_max(n), static_cast<unsigned>(std::min<std::uint64_t>(observed_max, 5000)));
  return pmf_view(exact_pmf(n, m_max));
}

std::string histogram_csv(const SimSummary& s) {
  io::CsvWriter csv;
  csv.row({"x", "count"});
  for (auto [x, c] : s.histogram) csv.row({std::to_string(x), std::to_string(c)});
  return csv.str();
}

}  // namespace

Runner add_simulate(CLI::App& app) {
  auto o = std::make_shared<SimOptions>();
  add_sim_flags(app, *o);

  return [o](Context& ctx) {
    if (o->max_tv && (o->n < 2 || o->n > kPmfLimit)) {
      throw UsageError("--max-tv needs 2 <= n <= " + std::to_string(kPmfLimit));
    }
    const SimSummary s = simulate(ctx, *o);
    io::json doc{{"summary", io::summary_json(s)}};
    bool ok = true;
    auto& con = ctx.console();
    con << "n " << s.config.n << ", samples " << s.count << ", backend " << backend_name(s.config.backend)
        << ", mean " << brief(s.mean(), 8) << ", range [" << s.min << ", " << s.max << "]\n";
    if (auto view = exact_view(o->n, s.max)) {
      const double tv = tv_distance(s, *view);
      const auto chi = chi_square_vs_pmf(s, *view);
      doc["tv"] = tv;
      doc["chi_square"] = io::json{{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value}};
      con << "TV vs exact law " << brief(tv) << ", chi-square p " << brief(chi.p_value) << "\n";
      if (o->max_tv) {
        ok = tv < *o->max_tv;
        doc["max_tv"] = *o->max_tv;
        doc["tv_ok"] = ok;
        if (!ok) con << "TV above " << *o->max_tv << ": FAIL\n";
      }
    }
    ctx.manifest.mode = "simulation";
    ctx.manifest.seeds = {o->seed};
    ctx.emit(doc, histogram_csv(s));
    return ok ? kOk : kCheckFailed;
  };
}

Runner add_clt(CLI::App& app) {
  auto o = std::make_shared<SimOptions>();
  auto plot = std::make_shared<bool>(false);
  auto max_ks = std::make_shared<std::optional<double>>();
  add_sim_flags(app, *o);
  app.add_flag("--plot-data", *plot, "Also write the standardized histogram with normal density");
  app.add_option("--max-ks", *max_ks, "Fail when the KS distance to the normal exceeds this");

  return [o, plot, max_ks](Context& ctx) {
    if (o->n < 2) throw UsageError("clt needs n >= 2");
    const SimSummary s = simulate(ctx, *o);

    std::optional<double> mu_hint, var_hint;
    if (o->n <= kHintLimit) {
      const auto t = float_moment_table(o->n, 2);
      mu_hint = t.mean(o->n).to_double();
      var_hint = t.central_moment(o->n, 2).to_double();
    }
    const auto view = exact_view(o->n, s.max);
    const CltReport r = clt_report(s, mu_hint, var_hint, view ? &*view : nullptr);

    io::json doc{{"report", io::clt_json(r)}, {"summary", io::summary_json(s)}};
    doc["hints"] = io::json{{"source", mu_hint ? "moment engine" : "asymptotic (n, n)"}};
    bool ok = true;
    if (*max_ks) {
      ok = r.ks.statistic < **max_ks;
      doc["max_ks"] = **max_ks;
      doc["ks_ok"] = ok;
    }
    if (o->max_tv) {
      if (!r.tv) throw UsageError("--max-tv needs 2 <= n <= " + std::to_string(kPmfLimit));
      const bool tv_ok = *r.tv < *o->max_tv;
      doc["tv_ok"] = tv_ok;
      ok = ok && tv_ok;
    }

    io::CsvWriter csv;
    csv.row({"k", "standardized_moment", "normal_target"});
    for (unsigned k = 0; k < r.moments.m.size(); ++k) {
      csv.row({std::to_string(k), io::decimal(r.moments.m[k]), io::decimal(r.normal_targets[k])});
    }
    std::string body = csv.str();
    body += "# ks_statistic: " + io::decimal(r.ks.statistic) + "\n";
    body += "# ks_p_value: " + io::decimal(r.ks.p_value) + "\n";

    if (*plot) {
      io::CsvWriter p;
      p.row({"x", "count", "z_lo", "z_hi", "density", "normal_density"});
      for (const auto& row : plot_data(s)) {
        p.row({std::to_string(row.x), std::to_string(row.count), io::decimal(row.z_lo), io::decimal(row.z_hi),
               io::decimal(row.density), io::decimal(row.normal)});
      }
      ctx.emit_csv("plot", p.str());
    }

    ctx.manifest.mode = "simulation";
    ctx.manifest.seeds = {o->seed};
    ctx.emit(doc, body);

    auto& con = ctx.console();
    con << "n " << r.n << ", samples " << r.count << "\n";
    con << "mean " << brief(r.moments.mean, 8) << ", variance " << brief(r.moments.variance, 8);
    if (r.mean_ratio) con << " (ratios " << brief(*r.mean_ratio) << ", " << brief(*r.var_ratio) << ")";
    con << "\n";
    con << "KS " << brief(r.ks.statistic) << " (p " << brief(r.ks.p_value) << "), skewness " << brief(r.moments.m[3])
        << ", kurtosis " << brief(r.moments.m[4]) << "\n";
    if (r.tv) con << "TV vs exact law " << brief(*r.tv) << "\n";
    if (!ok) con << "check FAILED\n";
    return ok ? kOk : kCheckFailed;
  };
}

}  // namespace blockmerge::cli
