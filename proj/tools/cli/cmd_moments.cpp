#include <iomanip>
#include <memory>

#include "blockmerge/io/csv.hpp"
#include "blockmerge/moments.hpp"
#include "blockmerge/weighted_sums.hpp"
#include "commands.hpp"
#include "render.hpp"

namespace blockmerge::cli {

namespace {

struct Options {
  unsigned n_max = 50;
  unsigned order = 4;
  std::string mode = "auto";
  unsigned bell_max = 0;
  unsigned bell_from = 10;
};

template <class Scalar>
int report(Context& ctx, const Options& o, const MomentTable<Scalar>& t) {
  const int digits = ctx.digits;
  const auto series = central_error_terms(t);

  io::json doc = io::moment_table_json(t, digits);
  doc["error_series"] = io::error_series_json(series);

  // header and body for the main csv
  io::CsvWriter csv;
  std::vector<std::string> head{"n", "mu", "eps_mean"};
  for (unsigned j = 1; j <= t.order; ++j) head.push_back("raw_" + std::to_string(j));
  for (unsigned m = 2; m <= t.order; ++m) head.push_back("central_" + std::to_string(m));
  for (unsigned m = 2; m <= t.order; ++m) head.push_back("ratio_" + std::to_string(m));
  csv.row(head);
  for (unsigned n = 1; n <= t.n_max; ++n) {
    std::vector<std::string> row{std::to_string(n), io::decimal(t.mu[n - 1], digits),
                                 io::decimal(t.eps_mean[n - 1], digits)};
    for (unsigned j = 1; j <= t.order; ++j) row.push_back(io::decimal(t.raw[n - 1][j], digits));
    for (unsigned m = 2; m <= t.order; ++m) row.push_back(io::decimal(t.central[n - 1][m], digits));
    for (unsigned m = 2; m <= t.order; ++m) {
      row.push_back(io::decimal(as_double(t.central[n - 1][m]) / central_main_term(m, n).get_d()));
    }
    csv.row(row);
  }

  if (o.bell_max > 0) {
    if (o.bell_from > o.n_max) throw UsageError("--bell-from exceeds --n-max");
    const auto reports = weighted_moment_reports(o.bell_from, o.n_max, o.bell_max, kExactDefaultLimit,
                                                 t.mode.is_exact() ? BigFloat::kDefaultBits : t.mode.bits);
    io::json bell = io::json::array();
    io::CsvWriter bcsv;
    bcsv.row({"ell1", "ell2", "n", "value", "target", "scaled_error"});
    for (const auto& r : reports) {
      io::json pts = io::json::array();
      for (std::size_t i = 0; i < r.values.size(); ++i) {
        const unsigned n = r.n_from + static_cast<unsigned>(i);
        pts.push_back(io::json{{"n", n}, {"value", r.values[i]}, {"scaled_error", r.scaled_err[i]}});
        bcsv.row({std::to_string(r.ell1), std::to_string(r.ell2), std::to_string(n), io::decimal(r.values[i]),
                  r.target.get_str(), io::decimal(r.scaled_err[i])});
      }
      bell.push_back(io::json{{"ell1", r.ell1},
                              {"ell2", r.ell2},
                              {"target", r.target.get_str()},
                              {"sup_scaled_error", r.sup_scaled_err},
                              {"points", pts}});
    }
    doc["bell"] = bell;
    if (!ctx.json()) ctx.emit_csv("bell", bcsv.str());
  }

  if (!ctx.json()) {
    io::CsvWriter ecsv;
    ecsv.row({"m", "n", "value", "scaled_error"});
    for (const auto& s : series) {
      for (const auto& p : s.points) {
        ecsv.row({std::to_string(s.m), std::to_string(p.n), io::decimal(p.eps), io::decimal(p.scaled_diff)});
      }
    }
    ctx.emit_csv("errors", ecsv.str());
  }

  ctx.manifest.mode = t.mode.name();
  ctx.emit(doc, csv.str());

  auto& con = ctx.console();
  con << "mode " << t.mode.name() << ", order " << t.order << "\n";
  con << std::left << std::setw(6) << "n" << std::setw(16) << "mu";
  for (unsigned m = 2; m <= std::min(t.order, 4u); ++m) con << std::setw(14) << ("c" + std::to_string(m) + "/main");
  con << "\n";
  const unsigned from = t.n_max > 10 ? t.n_max - 9 : 1;
  for (unsigned n = from; n <= t.n_max; ++n) {
    con << std::setw(6) << n;
    if constexpr (std::is_same_v<Scalar, ExactRational>) {
      con << std::setw(16) << (n <= 4 ? t.mu[n - 1].get_str() : brief(as_double(t.mu[n - 1]), 10));
    } else {
      con << std::setw(16) << brief(as_double(t.mu[n - 1]), 10);
    }
    for (unsigned m = 2; m <= std::min(t.order, 4u); ++m) {
      con << std::setw(14) << brief(as_double(t.central[n - 1][m]) / central_main_term(m, n).get_d());
    }
    con << "\n";
  }
  return kOk;
}

}  // namespace

Runner add_moments(CLI::App& app) {
  auto o = std::make_shared<Options>();
  app.add_option("--n-max", o->n_max, "Largest n")->check(CLI::Range(1u, 20000u))->capture_default_str();
  app.add_option("--order", o->order, "Highest moment order")->check(CLI::Range(1u, 32u))->capture_default_str();
  app.add_option("--mode", o->mode, "exact, bigfloat(<bits>) or auto")->capture_default_str();
  app.add_option("--bell-max", o->bell_max, "Also report weighted Bell sums with ell1 + ell2 <= this (0: off)")
      ->check(CLI::Range(0u, 12u))
      ->capture_default_str();
  app.add_option("--bell-from", o->bell_from, "First n of the weighted Bell series")->capture_default_str();

  return [o](Context& ctx) {
    const Mode mode = resolve_mode(o->mode, o->n_max);
    if (mode.is_exact()) return report(ctx, *o, exact_moment_table(o->n_max, o->order));
    return report(ctx, *o, float_moment_table(o->n_max, o->order, mode.bits));
  };
}

}  // namespace blockmerge::cli
