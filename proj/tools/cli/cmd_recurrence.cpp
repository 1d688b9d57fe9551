#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "blockmerge/generic_recurrence.hpp"
#include "blockmerge/io/csv.hpp"
#include "commands.hpp"
#include "render.hpp"

namespace blockmerge::cli {

namespace {

struct Options {
  unsigned L = 0;
  std::string M = "1";
  std::string lambda_file;
  std::string lambda_const;
  std::string initial = "0,2";
  unsigned n_max = 50;
  std::string mode = "auto";
};

ExactRational parse_value(const std::string& text, const std::string& what) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " value '" + text + "'");
  }
}

std::vector<ExactRational> parse_list(const std::string& text) {
  std::vector<ExactRational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_value(item, "--initial"));
  return out;
}

/// One value per line (lambda_1 first); blank lines and '#' comments skipped.
std::vector<ExactRational> read_lambda(const std::string& path, unsigned n_max) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read --lambda-file " + path);
  std::vector<ExactRational> out;
  std::string line;
  while (std::getline(in, line) && out.size() < n_max) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_value(line, "--lambda-file"));
  }
  if (out.size() < n_max) {
    throw UsageError("--lambda-file has " + std::to_string(out.size()) + " values, need " + std::to_string(n_max));
  }
  return out;
}

template <class Scalar>
std::vector<Scalar> convert(const std::vector<ExactRational>& v, const Mode& mode) {
  if constexpr (std::is_same_v<Scalar, ExactRational>) {
    (void)mode;
    return v;
  } else {
    std::vector<Scalar> out;
    for (const auto& q : v) out.emplace_back(q, mode.bits);
    return out;
  }
}

template <class Scalar>
int solve(Context& ctx, const Options& o, const Mode& mode, const ExactRational& M,
          const std::vector<ExactRational>& lambda, const std::vector<ExactRational>& initial) {
  Scalar m_val;
  if constexpr (std::is_same_v<Scalar, ExactRational>) {
    m_val = M;
  } else {
    m_val = Scalar(M, mode.bits);
  }
  const auto run = generic_recurrence<Scalar>(o.L, m_val, convert<Scalar>(lambda, mode),
                                              convert<Scalar>(initial, mode), o.n_max, mode);
  io::CsvWriter csv;
  csv.row({"n", "lambda", "xi", "eta", "delta", "ratio", "diff_scaled", "trend"});
  for (std::size_t i = 0; i < run.xi.size(); ++i) {
    csv.row({std::to_string(i + 1), io::decimal(run.lambda[i], ctx.digits), io::decimal(run.xi[i], ctx.digits),
             io::decimal(run.eta[i], ctx.digits), io::decimal(run.delta[i], ctx.digits), io::decimal(run.ratio[i]),
             io::decimal(run.diff_scaled[i]), run.trend.empty() ? "" : io::decimal(run.trend[i])});
  }
  ctx.manifest.mode = mode.name();
  ctx.emit(io::recurrence_json(run, ctx.digits), csv.str());

  auto& con = ctx.console();
  con << "L " << o.L << ", M " << o.M << ", n0 " << run.n0 << ", mode " << mode.name() << "\n";
  con << std::left << std::setw(8) << "n" << std::setw(22) << "xi" << std::setw(12) << "trend" << "ratio\n";
  const std::size_t from = run.xi.size() > 8 ? run.xi.size() - 8 : 0;
  for (std::size_t i = from; i < run.xi.size(); ++i) {
    con << std::setw(8) << i + 1 << std::setw(22) << brief(as_double(run.xi[i]), 12) << std::setw(12)
        << (run.trend.empty() ? "-" : brief(run.trend[i])) << brief(run.ratio[i]) << "\n";
  }
  con << "sup ratio " << brief(run.sup_ratio) << ", sup scaled diff " << brief(run.sup_diff_scaled) << "\n";
  return kOk;
}

}  // namespace

Runner add_recurrence(CLI::App& app) {
  auto o = std::make_shared<Options>();
  app.add_option("--L", o->L, "Growth exponent of lambda_n ~ M n^L")->check(CLI::Range(0u, 16u))->capture_default_str();
  app.add_option("--M", o->M, "Leading constant (rational or decimal)")->capture_default_str();
  auto* file = app.add_option("--lambda-file", o->lambda_file, "lambda_1, lambda_2, ... one per line");
  app.add_option("--lambda-const", o->lambda_const, "lambda_n = this for every n")->excludes(file);
  app.add_option("--initial", o->initial, "xi_1..xi_n0, comma separated")->capture_default_str();
  app.add_option("--n-max", o->n_max, "Largest n")->check(CLI::Range(2u, 20000u))->capture_default_str();
  app.add_option("--mode", o->mode, "exact, bigfloat(<bits>) or auto")->capture_default_str();

  return [o](Context& ctx) {
    const Mode mode = resolve_mode(o->mode, o->n_max);
    const ExactRational M = parse_value(o->M, "--M");
    const auto initial = parse_list(o->initial);
    if (initial.size() < 2) throw UsageError("--initial needs at least two values");
    if (initial.size() > o->n_max) throw UsageError("--initial is longer than --n-max");

    std::vector<ExactRational> lambda;
    if (!o->lambda_file.empty()) {
      lambda = read_lambda(o->lambda_file, o->n_max);
    } else if (!o->lambda_const.empty()) {
      lambda.assign(o->n_max, parse_value(o->lambda_const, "--lambda-const"));
    } else {
      for (unsigned n = 1; n <= o->n_max; ++n) lambda.push_back(M * ExactRational(pow(BigInt(n), o->L)));
    }
    if (mode.is_exact()) return solve<ExactRational>(ctx, *o, mode, M, lambda, initial);
    return solve<BigFloat>(ctx, *o, mode, M, lambda, initial);
  };
}

}  // namespace blockmerge::cli
