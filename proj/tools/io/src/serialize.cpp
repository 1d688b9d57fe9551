#include "blockmerge/io/serialize.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace blockmerge::io {

json to_json(const ExactRational& q) {
  auto [num, den] = to_decimal_strings(q);
  return json{{"num", num}, {"den", den}};
}

json to_json(const BigFloat& x, int digits) { return x.to_string(digits); }

ExactRational rational_from_json(const json& j) {
  if (j.is_object()) {
    return make_rational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return ExactRational(j.get<long>());
  throw std::invalid_argument("not a rational: " + j.dump());
}

std::string decimal(const ExactRational& q, int digits) { return to_decimal(q, digits); }
std::string decimal(const BigFloat& x, int digits) { return x.to_string(digits); }

std::string decimal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

json finite(double x) {
  if (std::isfinite(x)) return x;
  return decimal(x);
}

template <class Scalar>
json row_json(const std::vector<Scalar>& v, int digits, std::size_t from = 0) {
  json out = json::array();
  for (std::size_t i = from; i < v.size(); ++i) out.push_back(scalar_json(v[i], digits));
  return out;
}

}  // namespace

template <class Scalar>
json moment_table_json(const MomentTable<Scalar>& t, int digits) {
  json rows = json::array();
  for (unsigned n = 1; n <= t.n_max; ++n) {
    json r;
    r["n"] = n;
    r["mu"] = scalar_json(t.mu[n - 1], digits);
    r["eps_mean"] = scalar_json(t.eps_mean[n - 1], digits);
    r["raw"] = row_json(t.raw[n - 1], digits);
    r["central"] = row_json(t.central[n - 1], digits);
    r["eps_m"] = row_json(t.eps_m[n - 1], digits);
    // central / main term for m >= 2, the asymptotic ratio columns
    json ratio = json::array();
    for (unsigned m = 2; m <= t.order; ++m) {
      double main = central_main_term(m, n).get_d();
      double c;
      if constexpr (std::is_same_v<Scalar, ExactRational>) {
        c = to_double(t.central[n - 1][m]);
      } else {
        c = t.central[n - 1][m].to_double();
      }
      ratio.push_back(finite(c / main));
    }
    r["central_ratio"] = ratio;
    rows.push_back(std::move(r));
  }
  return json{{"n_max", t.n_max}, {"order", t.order}, {"mode", t.mode.name()}, {"rows", rows}};
}

template <class Scalar>
json pmf_json(const TruncatedPmf<Scalar>& p, int digits) {
  json rows = json::array();
  for (unsigned m = 1; m <= p.m_max; ++m) {
    rows.push_back(json{{"m", m}, {"p", scalar_json(p.pmf[m - 1], digits)}});
  }
  json out{{"n", p.n}, {"m_max", p.m_max}, {"mode", p.mode.name()}, {"terminal", p.terminal()}};
  out["residual"] = scalar_json(p.residual, digits);
  out["rows"] = rows;
  return out;
}

template <class Scalar>
json recurrence_json(const GenericRecurrenceRun<Scalar>& run, int digits) {
  json rows = json::array();
  for (std::size_t i = 0; i < run.xi.size(); ++i) {
    json r;
    r["n"] = i + 1;
    r["lambda"] = scalar_json(run.lambda[i], digits);
    r["xi"] = scalar_json(run.xi[i], digits);
    r["eta"] = scalar_json(run.eta[i], digits);
    r["delta"] = scalar_json(run.delta[i], digits);
    r["ratio"] = finite(run.ratio[i]);
    r["diff_scaled"] = finite(run.diff_scaled[i]);
    if (!run.trend.empty()) r["trend"] = finite(run.trend[i]);
    rows.push_back(std::move(r));
  }
  json out{{"L", run.L}, {"n0", run.n0}, {"mode", run.mode.name()}};
  out["M"] = scalar_json(run.M, digits);
  out["sup_ratio"] = finite(run.sup_ratio);
  out["sup_diff_scaled"] = finite(run.sup_diff_scaled);
  out["rows"] = rows;
  return out;
}

template json moment_table_json(const MomentTable<ExactRational>&, int);
template json moment_table_json(const MomentTable<BigFloat>&, int);
template json pmf_json(const TruncatedPmf<ExactRational>&, int);
template json pmf_json(const TruncatedPmf<BigFloat>&, int);
template json recurrence_json(const GenericRecurrenceRun<ExactRational>&, int);
template json recurrence_json(const GenericRecurrenceRun<BigFloat>&, int);

json summary_json(const SimSummary& s) {
  json hist = json::array();
  for (auto [x, c] : s.histogram) hist.push_back(json::array({x, c}));
  json sums = json::array();
  for (const auto& p : s.power_sums) sums.push_back(p.get_str(10));
  return json{{"n", s.config.n},
              {"samples", s.config.samples},
              {"seed", s.config.seed},
              {"backend", backend_name(s.config.backend)},
              {"chunk", s.config.chunk},
              {"count", s.count},
              {"min", s.min},
              {"max", s.max},
              {"mean", finite(s.mean())},
              {"power_sums", sums},
              {"stream_seeds", s.stream_seeds},
              {"histogram", hist}};
}

SimSummary summary_from_json(const json& j) {
  SimSummary s;
  s.config.n = j.at("n").get<unsigned>();
  s.config.samples = j.at("samples").get<std::uint64_t>();
  s.config.seed = j.at("seed").get<std::uint64_t>();
  s.config.backend = parse_backend(j.at("backend").get<std::string>());
  s.config.chunk = j.at("chunk").get<std::uint64_t>();
  for (const auto& pair : j.at("histogram")) {
    s.add(pair.at(0).get<std::uint64_t>(), pair.at(1).get<std::uint64_t>());
  }
  s.stream_seeds = j.at("stream_seeds").get<std::vector<std::uint64_t>>();
  return s;
}

json clt_json(const CltReport& r) {
  json m = json::array();
  json target = json::array();
  for (std::size_t k = 0; k < r.moments.m.size(); ++k) {
    m.push_back(finite(r.moments.m[k]));
    target.push_back(r.normal_targets[k]);
  }
  json out{{"n", r.n},
           {"count", r.count},
           {"mean", finite(r.moments.mean)},
           {"variance", finite(r.moments.variance)},
           {"skewness", finite(r.moments.m[3])},
           {"standardized_moments", m},
           {"normal_targets", target},
           {"ks", json{{"statistic", finite(r.ks.statistic)}, {"p_value", finite(r.ks.p_value)}}}};
  if (r.chi_square) {
    out["chi_square"] = json{{"statistic", finite(r.chi_square->statistic)},
                             {"dof", r.chi_square->dof},
                             {"p_value", finite(r.chi_square->p_value)}};
  }
  if (r.tv) out["tv"] = finite(*r.tv);
  if (r.mean_ratio) out["mean_ratio"] = finite(*r.mean_ratio);
  if (r.var_ratio) out["var_ratio"] = finite(*r.var_ratio);
  return out;
}

json error_series_json(const std::vector<ErrorTermSeries>& series) {
  json out = json::array();
  for (const auto& s : series) {
    json pts = json::array();
    for (const auto& p : s.points) {
      pts.push_back(json{{"n", p.n}, {"value", finite(p.eps)}, {"scaled_error", finite(p.scaled_diff)}});
    }
    out.push_back(json{{"m", s.m}, {"sup_scaled_error", finite(s.sup_scaled_diff)}, {"points", pts}});
  }
  return out;
}

}  // namespace blockmerge::io
