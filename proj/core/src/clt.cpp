#include "blockmerge/clt.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace blockmerge {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_density(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2 * std::numbers::pi); }

double kolmogorov_pvalue(double d, std::uint64_t count) {
  const double rn = std::sqrt(static_cast<double>(count));
  const double lambda = (rn + 0.12 + 0.11 / rn) * d;
  if (lambda <= 0) return 1;
  if (lambda < 1.18) {
    // Jacobi form, fast for small lambda.
    const double c = std::numbers::pi * std::numbers::pi / (8 * lambda * lambda);
    double sum = 0;
    for (int k = 1; k <= 50; k += 2) sum += std::exp(-c * k * k);
    return std::clamp(1 - std::sqrt(2 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2 * sum, 0.0, 1.0);
}

double chi_square_pvalue(double stat, unsigned dof) {
  if (dof == 0) return 1;
  if (stat <= 0) return 1;
  return boost::math::gamma_q(0.5 * dof, 0.5 * stat);
}

StandardizedMoments standardized_moments(const SimSummary& s) {
  if (s.count == 0) throw std::invalid_argument("empty sample");
  StandardizedMoments out;
  const long double total = static_cast<long double>(s.count);
  long double mean = 0;
  for (const auto& [x, c] : s.histogram) mean += static_cast<long double>(x) * c;
  mean /= total;
  std::array<long double, 9> central{};
  for (const auto& [x, c] : s.histogram) {
    const long double d = static_cast<long double>(x) - mean;
    long double p = c;
    for (unsigned k = 0; k <= 8; ++k) {
      central[k] += p;
      p *= d;
    }
  }
  for (auto& v : central) v /= total;
  if (central[2] <= 0) throw std::invalid_argument("zero-variance sample");
  const long double sd = std::sqrt(central[2]);
  out.mean = static_cast<double>(mean);
  out.variance = static_cast<double>(central[2]);
  long double scale = 1;
  for (unsigned k = 0; k <= 8; ++k) {
    out.m[k] = static_cast<double>(central[k] / scale);
    scale *= sd;
  }
  return out;
}

KsResult ks_normal(const SimSummary& s) {
  const StandardizedMoments mom = standardized_moments(s);
  const double sd = std::sqrt(mom.variance);
  const double total = static_cast<double>(s.count);
  double below = 0;
  double d = 0;
  for (const auto& [x, c] : s.histogram) {
    const double phi = normal_cdf((static_cast<double>(x) - mom.mean) / sd);
    const double before = below / total;
    below += static_cast<double>(c);
    const double after = below / total;
    d = std::max({d, std::fabs(before - phi), std::fabs(after - phi)});
  }
  return {d, kolmogorov_pvalue(d, s.count)};
}

PmfView pmf_view(const TruncatedPmf<ExactRational>& pmf) {
  PmfView out;
  out.pmf.reserve(pmf.pmf.size());
  for (const auto& p : pmf.pmf) out.pmf.push_back(to_double(p));
  out.residual = to_double(pmf.residual);
  return out;
}

namespace {

// Groups consecutive cells so each carries at least `min` of `weight`; a short
// final group is folded into its predecessor.
template <class Cell, class Weight>
std::vector<Cell> pool(const std::vector<Cell>& cells, double min, Weight weight) {
  std::vector<Cell> out;
  Cell acc{};
  bool open = false;
  for (const auto& c : cells) {
    acc += c;
    open = true;
    if (weight(acc) >= min) {
      out.push_back(acc);
      acc = Cell{};
      open = false;
    }
  }
  if (open) {
    if (out.empty()) {
      out.push_back(acc);
    } else {
      out.back() += acc;
    }
  }
  return out;
}

struct FitCell {
  double observed = 0;
  double expected = 0;
  FitCell& operator+=(const FitCell& o) {
    observed += o.observed;
    expected += o.expected;
    return *this;
  }
};

struct PairCell {
  double a = 0;
  double b = 0;
  PairCell& operator+=(const PairCell& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
};

}  // namespace

ChiSquareResult chi_square_vs_pmf(const SimSummary& s, const PmfView& pmf, double min_expected) {
  const double total = static_cast<double>(s.count);
  const std::size_t m_max = pmf.pmf.size();
  std::vector<FitCell> cells(m_max + 1);
  for (std::size_t m = 1; m <= m_max; ++m) cells[m - 1].expected = pmf.pmf[m - 1] * total;
  cells[m_max].expected = pmf.residual * total;
  for (const auto& [x, c] : s.histogram) {
    if (x >= 1 && x <= m_max) {
      cells[x - 1].observed += static_cast<double>(c);
    } else if (x > m_max) {
      cells[m_max].observed += static_cast<double>(c);
    } else {
      throw std::invalid_argument("sample value 0 has zero probability for n >= 2");
    }
  }
  const auto pooled = pool(cells, min_expected, [](const FitCell& c) { return c.expected; });
  ChiSquareResult out;
  for (const auto& c : pooled) {
    if (c.expected > 0) {
      out.statistic += (c.observed - c.expected) * (c.observed - c.expected) / c.expected;
    } else if (c.observed > 0) {
      out.statistic = INFINITY;
    }
  }
  out.dof = pooled.size() > 1 ? static_cast<unsigned>(pooled.size() - 1) : 0;
  out.p_value = chi_square_pvalue(out.statistic, out.dof);
  return out;
}

ChiSquareResult chi_square_two_sample(const SimSummary& a, const SimSummary& b, double min_count) {
  if (a.count == 0 || b.count == 0) throw std::invalid_argument("two-sample test needs two nonempty samples");
  std::map<std::uint64_t, PairCell> joint;
  for (const auto& [x, c] : a.histogram) joint[x].a += static_cast<double>(c);
  for (const auto& [x, c] : b.histogram) joint[x].b += static_cast<double>(c);
  std::vector<PairCell> cells;
  cells.reserve(joint.size());
  for (const auto& [x, c] : joint) cells.push_back(c);
  const auto pooled = pool(cells, min_count, [](const PairCell& c) { return c.a + c.b; });

  const double n1 = static_cast<double>(a.count);
  const double n2 = static_cast<double>(b.count);
  const double k1 = std::sqrt(n2 / n1);
  const double k2 = std::sqrt(n1 / n2);
  ChiSquareResult out;
  for (const auto& c : pooled) {
    const double diff = k1 * c.a - k2 * c.b;
    out.statistic += diff * diff / (c.a + c.b);
  }
  out.dof = pooled.size() > 1 ? static_cast<unsigned>(pooled.size() - 1) : 0;
  out.p_value = chi_square_pvalue(out.statistic, out.dof);
  return out;
}

double tv_distance(const SimSummary& s, const PmfView& pmf) {
  const double total = static_cast<double>(s.count);
  const std::size_t m_max = pmf.pmf.size();
  std::vector<double> observed(m_max + 1, 0);
  double beyond = 0;
  for (const auto& [x, c] : s.histogram) {
    if (x <= m_max) {
      observed[x] += static_cast<double>(c) / total;
    } else {
      beyond += static_cast<double>(c) / total;
    }
  }
  double sum = observed[0];  // P(X_n = 0) = 0 for n >= 2
  for (std::size_t m = 1; m <= m_max; ++m) sum += std::fabs(observed[m] - pmf.pmf[m - 1]);
  sum += beyond + pmf.residual;
  return 0.5 * sum;
}

CltReport clt_report(const SimSummary& s, std::optional<double> mu_hint, std::optional<double> var_hint,
                     const PmfView* pmf) {
  CltReport out;
  out.n = s.config.n;
  out.count = s.count;
  out.moments = standardized_moments(s);
  double df = 1;
  for (unsigned k = 0; k <= 8; ++k) {
    if (k % 2 == 0) {
      out.normal_targets[k] = df;
      df *= k + 1;
    } else {
      out.normal_targets[k] = 0;
    }
  }
  out.ks = ks_normal(s);
  const double n = static_cast<double>(s.config.n);
  const double mu = mu_hint.value_or(n);
  const double var = var_hint.value_or(n);
  if (mu != 0) out.mean_ratio = out.moments.mean / mu;
  if (var != 0) out.var_ratio = out.moments.variance / var;
  if (pmf != nullptr) {
    out.chi_square = chi_square_vs_pmf(s, *pmf);
    out.tv = tv_distance(s, *pmf);
  }
  return out;
}

std::vector<PlotRow> plot_data(const SimSummary& s) {
  const StandardizedMoments mom = standardized_moments(s);
  const double sd = std::sqrt(mom.variance);
  const double total = static_cast<double>(s.count);
  std::vector<PlotRow> out;
  out.reserve(s.histogram.size());
  for (const auto& [x, c] : s.histogram) {
    PlotRow r;
    r.x = x;
    r.count = c;
    r.z_lo = (static_cast<double>(x) - 0.5 - mom.mean) / sd;
    r.z_hi = (static_cast<double>(x) + 0.5 - mom.mean) / sd;
    r.density = static_cast<double>(c) / total * sd;
    r.normal = normal_density((static_cast<double>(x) - mom.mean) / sd);
    out.push_back(r);
  }
  return out;
}

}  // namespace blockmerge
