#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "blockmerge/distribution.hpp"
#include "blockmerge/simulator.hpp"

namespace blockmerge {

/// Standard normal CDF through erfc.
double normal_cdf(double z);
double normal_density(double z);

/// Asymptotic Kolmogorov tail P(K > lambda) with the Stephens small-sample
/// correction lambda = (sqrt(N) + 0.12 + 0.11/sqrt(N)) d.
double kolmogorov_pvalue(double d, std::uint64_t count);

/// P(chi2_dof > stat).
double chi_square_pvalue(double stat, unsigned dof);

struct KsResult {
  double statistic = 0;
  double p_value = 1;
};

struct ChiSquareResult {
  double statistic = 0;
  unsigned dof = 0;
  double p_value = 1;
};

/// Sample moments about the sample mean, scaled by the population sd.
struct StandardizedMoments {
  double mean = 0;
  double variance = 0;
  /// m[k] for k = 0..8; m[0] = 1, m[1] = 0, m[2] = 1 up to rounding.
  std::array<double, 9> m{};
};

/// Throws std::invalid_argument on an empty or zero-variance sample.
StandardizedMoments standardized_moments(const SimSummary& s);

/// sup |F_n - Phi| of the standardized sample, checked on both sides of
/// every jump of the empirical CDF.
KsResult ks_normal(const SimSummary& s);

/// P(X_n = m) as doubles for m = 1..m_max plus the mass beyond.
struct PmfView {
  std::vector<double> pmf;
  double residual = 0;
};
PmfView pmf_view(const TruncatedPmf<ExactRational>& pmf);

/// Pearson goodness of fit against the exact law; adjacent bins are pooled
/// until each expects at least `min_expected` observations. The mass beyond
/// m_max is its own bin.
ChiSquareResult chi_square_vs_pmf(const SimSummary& s, const PmfView& pmf, double min_expected = 5);

/// Two-sample chi-square for unequal totals,
/// sum (sqrt(N2/N1) a - sqrt(N1/N2) b)^2 / (a + b), pooling adjacent values
/// until a + b >= min_count.
ChiSquareResult chi_square_two_sample(const SimSummary& a, const SimSummary& b, double min_count = 10);

/// Total variation between the empirical law and the pmf. Mass beyond m_max
/// is charged in full (the split of that bin is unknown), so this is an upper
/// bound when residual > 0.
double tv_distance(const SimSummary& s, const PmfView& pmf);

struct CltReport {
  unsigned n = 0;
  std::uint64_t count = 0;
  StandardizedMoments moments;
  /// (k-1)!! for even k, 0 for odd.
  std::array<double, 9> normal_targets{};
  KsResult ks;
  std::optional<ChiSquareResult> chi_square;
  std::optional<double> tv;
  /// mean / mu_hint and variance / var_hint.
  std::optional<double> mean_ratio;
  std::optional<double> var_ratio;
};

/// Hints default to the asymptotic pair (n, n) when not given. The pmf, when
/// supplied, adds the chi-square and total-variation comparisons.
CltReport clt_report(const SimSummary& s, std::optional<double> mu_hint = std::nullopt,
                     std::optional<double> var_hint = std::nullopt, const PmfView* pmf = nullptr);

struct PlotRow {
  std::uint64_t x = 0;
  std::uint64_t count = 0;
  /// Standardized cell [x - 1/2, x + 1/2].
  double z_lo = 0;
  double z_hi = 0;
  /// Empirical density on the z scale, and phi at the cell centre.
  double density = 0;
  double normal = 0;
};

std::vector<PlotRow> plot_data(const SimSummary& s);

}  // namespace blockmerge
