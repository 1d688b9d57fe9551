#include <algorithm>
#include <atomic>
#include <functional>
#include <iomanip>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>

#include "blockmerge/identities.hpp"
#include "blockmerge/io/csv.hpp"
#include "blockmerge/moments.hpp"
#include "blockmerge/prob_row.hpp"
#include "blockmerge/sequences.hpp"
#include "blockmerge/weighted_sums.hpp"
#include "commands.hpp"

namespace blockmerge::cli {

namespace {

struct Result {
  Result() = default;
  Result(std::string n, std::string r) : name(std::move(n)), range(std::move(r)) {}

  std::string name;
  std::string range;
  unsigned checked = 0;
  unsigned failed = 0;
  std::optional<unsigned> first_failure;
  std::string note;

  void record(unsigned at, bool ok) {
    ++checked;
    if (ok) return;
    ++failed;
    if (!first_failure) first_failure = at;
  }
};

struct Options {
  unsigned n_max = 200;
  std::string identities = "all";
  unsigned ell_max = 8;
  unsigned gf_max = 50;
  unsigned dobinski_max = 12;
};

std::string span(unsigned lo, unsigned hi) {
  if (lo > hi) return "empty";
  return std::to_string(lo) + ".." + std::to_string(hi);
}

/// Shared lazily built mean table; several checks need mu through n_max + 1.
class MeansCache {
 public:
  explicit MeansCache(unsigned n) : n_(n) {}
  const ExactMeans& get() {
    std::call_once(once_, [&] { means_.emplace(n_); });
    return *means_;
  }

 private:
  unsigned n_;
  std::once_flag once_;
  std::optional<ExactMeans> means_;
};

using Check = std::function<Result(const Options&, MeansCache&)>;

const std::vector<std::pair<std::string, Check>>& registry() {
  static const std::vector<std::pair<std::string, Check>> checks = {
      {"sum_one",
       [](const Options& o, MeansCache&) {
         Result r{"sum_one", span(1, o.n_max)};
         r.note = "sum_k A(n,k) = n! and S_n(n) = 1";
         for (unsigned n = 1; n <= o.n_max; ++n) {
           BigInt total(0);
           for (unsigned k = 1; k <= n; ++k) total += seq::a_nk(n, k);
           const ProbRow row(n);
           r.record(n, total == seq::factorial(n) && row.prefix(n) == 1);
         }
         return r;
       }},
      {"a_closed_form",
       [](const Options& o, MeansCache&) {
         Result r{"a_closed_form", span(0, o.n_max)};
         r.note = "recurrence A(n) against (n+2)!/(n+1) sum (-1)^i/i!";
         for (unsigned n = 0; n <= o.n_max; ++n) r.record(n, a_closed_form(n) == seq::a_number(n));
         return r;
       }},
      {"a_floor",
       [](const Options& o, MeansCache&) {
         Result r{"a_floor", span(1, o.n_max)};
         r.note = "A(n) = floor((n+2) n!/e + 1/2), interval-certified";
         unsigned indeterminate = 0;
         for (unsigned n = 1; n <= o.n_max; ++n) {
           auto c = a_floor_check(n);
           if (c.status == Certification::indeterminate) ++indeterminate;
           r.record(n, c.status == Certification::holds);
         }
         if (indeterminate) r.note += "; " + std::to_string(indeterminate) + " indeterminate";
         return r;
       }},
      {"egf",
       [](const Options& o, MeansCache&) {
         Result r{"egf", span(0, o.n_max)};
         r.note = "[x^n] exp(-x)/(1-x)^2 = A(n)/n!";
         const auto c = egf_coefficients(o.n_max + 1);
         for (unsigned n = 0; n <= o.n_max; ++n) {
           r.record(n, c[n] == make_rational(seq::a_number(n), seq::factorial(n)));
         }
         return r;
       }},
      {"nk_moment",
       [](const Options& o, MeansCache&) {
         Result r{"nk_moment", "ell 0.." + std::to_string(o.ell_max) + ", ell <= n <= " + std::to_string(o.n_max)};
         r.note = "sum_k q_nk (n-k)^ell = B_ell - (B_{ell+1} - B_ell)/n";
         for (unsigned ell = 0; ell <= o.ell_max; ++ell) {
           for (unsigned n = std::max(ell, 1u); n <= o.n_max; ++n) r.record(n, nk_moment_identity(n, ell).holds());
         }
         return r;
       }},
      {"z_gf",
       [](const Options& o, MeansCache&) {
         const unsigned hi = std::min(o.n_max, o.gf_max);
         Result r{"z_gf", span(1, hi)};
         r.note = "polynomial identity for sum_k q_nk z^k";
         for (unsigned n = 1; n <= hi; ++n) r.record(n, z_polynomial_identity(n));
         return r;
       }},
      {"s_gf",
       [](const Options& o, MeansCache&) {
         const unsigned hi = std::min(o.n_max, o.gf_max);
         Result r{"s_gf", span(1, hi)};
         r.note = "polynomial identity for sum_t S_n(t) z^t";
         for (unsigned n = 1; n <= hi; ++n) r.record(n, s_polynomial_identity(n));
         return r;
       }},
      {"s_sums",
       [](const Options& o, MeansCache&) {
         Result r{"s_sums", span(1, o.n_max)};
         r.note = "sum_t S_n(t) t^p for p = 0, -1, -2";
         for (unsigned n = 1; n <= o.n_max; ++n) r.record(n, s_sum_identities(n).holds());
         return r;
       }},
      {"s_bound",
       [](const Options& o, MeansCache&) {
         Result r{"s_bound", span(200, o.n_max)};
         r.note = "0.63 < S_n(n-1) < 0.64 for n >= 200";
         const ExactRational lo(63, 100), hi(16, 25);
         for (unsigned n = 200; n <= o.n_max; ++n) {
           const ExactRational s = s_penultimate(n);
           const bool same = s == 1 - make_rational(seq::a_number(n - 1), seq::factorial(n));
           r.record(n, same && lo < s && s < hi);
         }
         return r;
       }},
      {"tail_sum_bound",
       [](const Options& o, MeansCache&) {
         Result r{"tail_sum_bound", span(200, o.n_max)};
         r.note = "0.49/n^2 < sum_{m=2}^{n-1} (n-m)!/(m n!) < 0.51/n^2 for n >= 200";
         for (unsigned n = 200; n <= o.n_max; ++n) {
           const ExactRational v = factorial_tail_sum(n) * ExactRational(BigInt(n) * n);
           r.record(n, ExactRational(49, 100) < v && v < ExactRational(51, 100));
         }
         return r;
       }},
      {"dobinski",
       [](const Options& o, MeansCache&) {
         Result r{"dobinski", span(0, o.dobinski_max)};
         r.note = "sum_m {l m} = B_l and sum_m m {l m} = B_{l+1} - B_l";
         for (const auto& c : dobinski_identities(o.dobinski_max)) r.record(c.ell, c.holds());
         return r;
       }},
      {"eps_diff",
       [](const Options& o, MeansCache&) {
         const unsigned hi = std::min(o.n_max, 200u);
         Result r{"eps_diff", span(2, hi)};
         r.note = "0 < eps_n - eps_{n+1} < 1/n^2";
         if (hi < 2) return r;
         // the diagnostic reads eps up to n+1 and stops at 200
         const ExactMeans means(hi + 1);
         const auto rep = eps_mean_diagnostics(means);
         for (unsigned n = 2; n <= rep.checked_through; ++n) {
           const ExactRational& d = rep.diffs[n - 1];
           r.record(n, d > 0 && d < make_rational(BigInt(1), BigInt(n) * n));
         }
         return r;
       }},
      {"mean_bounds",
       [](const Options& o, MeansCache& cache) {
         Result r{"mean_bounds", span(2, o.n_max)};
         r.note = "n <= mu_n <= n + sqrt(n) and the mu_n - mu_k gap bounds";
         const ExactMeans& means = cache.get();
         for (unsigned n = 2; n <= o.n_max; ++n) {
           r.record(n, mean_sandwich(n, means.mu(n)) && mu_gap_bounds(n, means));
         }
         return r;
       }},
      {"first_bell",
       [](const Options& o, MeansCache& cache) {
         Result r{"first_bell", span(2, o.n_max)};
         r.note = "sum_k q_nk (mu_n - mu_k) = 1";
         const ExactMeans& means = cache.get();
         for (unsigned n = 2; n <= o.n_max; ++n) r.record(n, first_bell_identity(n, means));
         return r;
       }},
  };
  return checks;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

Runner add_exact(CLI::App& app) {
  auto o = std::make_shared<Options>();
  app.add_option("--n-max", o->n_max, "Largest n")->check(CLI::Range(1u, 5000u))->capture_default_str();
  std::string valid = "all";
  for (const auto& [name, check] : registry()) valid += ", " + name;
  app.add_option("--identities", o->identities, "Comma-separated subset of: " + valid)->capture_default_str();
  app.add_option("--ell-max", o->ell_max, "Largest ell in nk_moment")->check(CLI::Range(0u, 64u))->capture_default_str();
  app.add_option("--gf-max", o->gf_max, "Largest n for the polynomial identities")->capture_default_str();
  app.add_option("--dobinski-max", o->dobinski_max, "Largest ell for dobinski")
      ->check(CLI::Range(0u, 200u))
      ->capture_default_str();

  return [o](Context& ctx) {
    std::vector<std::size_t> selected;
    for (const auto& name : split_names(o->identities)) {
      if (name == "all") {
        selected.clear();
        for (std::size_t i = 0; i < registry().size(); ++i) selected.push_back(i);
        break;
      }
      auto it = std::find_if(registry().begin(), registry().end(), [&](const auto& e) { return e.first == name; });
      if (it == registry().end()) throw UsageError("unknown identity '" + name + "'");
      std::size_t idx = static_cast<std::size_t>(it - registry().begin());
      if (std::find(selected.begin(), selected.end(), idx) == selected.end()) selected.push_back(idx);
    }
    if (selected.empty()) throw UsageError("no identities selected");

    MeansCache means(o->n_max + 1);
    std::vector<Result> results(selected.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr error;
    auto worker = [&] {
      for (std::size_t i = next++; i < selected.size(); i = next++) {
        try {
          results[i] = registry()[selected[i]].second(*o, means);
        } catch (...) {
          std::lock_guard lock(err_mutex);
          if (!error) error = std::current_exception();
        }
      }
    };
    const unsigned threads = std::min<unsigned>(ctx.jobs, static_cast<unsigned>(selected.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    bool all_ok = true;
    io::json rows = io::json::array();
    io::CsvWriter csv;
    csv.row({"identity", "range", "checked", "failed", "first_failure", "status"});
    auto& con = ctx.console();
    con << std::left << std::setw(16) << "identity" << std::setw(30) << "range" << std::setw(9) << "checked"
        << "status\n";
    for (const auto& r : results) {
      const bool ok = r.failed == 0;
      all_ok = all_ok && ok;
      const std::string status = ok ? "pass" : "FAIL";
      io::json row{{"identity", r.name}, {"range", r.range}, {"checked", r.checked}, {"failed", r.failed}};
      row["first_failure"] = r.first_failure ? io::json(*r.first_failure) : io::json(nullptr);
      row["status"] = status;
      row["statement"] = r.note;
      rows.push_back(row);
      csv.row({r.name, r.range, std::to_string(r.checked), std::to_string(r.failed),
               r.first_failure ? std::to_string(*r.first_failure) : "", status});
      con << std::setw(16) << r.name << std::setw(30) << r.range << std::setw(9) << r.checked << status;
      if (r.first_failure) con << " (first at " << *r.first_failure << ")";
      con << "\n";
    }
    ctx.manifest.mode = "exact";
    ctx.emit(io::json{{"n_max", o->n_max}, {"all_passed", all_ok}, {"results", rows}}, csv.str());
    return all_ok ? kOk : kCheckFailed;
  };
}

}  // namespace blockmerge::cli
