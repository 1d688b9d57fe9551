#include <iomanip>
#include <memory>

#include "blockmerge/distribution.hpp"
#include "blockmerge/io/csv.hpp"
#include "commands.hpp"
#include "render.hpp"

namespace blockmerge::cli {

namespace {

struct Options {
  unsigned n = 2;
  std::string m_max = "auto";
  std::string mode = "auto";
  unsigned moments = 0;
};

/// Float mode has no cheap exact residual; grow m_max until the computed
/// residual drops under 1e-30.
unsigned float_auto_m_max(unsigned n, mpfr_prec_t bits) {
  const BigFloat target(1e-30, bits);
  for (unsigned m = 64;; m *= 2) {
    auto p = float_pmf(n, m, bits);
    if (p.residual < target) {
      // bisect back to the smallest m
      unsigned lo = m / 2, hi = m;
      while (hi - lo > 1) {
        unsigned mid = (lo + hi) / 2;
        if (float_pmf(n, mid, bits).residual < target) hi = mid; else lo = mid;
      }
      return hi;
    }
    if (m > (1u << 24)) throw UsageError("auto m_max did not converge");
  }
}

template <class Scalar>
void write(Context& ctx, const TruncatedPmf<Scalar>& p, io::json doc) {
  io::json base = io::pmf_json(p, ctx.digits);
  for (auto it = base.begin(); it != base.end(); ++it) doc[it.key()] = it.value();
  io::CsvWriter csv;
  csv.row({"m", "p", "survival"});
  Scalar tail = p.residual;
  std::vector<Scalar> surv(p.m_max, tail);
  for (unsigned m = p.m_max; m >= 1; --m) {
    surv[m - 1] = tail;
    tail += p.pmf[m - 1];
  }
  for (unsigned m = 1; m <= p.m_max; ++m) {
    csv.row({std::to_string(m), io::decimal(p.pmf[m - 1], ctx.digits), io::decimal(surv[m - 1], ctx.digits)});
  }
  ctx.manifest.mode = p.mode.name();
  ctx.emit(doc, csv.str());

  auto& con = ctx.console();
  con << "n " << p.n << ", m_max " << p.m_max << ", mode " << p.mode.name() << "\n";
  if (p.terminal()) con << "terminal: X_1 = 0 with probability 1\n";
  const unsigned show = std::min(p.m_max, 12u);
  for (unsigned m = 1; m <= show; ++m) {
    con << std::left << std::setw(6) << m << io::decimal(p.pmf[m - 1], 12) << "\n";
  }
  if (show < p.m_max) con << "...\n";
  con << "residual " << io::decimal(p.residual, 6) << "\n";
}

}  // namespace

Runner add_pmf(CLI::App& app) {
  auto o = std::make_shared<Options>();
  app.add_option("--n", o->n, "Deck size")->required()->check(CLI::Range(1u, 2000u));
  app.add_option("--m-max", o->m_max, "Largest step count, or auto")->capture_default_str();
  app.add_option("--mode", o->mode, "exact, bigfloat(<bits>) or auto")->capture_default_str();
  app.add_option("--moments", o->moments, "Bracket E[X^j] for j <= this (exact mode)")
      ->check(CLI::Range(0u, 16u))
      ->capture_default_str();

  return [o](Context& ctx) {
    const Mode mode = resolve_mode(o->mode, o->n);
    unsigned m_max = 0;
    if (o->m_max != "auto") {
      try {
        std::size_t used = 0;
        long v = std::stol(o->m_max, &used);
        if (used != o->m_max.size() || v < 1 || v > 100000) throw std::invalid_argument("range");
        m_max = static_cast<unsigned>(v);
      } catch (const std::exception&) {
        throw UsageError("--m-max must be a positive integer or auto");
      }
    }

    if (!mode.is_exact()) {
      if (o->moments) throw UsageError("--moments needs exact mode");
      if (!m_max) m_max = o->n == 1 ? 1 : float_auto_m_max(o->n, mode.bits);
      write(ctx, float_pmf(o->n, m_max, mode.bits), io::json::object());
      return kOk;
    }

    if (!m_max) m_max = o->n == 1 ? 1 : auto_m_max(o->n);
    const auto p = exact_pmf(o->n, m_max);
    io::json doc = io::json::object();
    bool ok = true;
    if (!p.terminal()) {
      // the occupation-law tail is computed independently of the step DP
      const bool tail_ok = survival_mass(o->n, m_max) == p.residual;
      const ExactRational bound = tail_bound(o->n, m_max);
      const bool bound_ok = p.residual <= bound;
      doc["checks"] = io::json{{"residual_matches_survival", tail_ok}, {"residual_below_bound", bound_ok}};
      doc["tail_bound"] = io::to_json(bound);
      ok = tail_ok && bound_ok;
    }
    if (o->moments) {
      if (p.terminal()) throw UsageError("--moments is meaningless for n = 1");
      const auto iv = pmf_moments(p, o->moments);
      io::json arr = io::json::array();
      for (unsigned j = 0; j < iv.size(); ++j) {
        arr.push_back(io::json{{"j", j},
                               {"lower", io::to_json(iv[j].lower)},
                               {"upper", io::to_json(iv[j].upper)},
                               {"lower_decimal", io::decimal(iv[j].lower, ctx.digits)},
                               {"upper_decimal", io::decimal(iv[j].upper, ctx.digits)}});
      }
      doc["moment_intervals"] = arr;
    }
    write(ctx, p, doc);
    if (!ok) ctx.console() << "tail check FAILED\n";
    return ok ? kOk : kCheckFailed;
  };
}

}  // namespace blockmerge::cli
