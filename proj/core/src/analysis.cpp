#include "parafis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parafis/csv.hpp"

namespace parafis {

std::vector<double> smooth(std::span<const double> scores, int window) {
  if (window < 1) throw ConfigError("smoothing window must be >= 1");
  std::vector<double> out;
  out.reserve(scores.size());
  double running = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    running += scores[i];
    if (i >= static_cast<std::size_t>(window)) {
      running -= scores[i - static_cast<std::size_t>(window)];
      out.push_back(running / window);
    } else {
      out.push_back(running / static_cast<double>(i + 1));
    }
  }
  return out;
}

namespace {

struct LinearSolution {
  double offset = 0.0;
  double amplitude = 0.0;
  double sse = std::numeric_limits<double>::infinity();
};

// Linear sub-problem for fixed tau: basis {1, g(t)} with g = 1 - exp(-t/tau).
LinearSolution solve_given_tau(std::span<const double> y, double tau) {
  const auto n = static_cast<double>(y.size());
  double sg = 0.0, sgg = 0.0, sy = 0.0, sgy = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    const double g = 1.0 - std::exp(-static_cast<double>(t) / tau);
    sg += g;
    sgg += g * g;
    sy += y[t];
    sgy += g * y[t];
  }
  LinearSolution sol;
  const double det = n * sgg - sg * sg;
  if (det > 0.0) {
    sol.amplitude = (n * sgy - sg * sy) / det;
    sol.offset = (sy - sol.amplitude * sg) / n;
  } else {
    sol.amplitude = 0.0;
    sol.offset = sy / n;
  }
  double sse = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    const double g = 1.0 - std::exp(-static_cast<double>(t) / tau);
    const double r = y[t] - sol.offset - sol.amplitude * g;
    sse += r * r;
  }
  sol.sse = sse;
  return sol;
}

}  // namespace

PhaseFit fit_phase(std::span<const double> y) {
  if (y.size() < 10) throw ConfigError("phase must contain at least 10 points");
  for (const double v : y)
    if (!std::isfinite(v)) throw Error("non-finite value in fitted series");

  static constexpr double kGrid[] = {10.0, 30.0, 100.0, 300.0, 1000.0, 3000.0};
  std::size_t best = 0;
  double best_sse = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < std::size(kGrid); ++i) {
    const double sse = solve_given_tau(y, kGrid[i]).sse;
    if (sse < best_sse) {
      best_sse = sse;
      best = i;
    }
  }

  // Golden-section refinement on log(tau) over the bracket around the best
  // grid point; endpoints extend the bracket outward by the grid ratio.
  double lo = best > 0 ? kGrid[best - 1] : kGrid[0] / 3.0;
  double hi = best + 1 < std::size(kGrid) ? kGrid[best + 1] : kGrid[std::size(kGrid) - 1] * 3.0;
  double a = std::log(lo), b = std::log(hi);
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = solve_given_tau(y, std::exp(c)).sse;
  double fd = solve_given_tau(y, std::exp(d)).sse;
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    if (b - a < 1e-12) {
      converged = true;
      break;
    }
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = solve_given_tau(y, std::exp(c)).sse;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = solve_given_tau(y, std::exp(d)).sse;
    }
  }

  const double tau = std::exp((a + b) / 2.0);
  const LinearSolution sol = solve_given_tau(y, tau);

  PhaseFit fit;
  fit.amplitude = sol.amplitude;
  fit.offset = sol.offset;
  fit.tau = tau;
  fit.residual_rms = std::sqrt(sol.sse / static_cast<double>(y.size()));
  fit.converged = converged;

  double scale = 0.0;
  for (const double v : y) scale = std::max(scale, std::abs(v));
  if (std::abs(fit.amplitude) <= 1e-9 * std::max(scale, 1e-300)) {
    fit.tau = std::numeric_limits<double>::quiet_NaN();
    fit.tau_identifiable = false;
  }
  return fit;
}

std::array<std::span<const double>, 3> split_phases(std::span<const double> series,
                                                    std::int64_t t1, std::int64_t t2) {
  const auto len = static_cast<std::int64_t>(series.size());
  if (!(0 <= t1 && t1 <= t2 && t2 <= len))
    throw ConfigError("phase boundaries must satisfy 0 <= t1 <= t2 <= series length");
  return {series.subspan(0, static_cast<std::size_t>(t1)),
          series.subspan(static_cast<std::size_t>(t1), static_cast<std::size_t>(t2 - t1)),
          series.subspan(static_cast<std::size_t>(t2))};
}

void write_fits_csv(std::ostream& out, const std::vector<ConfigSummary>& summaries) {
  out << "config,phase,S_plus_smin,tau,residual\n";
  for (const ConfigSummary& s : summaries)
    for (std::size_t i = 0; i < s.phase_fits.size(); ++i) {
      const PhaseFit& f = s.phase_fits[i];
      out << s.config << ',' << s.phase_labels[i] << ',' << format_double(f.steady_state()) << ','
          << format_double(f.tau) << ',' << format_double(f.residual_rms) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<ConfigSummary>& summaries) {
  out << "config,mean_acc\n";
  for (const ConfigSummary& s : summaries)
    out << s.config << ',' << format_double(s.mean_accuracy) << '\n';
}

}  // namespace parafis
