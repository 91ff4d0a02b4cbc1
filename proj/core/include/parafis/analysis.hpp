#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "parafis/types.hpp"

namespace parafis {

// Trailing-window mean of width `window`; the first window-1 entries average
// the available prefix.
std::vector<double> smooth(std::span<const double> scores, int window);

// Least-squares fit of y(t) = offset + amplitude * (1 - exp(-t / tau)) with
// t counted from the start of the slice. For a fixed tau the problem is
// linear in (offset, amplitude); tau is found on a log grid refined by
// golden-section search. The linear parameters are never clamped. When the
// curve is flat the amplitude is ~0 and tau is unidentifiable: it comes back
// as NaN with tau_identifiable = false.
struct PhaseFit {
  double amplitude = 0.0;  // S
  double offset = 0.0;     // s_min
  double tau = 0.0;
  double residual_rms = 0.0;
  bool tau_identifiable = true;
  bool converged = true;

  double steady_state() const { return amplitude + offset; }
};

// Needs at least 10 points.
PhaseFit fit_phase(std::span<const double> y);

// Slices a per-step series at the phase boundaries [0,t1), [t1,t2), [t2,end).
std::array<std::span<const double>, 3> split_phases(std::span<const double> series,
                                                    std::int64_t t1, std::int64_t t2);

struct ConfigSummary {
  std::string config;
  std::vector<char> phase_labels;   // subset of {'A','B','C'}, in order
  std::vector<PhaseFit> phase_fits; // parallel to phase_labels
  double mean_accuracy = 0.0;
};

// CSV: config,phase,S_plus_smin,tau,residual (tau prints nan when the phase
// is flat).
void write_fits_csv(std::ostream& out, const std::vector<ConfigSummary>& summaries);

// CSV: config,mean_acc.
void write_summary_csv(std::ostream& out, const std::vector<ConfigSummary>& summaries);

}  // namespace parafis
