#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "allee/pde.hpp"

namespace allee {

struct AutocorrelationPeak {
  double lag = 0.0;
  double value = 0.0;
};

// Autocorrelation peak (Pearson correlation per lag, lags up to a third of the series) at the
// fundamental period: the smallest lag whose peak is about as tall as the tallest, so sub-periods
// of a period-doubled signal are skipped. Empty when the series never decorrelates.
std::optional<AutocorrelationPeak> autocorrelation_peak(const std::vector<double>& series, double sample_dt);

// Period of `series` over the last `window` time units of a uniformly sampled record;
// empty when the autocorrelation peak is below 0.9.
std::optional<double> dominant_period(const std::vector<double>& times, const std::vector<double>& series,
                                      double window);

// Number of maximal runs of nodes with u > threshold.
int island_count(const Field& f, double threshold);

struct LyapunovOptions {
  double duration = 1000.0;  // averaging time after the transient
  double transient = 0.0;
  double renorm_interval = 1.0;
  std::uint64_t seed = 1;
  bool require_settled = true;
};

struct LyapunovResult {
  double lambda_max = 0.0;
  std::vector<double> times;    // end of each renormalisation interval
  std::vector<double> running;  // running estimate, NaN during the discarded prefix
  double renorm_interval = 1.0;
  bool settled = false;
};

// Benettin estimate with tangent propagation through the simulator's linearised step.
LyapunovResult largest_lyapunov(Field f0, const Simulator& sim, const LyapunovOptions& opt);

}  // namespace allee
