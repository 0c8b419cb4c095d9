#include "allee/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "allee/errors.hpp"

namespace allee {

namespace {

double pearson_at_lag(const std::vector<double>& x, std::size_t lag) {
  const std::size_t n = x.size() - lag;
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += x[i];
    mb += x[i + lag];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = x[i] - ma, b = x[i + lag] - mb;
    sab += a * b;
    saa += a * a;
    sbb += b * b;
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

std::optional<AutocorrelationPeak> autocorrelation_peak(const std::vector<double>& series, double sample_dt) {
  const std::size_t n = series.size();
  if (n < 8) return std::nullopt;
  const std::size_t max_lag = n / 3;
  std::vector<double> ac(max_lag + 1);
  for (std::size_t l = 0; l <= max_lag; ++l) ac[l] = pearson_at_lag(series, l);
  std::size_t zero = 1;
  while (zero <= max_lag && ac[zero] > 0.0) ++zero;
  if (zero > max_lag) return std::nullopt;
  std::vector<AutocorrelationPeak> peaks;
  for (std::size_t l = zero + 1; l < max_lag; ++l) {
    if (!(ac[l] >= ac[l - 1] && ac[l] > ac[l + 1])) continue;
    const double a = ac[l - 1], b = ac[l], c = ac[l + 1];
    const double den = a - 2 * b + c;
    const double off = den != 0.0 ? 0.5 * (a - c) / den : 0.0;
    peaks.push_back({(l + off) * sample_dt, b - 0.25 * (a - c) * off});
  }
  if (peaks.empty()) return std::nullopt;
  double best = -1.0;
  for (const auto& pk : peaks) best = std::max(best, pk.value);
  // Smallest lag whose decorrelation is comparable to the best one. A period-doubled signal has
  // its odd multiples of the half period visibly less correlated than the even ones.
  for (const auto& pk : peaks)
    if (1.0 - pk.value <= 3.0 * (1.0 - best) + 1e-6) return pk;
  return peaks.front();
}

std::optional<double> dominant_period(const std::vector<double>& times, const std::vector<double>& series,
                                      double window) {
  if (times.size() != series.size() || times.size() < 8) fail(ErrorCode::InvalidArgument, "series too short");
  const double t_end = times.back();
  const auto first = std::lower_bound(times.begin(), times.end(), t_end - window) - times.begin();
  std::vector<double> tail(series.begin() + first, series.end());
  if (tail.size() < 8) return std::nullopt;
  const double dt = (times.back() - times[first]) / (tail.size() - 1);
  const auto peak = autocorrelation_peak(tail, dt);
  if (!peak || peak->value < 0.9) return std::nullopt;
  return peak->lag;
}

int island_count(const Field& f, double threshold) {
  if (!(threshold > 0.0)) fail(ErrorCode::InvalidArgument, "island threshold must be positive");
  int count = 0;
  bool inside = false;
  for (double u : f.u) {
    const bool on = u > threshold;
    if (on && !inside) ++count;
    inside = on;
  }
  return count;
}

LyapunovResult largest_lyapunov(Field f, const Simulator& sim, const LyapunovOptions& opt) {
  if (!(opt.renorm_interval > 0.0) || !(opt.duration > 0.0))
    fail(ErrorCode::InvalidArgument, "duration and renormalisation interval must be positive");
  const double dt = sim.dt();
  const long per = std::max(1L, std::lround(opt.renorm_interval / dt));
  const long transient_steps = std::lround(opt.transient / dt);
  for (long s = 0; s < transient_steps; ++s) sim.advance(f);

  const std::size_t n = f.u.size();
  std::vector<double> du(n), dv(n);
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    du[i] = g(rng);
    dv[i] = g(rng);
  }
  auto normalize = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += du[i] * du[i] + dv[i] * dv[i];
    const double norm = std::sqrt(s);
    for (std::size_t i = 0; i < n; ++i) {
      du[i] /= norm;
      dv[i] /= norm;
    }
    return norm;
  };
  normalize();

  LyapunovResult res;
  res.renorm_interval = per * dt;
  const long intervals = std::max(10L, std::lround(opt.duration / res.renorm_interval));
  const long skip = intervals / 10;
  double sum = 0.0;
  long used = 0;
  for (long k = 0; k < intervals; ++k) {
    for (long s = 0; s < per; ++s) sim.advance_tangent(f, du, dv);
    const double growth = normalize();
    if (!std::isfinite(growth) || growth == 0.0) fail(ErrorCode::NonFinite, "tangent vector degenerated");
    res.times.push_back(f.t);
    if (k >= skip) {
      sum += std::log(growth);
      ++used;
      res.running.push_back(sum / (used * res.renorm_interval));
    } else {
      res.running.push_back(NAN);
    }
  }
  res.lambda_max = sum / (used * res.renorm_interval);

  // settled when the last quarter of the running estimate varies by less than 20% of its mean
  const std::size_t q = res.running.size() - res.running.size() / 4;
  double m = 0.0, v = 0.0;
  const double cnt = static_cast<double>(res.running.size() - q);
  for (std::size_t i = q; i < res.running.size(); ++i) m += res.running[i];
  m /= cnt;
  for (std::size_t i = q; i < res.running.size(); ++i) v += (res.running[i] - m) * (res.running[i] - m);
  res.settled = std::sqrt(v / cnt) < 0.2 * std::abs(m);
  if (opt.require_settled && !res.settled) fail(ErrorCode::NotConverged, "running Lyapunov estimate has not settled");
  return res;
}

}  // namespace allee
