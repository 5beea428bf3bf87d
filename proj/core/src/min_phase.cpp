#include "ddcap/min_phase.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddcap/error.hpp"
#include "fft.hpp"

namespace ddcap {
namespace {

double peak(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

std::vector<double> clamped_log_magnitude(std::span<const double> intensity, double floor) {
  std::vector<double> out;
  out.reserve(intensity.size());
  for (double v : intensity) out.push_back(0.5 * std::log(std::max(v, floor)));
  return out;
}

// Minimum-phase field from log|E| on an L-point grid, projected onto the
// first M Fourier coefficients.
ComplexVector project_min_phase(std::span<const double> log_mag, std::size_t M) {
  // E(t) = A(exp(-i Omega t)) with A zero-free in the unit disc puts log E on
  // harmonics n <= 0 of exp(i n 2 pi j / L), which gives phi = -H[log|E|].
  const auto hilbert = periodic_hilbert(log_mag);
  ComplexVector field(log_mag.size());
  for (std::size_t j = 0; j < field.size(); ++j) {
    field[j] = std::exp(Complex(log_mag[j], -hilbert[j]));
  }
  auto spectrum = detail::dft(field, detail::FftSign::positive);
  const double scale = 1.0 / static_cast<double>(field.size());
  ComplexVector coeffs(spectrum.begin(), spectrum.begin() + static_cast<std::ptrdiff_t>(M));
  for (auto& c : coeffs) c *= scale;
  return coeffs;
}

double relative_change(std::span<const Complex> a, std::span<const Complex> b) {
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    diff += std::norm(a[k] - b[k]);
    norm += std::norm(b[k]);
  }
  return norm == 0.0 ? std::sqrt(diff) : std::sqrt(diff / norm);
}

}  // namespace

LogMagnitudeSeries log_magnitude(const SampledIntensity& intensity, double relative_floor) {
  LogMagnitudeSeries out;
  out.grid_rate = intensity.rate;
  out.floor = relative_floor * peak(intensity.values);
  out.values = clamped_log_magnitude(intensity.values, out.floor);
  return out;
}

std::vector<double> periodic_hilbert(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n == 0 || n % 2 != 0) {
    throw InputError("periodic Hilbert transform needs an even, nonempty series (got " +
                     std::to_string(n) + ")");
  }
  ComplexVector values(series.begin(), series.end());
  auto harmonics = detail::dft(values, detail::FftSign::negative);
  const std::size_t half = n / 2;
  harmonics[0] = 0.0;
  harmonics[half] = 0.0;
  for (std::size_t k = 1; k < half; ++k) {
    harmonics[k] *= Complex(0.0, -1.0);
    harmonics[n - k] *= Complex(0.0, 1.0);
  }
  const auto back = detail::dft(harmonics, detail::FftSign::positive);
  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = back[j].real() * scale;
  return out;
}

std::vector<double> periodic_hilbert(const LogMagnitudeSeries& series) {
  return periodic_hilbert(series.values);
}

MinPhaseResult min_phase_from_intensity(const SampledIntensity& intensity, std::size_t M,
                                        const MinPhaseOptions& options) {
  const std::size_t n = intensity.values.size();
  if (M == 0) throw InputError("M must be positive");
  if (n < 4 * M) {
    throw InputError("minimum-phase reconstruction needs at least 4M = " + std::to_string(4 * M) +
                     " intensity samples per period, got " + std::to_string(n));
  }
  if (!(intensity.rate > 0.0)) throw InputError("intensity rate must be positive");
  for (double v : intensity.values) {
    if (!std::isfinite(v)) throw InputError("intensity values must be finite");
  }
  const double bandwidth = static_cast<double>(M) * intensity.rate / static_cast<double>(n);

  const double top = peak(intensity.values);
  if (top <= 0.0) throw DomainError("intensity is identically zero");
  const double floor = options.relative_floor * top;
  double lowest = top;
  for (double v : intensity.values) lowest = std::min(lowest, std::max(v, floor));
  const bool regularized =
      std::any_of(intensity.values.begin(), intensity.values.end(), [&](double v) { return v < floor; });
  const double tolerance =
      std::min(options.tolerance * std::sqrt(top / lowest), kMinPhaseToleranceCap);

  const int max_harmonic = static_cast<int>(M) - 1;
  std::size_t grid = kLogGridOversample * M;
  ComplexVector coeffs;
  while (true) {
    const auto fine = resample_intensity(intensity, grid, max_harmonic);
    const auto log_mag = clamped_log_magnitude(fine, floor);
    auto next = project_min_phase(log_mag, M);
    const bool settled = !coeffs.empty() && relative_change(next, coeffs) < 1e-13;
    coeffs = std::move(next);
    if (settled || 2 * grid > options.max_grid) break;
    grid *= 2;
  }

  const SpectralPoly spec(bandwidth, coeffs);
  if (spec.effective_degree() < 0) throw DomainError("reconstruction collapsed to zero");
  MinPhaseResult result{canonicalize_phase(spectrum_to_samples(spec)), regularized, 0.0, tolerance,
                        grid};

  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) / intensity.rate;
    worst = std::max(worst, std::abs(std::norm(evaluate_field(spec, t)) - intensity.values[j]));
  }
  result.residual = worst / top;
  if (!regularized && result.residual > 100.0 * tolerance) {
    throw DomainError("intensity not realizable within bandwidth: residual " +
                      std::to_string(result.residual) + " exceeds " +
                      std::to_string(100.0 * tolerance));
  }
  return result;
}

}  // namespace ddcap
