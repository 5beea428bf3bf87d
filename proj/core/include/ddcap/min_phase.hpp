#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ddcap/signal.hpp"

namespace ddcap {

// Intensity values below this fraction of the peak are clamped before the log.
inline constexpr double kIntensityFloor = 1e-12;
inline constexpr double kMinPhaseTolerance = 1e-6;
inline constexpr double kMinPhaseToleranceCap = 1e-2;
// Starting oversampling of the log-magnitude grid relative to B.
inline constexpr std::size_t kLogGridOversample = 8;

// log sqrt(I) on a uniform grid over one period.
struct LogMagnitudeSeries {
  double grid_rate = 0.0;
  std::vector<double> values;
  double floor = 0.0;  // absolute intensity floor that was applied
};

LogMagnitudeSeries log_magnitude(const SampledIntensity& intensity,
                                 double relative_floor = kIntensityFloor);

// Circular Hilbert transform: harmonic n of the input is multiplied by
// -i sgn(n), with the DC and Nyquist bins zeroed, so cos -> sin. Throws
// InputError on odd or empty input.
std::vector<double> periodic_hilbert(std::span<const double> series);
std::vector<double> periodic_hilbert(const LogMagnitudeSeries& series);

struct MinPhaseOptions {
  double tolerance = kMinPhaseTolerance;
  double relative_floor = kIntensityFloor;
  // The log-magnitude grid starts at kLogGridOversample * M points and doubles
  // until the projected coefficients settle or this many points are used.
  std::size_t max_grid = std::size_t{1} << 18;
};

struct MinPhaseResult {
  PeriodicSignal signal;
  bool regularized = false;  // intensity floor was hit; residual reports the damage
  double residual = 0.0;     // max |I_result - I| / max I on the input grid
  double tolerance = 0.0;    // adapted tolerance the residual was held to
  std::size_t grid_points = 0;
};

// Minimum-phase waveform with M Fourier coefficients whose intensity is I:
// sqrt(I) exp(i phi) with phi taken from the Hilbert transform of log sqrt(I),
// projected onto harmonics 0..M-1 and phase-canonicalized. I must cover one
// period at rate >= 4B, i.e. at least 4M samples.
//
// The tolerance is widened by sqrt(max I / min clamped I), capped at
// kMinPhaseToleranceCap. Throws DomainError("intensity not realizable within
// bandwidth") when the residual exceeds 100x the tolerance and the floor was
// not needed.
MinPhaseResult min_phase_from_intensity(const SampledIntensity& intensity, std::size_t M,
                                        const MinPhaseOptions& options = {});

}  // namespace ddcap
