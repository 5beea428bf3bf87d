#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ddcap {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Coefficients below this fraction of the largest one do not count towards
// the effective degree of a spectrum.
inline constexpr double kDegreeTolerance = 1e-10;

// One period of a complex waveform band-limited to [0, B] with period M/B,
// held as its M rate-B samples E_n = E(n/B).
class PeriodicSignal {
 public:
  // Throws InputError on empty or non-finite samples, or bandwidth <= 0.
  PeriodicSignal(double bandwidth, ComplexVector samples);

  std::size_t size() const noexcept { return samples_.size(); }
  double bandwidth() const noexcept { return bandwidth_; }
  double period() const noexcept { return static_cast<double>(size()) / bandwidth_; }
  // Fundamental angular frequency Omega = 2*pi*B/M.
  double angular_step() const noexcept;

  std::span<const Complex> samples() const noexcept { return samples_; }
  const Complex& operator[](std::size_t n) const { return samples_[n]; }

 private:
  double bandwidth_;
  ComplexVector samples_;
};

// Fourier coefficients F_k of E(t) = sum_k F_k exp(-i k Omega t); equivalently
// the coefficients of the polynomial A(Z) = sum_k F_k Z^k.
class SpectralPoly {
 public:
  SpectralPoly(double bandwidth, ComplexVector coeffs);

  std::size_t size() const noexcept { return coeffs_.size(); }
  double bandwidth() const noexcept { return bandwidth_; }
  double period() const noexcept { return static_cast<double>(size()) / bandwidth_; }
  double angular_step() const noexcept;

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  const Complex& operator[](std::size_t k) const { return coeffs_[k]; }

  // Largest k with |F_k| > kDegreeTolerance * max|F|, or -1 when all vanish.
  int effective_degree() const noexcept { return eff_degree_; }
  double max_magnitude() const noexcept { return max_magnitude_; }

 private:
  double bandwidth_;
  ComplexVector coeffs_;
  int eff_degree_ = -1;
  double max_magnitude_ = 0.0;
};

// Uniform grid of |E(t)|^2 over exactly one period.
struct SampledIntensity {
  double rate = 0.0;  // samples per second
  std::vector<double> values;

  double period() const noexcept { return static_cast<double>(values.size()) / rate; }
};

SpectralPoly samples_to_spectrum(const PeriodicSignal& sig);
PeriodicSignal spectrum_to_samples(const SpectralPoly& spec);

// Horner evaluation of sum_k coeffs[k] z^k.
Complex evaluate_polynomial(std::span<const Complex> coeffs, Complex z);

// E(t) = A(exp(-i Omega t)).
Complex evaluate_field(const SpectralPoly& spec, double t);

// |E(j / (oversample B))|^2 for j = 0 .. oversample*M - 1. The intensity
// occupies harmonics -(M-1)..(M-1), so oversample >= 2 captures it exactly;
// smaller values throw InputError (use detect_intensity_channel for rate B).
SampledIntensity intensity_grid(const PeriodicSignal& sig, int oversample);

// Trigonometric interpolation of a sampled intensity onto `points` uniform
// samples of the same period. Keeps harmonics |n| <= max_harmonic (all
// resolvable harmonics when max_harmonic < 0).
std::vector<double> resample_intensity(const SampledIntensity& intensity, std::size_t points,
                                       int max_harmonic = -1);

// Period-average power, sum_k |F_k|^2.
double energy(const PeriodicSignal& sig);
// Period average of a(t) conj(b(t)), sum_k F^a_k conj(F^b_k).
Complex inner_product(const PeriodicSignal& a, const PeriodicSignal& b);

// min over theta of the period-average energy of a - exp(i theta) b, in
// closed form ||a||^2 + ||b||^2 - 2 |<a, b>|. Throws InputError when M or B
// differ.
double phase_distance(const PeriodicSignal& a, const PeriodicSignal& b);

PeriodicSignal scaled(const PeriodicSignal& sig, Complex factor);

// Rotates sig so that its largest-magnitude Fourier coefficient (smallest k
// on ties) is real and nonnegative. Throws InputError on an all-zero signal.
PeriodicSignal canonicalize_phase(const PeriodicSignal& sig);

// M samples drawn iid circular Gaussian with unit mean power.
PeriodicSignal random_signal(std::size_t M, double bandwidth, std::uint64_t seed);

// -- Half-sample intensities in the sinc basis ------------------------------

// Complex sequence that is zero outside [first, first + values.size()).
struct FiniteSequence {
  std::ptrdiff_t first = 0;
  ComplexVector values;

  Complex at(std::ptrdiff_t k) const noexcept;
};

// Truncated double sum
//   I_{n+1/2} = sum_{k,m} sinc[pi(n-m+1/2)] sinc[pi(n-k+1/2)] E_m^* E_k
// over k, m in [n - window + 1, n + window], i.e. |sum_k sinc[..] E_k|^2.
// For a finite sequence it is exact once the window covers the support.
double half_sample_intensity_oracle(const FiniteSequence& samples, std::ptrdiff_t n,
                                    std::ptrdiff_t window);

// The samples of a periodic signal, shifted to baseband and extended
// periodically over [n - window + 1, n + window]. The spectrum of sig sits on
// harmonics 0..M-1; multiplying by exp(i c t) with c = (M-1) Omega / 2 centres
// it strictly inside (-pi B, pi B), where the plain sinc series applies and
// |E|^2 is unchanged.
FiniteSequence periodic_baseband_copy(const PeriodicSignal& sig, std::ptrdiff_t n,
                                      std::ptrdiff_t window);

// Upper bound on |oracle - |E((n+1/2)/B)|^2| for periodic_baseband_copy at
// the given window: with S = sum|F_k| and
//   delta = 2 S / (pi (window + 1/2) sin(pi / (2M)))
// the bound is 2 S delta + delta^2, which is O(1/window).
double half_sample_truncation_bound(const PeriodicSignal& sig, std::ptrdiff_t window);

}  // namespace ddcap
