#include "ddcap/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "ddcap/error.hpp"
#include "fft.hpp"

namespace ddcap {
namespace {

constexpr double kPi = std::numbers::pi;

bool all_finite(std::span<const Complex> v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

void check_bandwidth(double bandwidth) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw InputError("bandwidth must be positive and finite, got " + std::to_string(bandwidth));
  }
}

bool same_bandwidth(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

}  // namespace

PeriodicSignal::PeriodicSignal(double bandwidth, ComplexVector samples)
    : bandwidth_(bandwidth), samples_(std::move(samples)) {
  check_bandwidth(bandwidth_);
  if (samples_.empty()) throw InputError("a periodic signal needs at least one sample");
  if (!all_finite(samples_)) throw InputError("signal samples must be finite");
}

double PeriodicSignal::angular_step() const noexcept {
  return 2.0 * kPi * bandwidth_ / static_cast<double>(size());
}

SpectralPoly::SpectralPoly(double bandwidth, ComplexVector coeffs)
    : bandwidth_(bandwidth), coeffs_(std::move(coeffs)) {
  check_bandwidth(bandwidth_);
  if (coeffs_.empty()) throw InputError("a spectrum needs at least one coefficient");
  if (!all_finite(coeffs_)) throw InputError("Fourier coefficients must be finite");
  for (const auto& c : coeffs_) max_magnitude_ = std::max(max_magnitude_, std::abs(c));
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
    if (std::abs(coeffs_[static_cast<std::size_t>(k)]) > kDegreeTolerance * max_magnitude_) {
      eff_degree_ = k;
      break;
    }
  }
}

double SpectralPoly::angular_step() const noexcept {
  return 2.0 * kPi * bandwidth_ / static_cast<double>(size());
}

SpectralPoly samples_to_spectrum(const PeriodicSignal& sig) {
  auto coeffs = detail::dft(sig.samples(), detail::FftSign::positive);
  const double scale = 1.0 / static_cast<double>(sig.size());
  for (auto& c : coeffs) c *= scale;
  return SpectralPoly(sig.bandwidth(), std::move(coeffs));
}

PeriodicSignal spectrum_to_samples(const SpectralPoly& spec) {
  return PeriodicSignal(spec.bandwidth(), detail::dft(spec.coeffs(), detail::FftSign::negative));
}

Complex evaluate_polynomial(std::span<const Complex> coeffs, Complex z) {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex evaluate_field(const SpectralPoly& spec, double t) {
  const double period = spec.period();
  const double reduced = t - std::floor(t / period) * period;
  return evaluate_polynomial(spec.coeffs(), std::polar(1.0, -spec.angular_step() * reduced));
}

SampledIntensity intensity_grid(const PeriodicSignal& sig, int oversample) {
  if (oversample < 2) {
    throw InputError("intensity_grid needs oversample >= 2 (rate >= 2B); rate-B intensity "
                     "samples come from detect_intensity_channel");
  }
  const auto spec = samples_to_spectrum(sig);
  const std::size_t points = static_cast<std::size_t>(oversample) * sig.size();
  ComplexVector padded(points, Complex{});
  std::copy(spec.coeffs().begin(), spec.coeffs().end(), padded.begin());
  const auto field = detail::dft(padded, detail::FftSign::negative);

  SampledIntensity out;
  out.rate = oversample * sig.bandwidth();
  out.values.reserve(points);
  for (const auto& e : field) out.values.push_back(std::norm(e));
  return out;
}

std::vector<double> resample_intensity(const SampledIntensity& intensity, std::size_t points,
                                       int max_harmonic) {
  const std::size_t n = intensity.values.size();
  if (n == 0 || points == 0) throw InputError("cannot resample an empty intensity grid");

  ComplexVector values(intensity.values.begin(), intensity.values.end());
  auto harmonics = detail::dft(values, detail::FftSign::negative);
  for (auto& h : harmonics) h /= static_cast<double>(n);

  const long half = static_cast<long>(n / 2);
  const bool has_nyquist = n % 2 == 0;
  long keep = max_harmonic < 0 ? half : std::min<long>(max_harmonic, half);
  const bool split_nyquist = has_nyquist && keep == half;
  const long highest = split_nyquist ? keep : std::min(keep, has_nyquist ? half - 1 : half);
  if (static_cast<long>(points) <= 2 * highest) {
    throw InputError("resample target has too few points for the retained harmonics");
  }

  ComplexVector target(points, Complex{});
  auto slot = [&](long h) -> Complex& {
    const long p = static_cast<long>(points);
    return target[static_cast<std::size_t>(((h % p) + p) % p)];
  };
  const long regular = split_nyquist ? half - 1 : highest;
  for (long h = -regular; h <= regular; ++h) {
    slot(h) += harmonics[static_cast<std::size_t>((h + static_cast<long>(n)) % static_cast<long>(n))];
  }
  if (split_nyquist) {
    const Complex nyq = harmonics[static_cast<std::size_t>(half)];
    slot(half) += 0.5 * nyq;
    slot(-half) += 0.5 * nyq;
  }
  const auto field = detail::dft(target, detail::FftSign::positive);
  std::vector<double> out;
  out.reserve(points);
  for (const auto& v : field) out.push_back(v.real());
  return out;
}

double energy(const PeriodicSignal& sig) {
  const auto spec = samples_to_spectrum(sig);
  double total = 0.0;
  for (const auto& c : spec.coeffs()) total += std::norm(c);
  return total;
}

Complex inner_product(const PeriodicSignal& a, const PeriodicSignal& b) {
  if (a.size() != b.size() || !same_bandwidth(a.bandwidth(), b.bandwidth())) {
    throw InputError("signals differ in sample count or bandwidth");
  }
  const auto fa = samples_to_spectrum(a);
  const auto fb = samples_to_spectrum(b);
  Complex acc = 0.0;
  for (std::size_t k = 0; k < fa.size(); ++k) acc += fa[k] * std::conj(fb[k]);
  return acc;
}

double phase_distance(const PeriodicSignal& a, const PeriodicSignal& b) {
  const Complex cross = inner_product(a, b);
  const double d = energy(a) + energy(b) - 2.0 * std::abs(cross);
  return std::max(d, 0.0);
}

PeriodicSignal scaled(const PeriodicSignal& sig, Complex factor) {
  ComplexVector out(sig.samples().begin(), sig.samples().end());
  for (auto& s : out) s *= factor;
  return PeriodicSignal(sig.bandwidth(), std::move(out));
}

PeriodicSignal canonicalize_phase(const PeriodicSignal& sig) {
  const auto spec = samples_to_spectrum(sig);
  const double peak = spec.max_magnitude();
  if (peak == 0.0) throw InputError("cannot canonicalize the phase of an all-zero signal");
  std::size_t ref = 0;
  while (std::abs(spec[ref]) < peak * (1.0 - 1e-12)) ++ref;
  return scaled(sig, std::polar(1.0, -std::arg(spec[ref])));
}

PeriodicSignal random_signal(std::size_t M, double bandwidth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  ComplexVector samples(M);
  for (auto& s : samples) {
    const double re = gauss(rng);
    s = Complex(re, gauss(rng));
  }
  return PeriodicSignal(bandwidth, std::move(samples));
}

Complex FiniteSequence::at(std::ptrdiff_t k) const noexcept {
  const std::ptrdiff_t idx = k - first;
  if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(values.size())) return {};
  return values[static_cast<std::size_t>(idx)];
}

double half_sample_intensity_oracle(const FiniteSequence& samples, std::ptrdiff_t n,
                                    std::ptrdiff_t window) {
  if (window < 1) throw InputError("half-sample oracle window must be >= 1");
  // The double sum factors as |sum_k s_k E_k|^2 since the sinc weights are real,
  // and sinc[pi(j + 1/2)] = (-1)^j / (pi (j + 1/2)) exactly.
  const std::ptrdiff_t lo = std::max(n - window + 1, samples.first);
  const std::ptrdiff_t hi =
      std::min(n + window, samples.first + static_cast<std::ptrdiff_t>(samples.values.size()) - 1);
  Complex acc = 0.0;
  for (std::ptrdiff_t k = lo; k <= hi; ++k) {
    const std::ptrdiff_t j = n - k;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    acc += samples.at(k) * (sign / (kPi * (static_cast<double>(j) + 0.5)));
  }
  return std::norm(acc);
}

FiniteSequence periodic_baseband_copy(const PeriodicSignal& sig, std::ptrdiff_t n,
                                      std::ptrdiff_t window) {
  if (window < 1) throw InputError("window must be >= 1");
  const auto m = static_cast<std::int64_t>(sig.size());
  FiniteSequence out;
  out.first = n - window + 1;
  out.values.resize(static_cast<std::size_t>(2 * window));
  for (std::ptrdiff_t i = 0; i < 2 * window; ++i) {
    const std::int64_t k = out.first + i;
    const std::int64_t idx = ((k % m) + m) % m;
    // exp(i pi (M-1) k / M), reduced modulo 2M before scaling.
    const std::int64_t turns = (((m - 1) * k) % (2 * m) + 2 * m) % (2 * m);
    const double phase = kPi * static_cast<double>(turns) / static_cast<double>(m);
    out.values[static_cast<std::size_t>(i)] = std::polar(1.0, phase) * sig[static_cast<std::size_t>(idx)];
  }
  return out;
}

double half_sample_truncation_bound(const PeriodicSignal& sig, std::ptrdiff_t window) {
  if (window < 1) throw InputError("window must be >= 1");
  const auto spec = samples_to_spectrum(sig);
  double total = 0.0;
  for (const auto& c : spec.coeffs()) total += std::abs(c);
  const double m = static_cast<double>(sig.size());
  const double delta =
      2.0 * total / (kPi * (static_cast<double>(window) + 0.5) * std::sin(kPi / (2.0 * m)));
  return 2.0 * total * delta + delta * delta;
}

}  // namespace ddcap
