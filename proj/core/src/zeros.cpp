#include "ddcap/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include "ddcap/error.hpp"

namespace ddcap {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxIterations = 500;
constexpr int kPolishSteps = 3;
constexpr double kResidualTolerance = 1e-10;

struct Evaluation {
  Complex value;
  Complex derivative;
};

Evaluation evaluate_with_derivative(std::span<const Complex> coeffs, Complex z) {
  Complex p = 0.0;
  Complex dp = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

// Simultaneous Aberth-Ehrlich iteration on a polynomial whose constant and
// leading coefficients are both nonzero.
std::vector<Complex> aberth_roots(std::span<const Complex> coeffs) {
  const std::size_t n = coeffs.size() - 1;
  std::vector<Complex> roots(n);
  if (n == 0) return roots;

  double radius = std::pow(std::abs(coeffs.front()) / std::abs(coeffs.back()), 1.0 / static_cast<double>(n));
  if (!std::isfinite(radius) || radius == 0.0) radius = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    // Offset and a small per-root jitter keep the start off any symmetry axis.
    const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n) + 0.4 +
                         0.01 * static_cast<double>(k % 3);
    roots[k] = std::polar(radius, angle);
  }

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto [p, dp] = evaluate_with_derivative(coeffs, roots[k]);
      if (p == Complex{}) continue;
      if (dp == Complex{}) {
        roots[k] *= Complex(1.0, 1e-3);
        worst = 1.0;
        continue;
      }
      const Complex ratio = p / dp;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) repulsion += 1.0 / (roots[k] - roots[j]);
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      roots[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(std::abs(roots[k]), 1e-300));
    }
    if (worst < 1e-15) break;
  }

  for (auto& z : roots) {
    for (int s = 0; s < kPolishSteps; ++s) {
      const auto [p, dp] = evaluate_with_derivative(coeffs, z);
      if (p == Complex{} || dp == Complex{}) break;
      const Complex candidate = z - p / dp;
      if (std::abs(evaluate_polynomial(coeffs, candidate)) < std::abs(p)) {
        z = candidate;
      } else {
        break;
      }
    }
  }
  return roots;
}

ZeroLocation classify(Complex z) {
  const double r = std::abs(z);
  if (std::abs(r - 1.0) <= kUnitCircleTolerance) return ZeroLocation::on_circle;
  return r < 1.0 ? ZeroLocation::inside : ZeroLocation::outside;
}

// Argument in [0, 2 pi) quantized so that roundoff across a reflection does
// not reorder zeros.
long long argument_key(Complex z) {
  constexpr double kQuantum = 1e-12;
  const long long full = std::llround(2.0 * kPi / kQuantum);
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * kPi;
  const long long key = std::llround(a / kQuantum);
  return key >= full ? 0 : key;
}

int class_rank(Complex z) {
  if (z == Complex{}) return 1;
  return classify(z) == ZeroLocation::on_circle ? 2 : 0;
}

std::vector<std::vector<std::size_t>> group_repeated(std::span<const Complex> zeros, std::size_t count) {
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double scale = std::max(1.0, std::abs(zeros[i]));
      if (std::abs(zeros[i] - zeros[j]) <= kRepeatedZeroSeparation * scale) {
        parent[find(j)] = find(i);
      }
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(count, -1);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].push_back(i);
  }
  return groups;
}

Complex root_of_unity_point(std::size_t n, std::size_t M) {
  return std::polar(1.0, -2.0 * kPi * static_cast<double>(n) / static_cast<double>(M));
}

void check_mask(const ZeroSet& zs, FlipMask mask) {
  if (zs.degree() < 64 && (mask >> zs.degree()) != 0) {
    throw InputError("flip mask addresses zeros beyond the " + std::to_string(zs.degree()) +
                     " found");
  }
  for (std::size_t i = 0; i < zs.degree() && i < 64; ++i) {
    if (((mask >> i) & 1U) == 0) continue;
    if (zs.location(i) == ZeroLocation::on_circle) {
      throw DomainError("zero " + std::to_string(i) +
                        " lies on the unit circle; reflecting it is a constant phase, not a new "
                        "waveform");
    }
    if (zs.at_origin(i)) {
      throw DomainError("zero " + std::to_string(i) +
                        " sits at the origin; its reflection leaves the band");
    }
  }
}

struct Reflected {
  std::vector<Complex> zeros;
  Complex leading;
};

Reflected reflect(const ZeroSet& zs, FlipMask mask) {
  Reflected out{std::vector<Complex>(zs.zeros().begin(), zs.zeros().end()), zs.leading()};
  for (std::size_t i = 0; i < out.zeros.size() && i < 64; ++i) {
    if (((mask >> i) & 1U) == 0) continue;
    const Complex z = out.zeros[i];
    out.leading *= std::abs(z);
    out.zeros[i] = 1.0 / std::conj(z);
  }
  return out;
}

}  // namespace

ZeroSet::ZeroSet(double angular_step, double period, Complex leading, std::vector<Complex> zeros)
    : angular_step_(angular_step), period_(period), leading_(leading), zeros_(std::move(zeros)) {
  std::sort(zeros_.begin(), zeros_.end(), [](Complex a, Complex b) {
    const auto key = [](Complex z) {
      const double r = std::abs(z);
      const double log_radius = r == 0.0 ? 0.0 : std::abs(std::log(r));
      return std::make_tuple(class_rank(z), argument_key(z), log_radius, std::arg(z), r);
    };
    return key(a) < key(b);
  });
  locations_.reserve(zeros_.size());
  for (const auto& z : zeros_) {
    locations_.push_back(z == Complex{} ? ZeroLocation::inside : classify(z));
    if (class_rank(z) == 0) ++reflectable_;
  }
  groups_ = group_repeated(zeros_, reflectable_);
}

bool ZeroSet::reflectable(std::size_t i) const { return i < reflectable_; }

std::size_t ZeroSet::on_circle_count() const noexcept {
  return static_cast<std::size_t>(
      std::count(locations_.begin(), locations_.end(), ZeroLocation::on_circle));
}

std::size_t ZeroSet::off_circle_count() const noexcept { return degree() - on_circle_count(); }

std::vector<double> ZeroSet::null_times() const {
  std::vector<double> times;
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    if (locations_[i] != ZeroLocation::on_circle) continue;
    // E(t) = A(exp(-i Omega t)) vanishes where exp(-i Omega t) = Z_l.
    double t = -std::arg(zeros_[i]) / angular_step_;
    t -= std::floor(t / period_) * period_;
    if (t >= period_) t -= period_;
    times.push_back(t);
  }
  return times;
}

ComplexVector ZeroSet::coefficients() const {
  // Leja order keeps the partial products from growing far beyond the final
  // coefficients, which argument order does not.
  std::vector<Complex> order(zeros_.begin(), zeros_.end());
  std::vector<double> score(order.size(), 0.0);  // log of the distance product
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t pick = i;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const bool better = i == 0 ? std::abs(order[j]) > std::abs(order[pick]) : score[j] > score[pick];
      if (better) pick = j;
    }
    std::swap(order[i], order[pick]);
    std::swap(score[i], score[pick]);
    for (std::size_t j = i + 1; j < order.size(); ++j) score[j] += std::log(std::abs(order[j] - order[i]));
  }
  ComplexVector c{1.0};
  for (const auto& z : order) {
    ComplexVector next(c.size() + 1, Complex{});
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= z * c[i];
    }
    c = std::move(next);
  }
  for (auto& v : c) v *= leading_;
  return c;
}

ZeroSet find_zeros(const SpectralPoly& spec) {
  const int degree = spec.effective_degree();
  if (degree < 0) throw InputError("cannot factor an identically zero polynomial");
  const auto d = static_cast<std::size_t>(degree);
  const std::span<const Complex> coeffs = spec.coeffs().first(d + 1);
  const double scale = spec.max_magnitude();

  std::size_t at_origin = 0;
  while (at_origin < d && std::abs(coeffs[at_origin]) <= kDegreeTolerance * scale) ++at_origin;

  std::vector<Complex> zeros(at_origin, Complex{});
  auto roots = aberth_roots(coeffs.subspan(at_origin));
  zeros.insert(zeros.end(), roots.begin(), roots.end());

  for (const auto& z : zeros) {
    const double residual = std::abs(evaluate_polynomial(coeffs, z));
    const double allowed =
        kResidualTolerance * scale * std::pow(std::max(1.0, std::abs(z)), static_cast<double>(d));
    if (!(residual <= allowed)) {
      throw NumericalError("root iteration did not converge: residual " + std::to_string(residual) +
                               " exceeds " + std::to_string(allowed),
                           residual);
    }
  }
  return ZeroSet(spec.angular_step(), spec.period(), coeffs[d], std::move(zeros));
}

PeriodicSignal signal_from_zeros(std::span<const Complex> zeros, Complex leading, std::size_t M,
                                 double bandwidth) {
  if (zeros.size() >= M) {
    throw InputError("a period of " + std::to_string(M) + " samples holds at most " +
                     std::to_string(M == 0 ? 0 : M - 1) + " zeros");
  }
  ComplexVector samples(M);
  for (std::size_t n = 0; n < M; ++n) {
    const Complex point = root_of_unity_point(n, M);
    Complex value = leading;
    for (const auto& z : zeros) value *= point - z;
    samples[n] = value;
  }
  return PeriodicSignal(bandwidth, std::move(samples));
}

SpectralPoly flip_zeros(const SpectralPoly& spec, const ZeroSet& zeros, FlipMask mask) {
  check_mask(zeros, mask);
  if (mask == 0) return spec;
  const auto reflected = reflect(zeros, mask);
  return samples_to_spectrum(
      signal_from_zeros(reflected.zeros, reflected.leading, spec.size(), spec.bandwidth()));
}

SpectralPoly flip_zeros(const SpectralPoly& spec, FlipMask mask) {
  if (mask == 0) return spec;
  return flip_zeros(spec, find_zeros(spec), mask);
}

EqualIntensityFamily enumerate_family(const PeriodicSignal& sig, int cap) {
  const auto spec = samples_to_spectrum(sig);
  auto zeros = find_zeros(spec);
  if (static_cast<long>(zeros.reflectable_count()) > cap || zeros.reflectable_count() > 63) {
    throw DomainError("signal has " + std::to_string(zeros.reflectable_count()) +
                      " reflectable zeros, above the enumeration cap of " + std::to_string(cap) +
                      "; raise the cap explicitly to enumerate");
  }

  const auto& groups = zeros.repeated_groups();
  std::vector<std::size_t> digits(groups.size(), 0);
  std::vector<FamilyMember> members;
  const PeriodicSignal base = canonicalize_phase(sig);
  while (true) {
    FlipMask mask = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (std::size_t j = 0; j < digits[g]; ++j) mask |= FlipMask{1} << groups[g][j];
    }
    if (mask == 0) {
      members.push_back({0, base});
    } else {
      const auto reflected = reflect(zeros, mask);
      members.push_back({mask, canonicalize_phase(signal_from_zeros(
                                   reflected.zeros, reflected.leading, sig.size(), sig.bandwidth()))});
    }
    // Mixed-radix increment, least significant group first.
    std::size_t g = 0;
    while (g < groups.size() && ++digits[g] > groups[g].size()) digits[g++] = 0;
    if (g == groups.size()) break;
  }
  return {base, std::move(zeros), std::move(members)};
}

PeriodicSignal min_phase_member(const PeriodicSignal& sig) {
  const auto spec = samples_to_spectrum(sig);
  const auto zeros = find_zeros(spec);
  FlipMask mask = 0;
  for (std::size_t i = 0; i < zeros.reflectable_count(); ++i) {
    if (zeros.location(i) == ZeroLocation::inside) mask |= FlipMask{1} << i;
  }
  if (mask == 0) return canonicalize_phase(sig);
  const auto reflected = reflect(zeros, mask);
  return canonicalize_phase(
      signal_from_zeros(reflected.zeros, reflected.leading, sig.size(), sig.bandwidth()));
}

PeriodicSignal embed_finite_support(std::span<const Complex> payload, std::size_t period_samples,
                                    double bandwidth) {
  if (payload.empty()) throw InputError("payload must not be empty");
  if (period_samples < 4 * payload.size()) {
    throw InputError("embedding period of " + std::to_string(period_samples) +
                     " samples is below the 4*M guard for a payload of " +
                     std::to_string(payload.size()));
  }
  ComplexVector samples(period_samples, Complex{});
  const std::size_t start = (period_samples - payload.size()) / 2;
  std::copy(payload.begin(), payload.end(), samples.begin() + static_cast<std::ptrdiff_t>(start));
  return PeriodicSignal(bandwidth, std::move(samples));
}

}  // namespace ddcap
