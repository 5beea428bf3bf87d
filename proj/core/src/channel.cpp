#include "ddcap/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "ddcap/error.hpp"
#include "ddcap/zeros.hpp"
#include "fft.hpp"

namespace ddcap {
namespace {

constexpr double kPmfTolerance = 1e-12;
constexpr double kLog2e = std::numbers::log2e;
constexpr double kSlack = 1e-9;

void check_pmf(std::span<const double> pmf, const std::string& what) {
  if (pmf.empty()) throw InputError(what + " is empty");
  double total = 0.0;
  for (double p : pmf) {
    if (!std::isfinite(p) || p < 0.0) throw InputError(what + " has a negative or non-finite entry");
    total += p;
  }
  if (std::abs(total - 1.0) > kPmfTolerance) {
    throw InputError(what + " sums to " + std::to_string(total) + ", not 1");
  }
}

ComplexVector in_band_noise(std::size_t M, double variance, std::mt19937_64& rng) {
  // Per-coefficient variance variance/M gives per-sample variance `variance`.
  std::normal_distribution<double> gauss(0.0, std::sqrt(variance / (2.0 * static_cast<double>(M))));
  ComplexVector coeffs(M);
  for (auto& c : coeffs) {
    const double re = gauss(rng);
    c = Complex(re, gauss(rng));
  }
  return detail::dft(coeffs, detail::FftSign::negative);
}

bool is_zero(const PeriodicSignal& sig) {
  return std::all_of(sig.samples().begin(), sig.samples().end(),
                     [](const Complex& z) { return z == Complex{}; });
}

PeriodicSignal canonical_or_zero(const PeriodicSignal& sig) {
  return is_zero(sig) ? sig : canonicalize_phase(sig);
}

OutputKey quantize(std::span<const double> values, double bin) {
  OutputKey key;
  key.reserve(values.size());
  for (double v : values) key.push_back(std::llround(v / bin));
  return key;
}

// Labels points whose max-norm distance is within `tol`; a pair at distance
// in (tol, 10 tol] is ambiguous.
std::vector<std::size_t> cluster(const std::vector<std::vector<double>>& points, double tol) {
  const std::size_t n = points.size();
  if (n == 0) return {};
  const std::size_t dim = points.front().size();
  // Fixed weights with sum |w| = 1, so projected gaps never exceed max-norm gaps.
  std::vector<double> weights(dim);
  double total = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    weights[d] = 1.0 + std::fmod(static_cast<double>(d + 1) * std::numbers::sqrt2, 1.0);
    total += weights[d];
  }
  for (auto& w : weights) w /= total;

  std::vector<double> proj(n);
  for (std::size_t i = 0; i < n; ++i) {
    proj[i] = std::inner_product(points[i].begin(), points[i].end(), weights.begin(), 0.0);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return proj[a] < proj[b] || (proj[a] == proj[b] && a < b);
  });

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = order[a];
    for (std::size_t b = a + 1; b < n && proj[order[b]] - proj[i] <= 10.0 * tol; ++b) {
      const std::size_t j = order[b];
      double dist = 0.0;
      for (std::size_t d = 0; d < dim; ++d) dist = std::max(dist, std::abs(points[i][d] - points[j][d]));
      if (dist <= tol) {
        const std::size_t ri = find(i);
        const std::size_t rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      } else if (dist <= 10.0 * tol) {
        throw DomainError("clustering ambiguity: two outputs lie " + std::to_string(dist) +
                          " apart, within 10x the tolerance " + std::to_string(tol));
      }
    }
  }
  std::vector<std::size_t> labels(n);
  std::map<std::size_t, std::size_t> relabel;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [it, inserted] = relabel.emplace(find(i), relabel.size());
    labels[i] = it->second;
  }
  return labels;
}

double log_sum_exp(std::span<const double> terms) {
  const double top = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

double log_bessel_i0(double z) {
  if (z < 600.0) return std::log(std::cyl_bessel_i(0.0, z));
  const double inv = 1.0 / z;
  const double series = 1.0 + inv / 8.0 + 9.0 * inv * inv / 128.0 + 225.0 * inv * inv * inv / 3072.0;
  return z - 0.5 * std::log(2.0 * std::numbers::pi * z) + std::log(series);
}

// log density of y = |a + n|^2 with n ~ CN(0, 1).
double log_noncentral_chi2(double y, double amplitude) {
  return -(y + amplitude * amplitude) + log_bessel_i0(2.0 * amplitude * std::sqrt(y));
}

ComplexVector normalized_points(const InputModel& input) {
  if (input.points.empty()) throw InputError("constellation input needs at least one point");
  double power = 0.0;
  for (const auto& p : input.points) power += std::norm(p);
  power /= static_cast<double>(input.points.size());
  if (!(power > 0.0)) throw InputError("constellation has zero mean power");
  ComplexVector out(input.points);
  for (auto& p : out) p /= std::sqrt(power);
  return out;
}

// Information density samples for one worker. Noise variance is 1 per dof;
// the signal carries power snr.
class DensitySampler {
 public:
  DensitySampler(Receiver receiver, const InputModel& input, double snr)
      : receiver_(receiver), kind_(input.kind), snr_(snr) {
    if (kind_ == InputModel::Kind::constellation) {
      points_ = normalized_points(input);
      for (auto& p : points_) p *= std::sqrt(snr);
    }
    if (receiver_ == Receiver::direct) prepare_direct(input.block);
  }

  double draw(std::mt19937_64& rng) const {
    switch (receiver_) {
      case Receiver::coherent: return coherent(rng);
      case Receiver::intensity: return intensity(rng);
      case Receiver::direct: return direct(rng);
    }
    return 0.0;
  }

 private:
  Complex unit_noise(std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    const double re = gauss(rng);
    return {re, gauss(rng)};
  }

  Complex draw_symbol(std::mt19937_64& rng, std::size_t* index = nullptr) const {
    if (kind_ == InputModel::Kind::gaussian) return std::sqrt(snr_) * unit_noise(rng);
    std::uniform_int_distribution<std::size_t> pick(0, points_.size() - 1);
    const std::size_t i = pick(rng);
    if (index) *index = i;
    return points_[i];
  }

  double coherent(std::mt19937_64& rng) const {
    const Complex x = draw_symbol(rng);
    const Complex y = x + unit_noise(rng);
    if (kind_ == InputModel::Kind::gaussian) {
      return std::log2(1.0 + snr_) - std::norm(y - x) * kLog2e + std::norm(y) / (1.0 + snr_) * kLog2e;
    }
    std::vector<double> terms(points_.size());
    for (std::size_t c = 0; c < points_.size(); ++c) terms[c] = -std::norm(y - points_[c]);
    const double log_mix = log_sum_exp(terms) - std::log(static_cast<double>(points_.size()));
    return (-std::norm(y - x) - log_mix) * kLog2e;
  }

  double intensity(std::mt19937_64& rng) const {
    const Complex x = draw_symbol(rng);
    const double y = std::norm(x + unit_noise(rng));
    const double cond = log_noncentral_chi2(y, std::abs(x));
    if (kind_ == InputModel::Kind::gaussian) {
      // |x + n|^2 is exponential with mean 1 + snr.
      const double marginal = -y / (1.0 + snr_) - std::log(1.0 + snr_);
      return (cond - marginal) * kLog2e;
    }
    std::vector<double> terms(points_.size());
    for (std::size_t c = 0; c < points_.size(); ++c) terms[c] = log_noncentral_chi2(y, std::abs(points_[c]));
    const double marginal = log_sum_exp(terms) - std::log(static_cast<double>(points_.size()));
    return (cond - marginal) * kLog2e;
  }

  void prepare_direct(std::size_t block) {
    if (kind_ != InputModel::Kind::constellation) {
      throw DomainError("no density implemented for the direct-detection receiver with Gaussian "
                        "input: the 2M correlated intensity samples have no tractable joint law; "
                        "use a finite constellation for the auxiliary-channel lower bound");
    }
    if (block == 0) throw InputError("block length must be positive");
    block_ = block;
    const double count = std::pow(static_cast<double>(points_.size()), static_cast<double>(block));
    if (count > 4096.0) throw DomainError("constellation^block exceeds 4096 candidate blocks");
    const auto total = static_cast<std::size_t>(count);
    for (std::size_t idx = 0; idx < total; ++idx) {
      ComplexVector samples(block);
      std::size_t rest = idx;
      for (auto& s : samples) {
        s = points_[rest % points_.size()];
        rest /= points_.size();
      }
      const PeriodicSignal sig(1.0, samples);
      const auto spec = samples_to_spectrum(sig);
      candidates_.emplace_back(spec.coeffs().begin(), spec.coeffs().end());
      candidate_intensity_.push_back(detect_direct(sig));
    }
  }

  // Auxiliary channel: independent Gaussians with the linearized mean and
  // variance of |x(t) + n(t)|^2 at each rate-2B instant.
  double log_q(std::span<const double> y, std::span<const double> clean) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double var = 2.0 * clean[j] + 1.0;
      const double dev = y[j] - (clean[j] + 1.0);
      acc += -0.5 * std::log(2.0 * std::numbers::pi * var) - dev * dev / (2.0 * var);
    }
    return acc;
  }

  double direct(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> pick(0, candidates_.size() - 1);
    const std::size_t sent = pick(rng);
    const std::size_t m = block_;
    ComplexVector padded(2 * m, Complex{});
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 / static_cast<double>(m)));
    for (std::size_t k = 0; k < m; ++k) {
      const double re = gauss(rng);
      padded[k] = candidates_[sent][k] + Complex(re, gauss(rng));
    }
    const auto field = detail::dft(padded, detail::FftSign::negative);
    std::vector<double> y(field.size());
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = std::norm(field[j]);

    std::vector<double> terms(candidates_.size());
    for (std::size_t c = 0; c < candidates_.size(); ++c) terms[c] = log_q(y, candidate_intensity_[c]);
    const double marginal = log_sum_exp(terms) - std::log(static_cast<double>(candidates_.size()));
    return (terms[sent] - marginal) * kLog2e / static_cast<double>(m);
  }

  Receiver receiver_;
  InputModel::Kind kind_;
  double snr_;
  ComplexVector points_;
  std::size_t block_ = 1;
  std::vector<ComplexVector> candidates_;
  std::vector<std::vector<double>> candidate_intensity_;
};

}  // namespace

PeriodicSignal apply_noise(const PeriodicSignal& sig, const NoiseSpec& noise) {
  if (std::isnan(noise.snr) || noise.snr <= 0.0) throw InputError("snr must be positive");
  const double power = energy(sig);
  if (power == 0.0) throw InputError("cannot scale noise to an all-zero signal");
  if (std::isinf(noise.snr)) return sig;
  std::mt19937_64 rng(noise.seed);
  const auto n = in_band_noise(sig.size(), power / noise.snr, rng);
  ComplexVector out(sig.samples().begin(), sig.samples().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += n[i];
  return PeriodicSignal(sig.bandwidth(), std::move(out));
}

ComplexVector detect_coherent(const PeriodicSignal& sig) {
  return ComplexVector(sig.samples().begin(), sig.samples().end());
}

std::vector<double> detect_direct(const PeriodicSignal& sig) { return intensity_grid(sig, 2).values; }

std::vector<double> detect_intensity_channel(const PeriodicSignal& sig) {
  std::vector<double> out;
  out.reserve(sig.size());
  for (const auto& s : sig.samples()) out.push_back(std::norm(s));
  return out;
}

DiscreteChannel::DiscreteChannel(std::vector<double> prior, std::vector<std::vector<double>> conditional,
                                 std::size_t dof)
    : prior_(std::move(prior)), conditional_(std::move(conditional)), dof_(dof) {
  if (dof_ == 0) throw InputError("degrees of freedom must be positive");
  check_pmf(prior_, "prior");
  if (conditional_.size() != prior_.size()) {
    throw InputError("conditional table needs one row per input");
  }
  const std::size_t width = conditional_.front().size();
  for (std::size_t x = 0; x < conditional_.size(); ++x) {
    if (conditional_[x].size() != width) throw InputError("conditional rows differ in length");
    check_pmf(conditional_[x], "conditional row " + std::to_string(x));
  }
}

DiscreteChannel DiscreteChannel::with_prior(std::vector<double> prior) const {
  return DiscreteChannel(std::move(prior), conditional_, dof_);
}

std::vector<double> DiscreteChannel::output_distribution() const {
  std::vector<double> py(output_count(), 0.0);
  for (std::size_t x = 0; x < prior_.size(); ++x) {
    if (prior_[x] == 0.0) continue;
    for (std::size_t y = 0; y < py.size(); ++y) py[y] += prior_[x] * conditional_[x][y];
  }
  return py;
}

std::string_view to_string(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::exact: return "exact";
    case EstimateMethod::monte_carlo: return "monte_carlo";
    case EstimateMethod::counting: return "counting";
  }
  return "unknown";
}

std::string_view to_string(BoundDirection bound) {
  switch (bound) {
    case BoundDirection::exact: return "exact";
    case BoundDirection::lower: return "lower";
    case BoundDirection::upper: return "upper";
  }
  return "unknown";
}

std::string_view to_string(Receiver receiver) {
  switch (receiver) {
    case Receiver::coherent: return "coherent";
    case Receiver::direct: return "direct";
    case Receiver::intensity: return "intensity";
  }
  return "unknown";
}

double entropy_bits(std::span<const double> pmf) {
  double h = 0.0;
  for (double p : pmf) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

MIEstimate exact_mi(const DiscreteChannel& channel) {
  const auto py = channel.output_distribution();
  double conditional = 0.0;
  for (std::size_t x = 0; x < channel.input_count(); ++x) {
    if (channel.prior()[x] > 0.0) conditional += channel.prior()[x] * entropy_bits(channel.conditional()[x]);
  }
  MIEstimate out;
  out.bits_per_dof = (entropy_bits(py) - conditional) / static_cast<double>(channel.dof());
  out.method = EstimateMethod::exact;
  return out;
}

ReceiverQuantizer fiber_quantizer(double intensity_bin) {
  if (!(intensity_bin > 0.0)) throw InputError("intensity bin width must be positive");
  ReceiverQuantizer q;
  q.direct = [intensity_bin](const PeriodicSignal& w) { return quantize(detect_direct(w), intensity_bin); };
  q.coherent = [intensity_bin](const PeriodicSignal& w) {
    auto key = quantize(detect_direct(w), intensity_bin);
    std::int64_t sides = 0;
    if (!is_zero(w)) {
      const auto zeros = find_zeros(samples_to_spectrum(w));
      for (std::size_t i = 0; i < zeros.degree(); ++i) {
        if (zeros.location(i) == ZeroLocation::inside) sides |= std::int64_t{1} << i;
      }
    }
    key.push_back(sides);
    return key;
  };
  return q;
}

std::vector<ComplexVector> noise_codebook(std::size_t M, double variance, std::size_t count,
                                          std::uint64_t seed) {
  if (M == 0 || count == 0) throw InputError("noise codebook needs M > 0 and count > 0");
  if (!(variance >= 0.0) || !std::isfinite(variance)) throw InputError("noise variance must be finite");
  std::mt19937_64 rng(seed);
  std::vector<ComplexVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(in_band_noise(M, variance, rng));
  return out;
}

ChannelPair discretize_channels(std::span<const PeriodicSignal> inputs, std::span<const double> prior,
                                const ChainDiscretization& discretization) {
  if (inputs.empty()) throw InputError("need at least one input waveform");
  if (prior.size() != inputs.size()) throw InputError("prior and input list differ in length");
  if (!discretization.quantizer.coherent || !discretization.quantizer.direct) {
    throw InputError("quantizer must define both receivers");
  }
  const std::size_t M = inputs.front().size();
  for (const auto& x : inputs) {
    if (x.size() != M) throw InputError("input waveforms differ in sample count");
  }

  std::vector<PeriodicSignal> canonical;
  canonical.reserve(inputs.size());
  for (const auto& x : inputs) canonical.push_back(canonical_or_zero(x));

  const std::vector<ComplexVector> noiseless{ComplexVector(M, Complex{})};
  const auto& realizations = discretization.noise.empty() ? noiseless : discretization.noise;
  const double weight = 1.0 / static_cast<double>(realizations.size());

  std::map<OutputKey, std::size_t> coherent_index;
  std::map<OutputKey, std::size_t> direct_index;
  std::vector<std::size_t> direct_of_coherent;
  std::vector<std::map<std::size_t, double>> coherent_rows(inputs.size());
  std::vector<std::map<std::size_t, double>> direct_rows(inputs.size());

  for (std::size_t x = 0; x < canonical.size(); ++x) {
    for (const auto& noise : realizations) {
      if (noise.size() != M) throw InputError("noise realization has the wrong length");
      ComplexVector rx(canonical[x].samples().begin(), canonical[x].samples().end());
      for (std::size_t i = 0; i < M; ++i) rx[i] += noise[i];
      const PeriodicSignal received(canonical[x].bandwidth(), std::move(rx));

      const auto [cit, c_new] =
          coherent_index.emplace(discretization.quantizer.coherent(received), coherent_index.size());
      const auto [dit, d_new] =
          direct_index.emplace(discretization.quantizer.direct(received), direct_index.size());
      if (c_new) {
        direct_of_coherent.push_back(dit->second);
      } else if (direct_of_coherent[cit->second] != dit->second) {
        throw DomainError("direct output is not a function of the coherent output under this "
                          "discretization (I(X;Y|Y') would be nonzero)");
      }
      coherent_rows[x][cit->second] += weight;
      direct_rows[x][dit->second] += weight;
    }
  }

  auto dense = [](const std::vector<std::map<std::size_t, double>>& rows, std::size_t width) {
    std::vector<std::vector<double>> out(rows.size(), std::vector<double>(width, 0.0));
    for (std::size_t x = 0; x < rows.size(); ++x) {
      for (const auto& [y, p] : rows[x]) out[x][y] = p;
    }
    return out;
  };

  std::vector<std::size_t> fiber(direct_index.size(), 0);
  for (std::size_t y : direct_of_coherent) ++fiber[y];

  std::vector<double> p(prior.begin(), prior.end());
  return ChannelPair{
      std::move(canonical),
      DiscreteChannel(p, dense(coherent_rows, coherent_index.size()), M),
      DiscreteChannel(p, dense(direct_rows, direct_index.size()), M),
      *std::max_element(fiber.begin(), fiber.end()),
  };
}

ChainBoundReport chain_bound_check(const ChannelPair& channels) {
  ChainBoundReport r;
  r.coherent = exact_mi(channels.coherent);
  r.direct = exact_mi(channels.direct);
  r.gap = r.coherent.bits_per_dof - r.direct.bits_per_dof;
  const auto M = static_cast<double>(channels.coherent.dof());
  r.bound = (M - 1.0) / M;
  r.coherent_outputs = channels.coherent.output_count();
  r.direct_outputs = channels.direct.output_count();
  r.max_fiber = channels.max_fiber;
  r.holds = r.gap >= -kSlack && r.gap <= r.bound + kSlack;
  return r;
}

ChainBoundReport chain_bound_check(std::span<const PeriodicSignal> inputs, std::span<const double> prior,
                                   const ChainDiscretization& discretization) {
  return chain_bound_check(discretize_channels(inputs, prior, discretization));
}

CapacitySearch capacity_grid_search(const DiscreteChannel& channel, double step) {
  const std::size_t n = channel.input_count();
  if (n > 5 || channel.dof() > 2) {
    throw DomainError("exhaustive prior search is limited to 5 inputs and M <= 2");
  }
  if (!(step > 0.0) || step > 1.0) throw InputError("prior grid step must lie in (0, 1]");
  const auto units = static_cast<int>(std::lround(1.0 / step));

  CapacitySearch best;
  best.bits_per_dof = -std::numeric_limits<double>::infinity();
  std::vector<int> parts(n, 0);
  // Enumerate compositions of `units` into n parts.
  std::function<void(std::size_t, int)> visit = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      parts[i] = left;
      std::vector<double> prior(n);
      for (std::size_t k = 0; k < n; ++k) prior[k] = static_cast<double>(parts[k]) / units;
      double total = std::accumulate(prior.begin(), prior.end(), 0.0);
      for (auto& p : prior) p /= total;
      const double mi = exact_mi(channel.with_prior(prior)).bits_per_dof;
      if (mi > best.bits_per_dof) best = {prior, mi};
      return;
    }
    for (int v = 0; v <= left; ++v) {
      parts[i] = v;
      visit(i + 1, left - v);
    }
  };
  visit(0, units);
  return best;
}

CountingReport counting_entropy(std::span<const Complex> constellation, std::size_t M, double tolerance) {
  if (constellation.empty()) throw InputError("constellation is empty");
  if (M == 0) throw InputError("M must be positive");
  const double count = std::pow(static_cast<double>(constellation.size()), static_cast<double>(M));
  if (count > 1e6) throw InputError("constellation^M exceeds 1e6 waveforms");
  const auto total = static_cast<std::size_t>(count);

  double scale = 0.0;
  for (const auto& c : constellation) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) scale = 1.0;

  std::vector<std::vector<double>> waveforms;
  waveforms.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    ComplexVector samples(M);
    std::size_t rest = idx;
    for (auto& s : samples) {
      s = constellation[rest % constellation.size()];
      rest /= constellation.size();
    }
    const auto canonical = canonical_or_zero(PeriodicSignal(1.0, std::move(samples)));
    const auto spec = samples_to_spectrum(canonical);
    std::vector<double> point;
    point.reserve(2 * M);
    for (const auto& c : spec.coeffs()) {
      point.push_back(c.real());
      point.push_back(c.imag());
    }
    waveforms.push_back(std::move(point));
  }
  const auto labels = cluster(waveforms, tolerance * scale);
  const std::size_t distinct = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;

  // One representative per distinct waveform, then cluster intensities.
  std::vector<std::vector<double>> intensities(distinct);
  std::vector<bool> seen(distinct, false);
  for (std::size_t i = 0; i < total; ++i) {
    if (seen[labels[i]]) continue;
    seen[labels[i]] = true;
    ComplexVector coeffs(M);
    for (std::size_t k = 0; k < M; ++k) coeffs[k] = {waveforms[i][2 * k], waveforms[i][2 * k + 1]};
    intensities[labels[i]] = detect_direct(spectrum_to_samples(SpectralPoly(1.0, coeffs)));
  }
  const auto fiber_labels = cluster(intensities, tolerance * scale * scale);
  const std::size_t classes =
      fiber_labels.empty() ? 0 : *std::max_element(fiber_labels.begin(), fiber_labels.end()) + 1;
  std::vector<std::size_t> fiber(classes, 0);
  for (std::size_t l : fiber_labels) ++fiber[l];

  CountingReport r;
  r.dof = M;
  r.sequences = total;
  r.distinct_waveforms = distinct;
  r.distinct_intensities = classes;
  r.coherent_entropy_bits = std::log2(static_cast<double>(distinct));
  std::vector<double> py;
  py.reserve(classes);
  for (std::size_t f : fiber) py.push_back(static_cast<double>(f) / static_cast<double>(distinct));
  r.direct_entropy_bits = entropy_bits(py);
  r.gap_bits = r.coherent_entropy_bits - r.direct_entropy_bits;
  r.gap_bits_per_dof = r.gap_bits / static_cast<double>(M);
  r.max_fiber = *std::max_element(fiber.begin(), fiber.end());
  const double limit = static_cast<double>(M - 1);
  r.holds = r.gap_bits <= limit + kSlack && static_cast<double>(r.max_fiber) <= std::exp2(limit);
  return r;
}

MIEstimate mc_mi(Receiver receiver, const InputModel& input, const NoiseSpec& noise,
                 std::size_t n_samples, std::size_t workers) {
  if (n_samples < 10000) throw InputError("Monte-Carlo MI needs n_samples >= 1e4");
  if (workers == 0) throw InputError("worker count must be positive");
  if (!(noise.snr >= 0.0) || !std::isfinite(noise.snr)) throw InputError("snr must be finite and >= 0");

  const DensitySampler sampler(receiver, input, noise.snr);
  std::vector<std::vector<double>> parts(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t share = n_samples / workers + (w < n_samples % workers ? 1 : 0);
      pool.emplace_back([&, w, share] {
        std::seed_seq seq{static_cast<std::uint32_t>(noise.seed), static_cast<std::uint32_t>(noise.seed >> 32),
                          static_cast<std::uint32_t>(w)};
        std::mt19937_64 rng(seq);
        auto& out = parts[w];
        out.reserve(share);
        for (std::size_t i = 0; i < share; ++i) out.push_back(sampler.draw(rng));
      });
    }
  }
  double sum = 0.0;
  for (const auto& part : parts) sum += std::accumulate(part.begin(), part.end(), 0.0);
  const double mean = sum / static_cast<double>(n_samples);
  double sq = 0.0;
  for (const auto& part : parts) {
    for (double v : part) sq += (v - mean) * (v - mean);
  }
  MIEstimate out;
  out.bits_per_dof = mean;
  out.std_error = std::sqrt(sq / static_cast<double>(n_samples - 1) / static_cast<double>(n_samples));
  out.method = EstimateMethod::monte_carlo;
  out.bound = receiver == Receiver::direct ? BoundDirection::lower : BoundDirection::exact;
  out.samples = n_samples;
  out.workers = workers;
  return out;
}

}  // namespace ddcap
