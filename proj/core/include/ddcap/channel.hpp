#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "ddcap/signal.hpp"

namespace ddcap {

// snr: average signal power over the total in-band noise variance, both
// quadratures summed. +infinity means noiseless.
struct NoiseSpec {
  double snr = 0.0;
  std::uint64_t seed = 0;
};

// Adds circular Gaussian noise on the M in-band Fourier coefficients, white
// across them, with per-sample variance energy(sig) / snr. Deterministic in
// the seed. Throws InputError for an all-zero signal or snr <= 0.
PeriodicSignal apply_noise(const PeriodicSignal& sig, const NoiseSpec& noise);

// Coherent receiver: the M complex rate-B samples.
ComplexVector detect_coherent(const PeriodicSignal& sig);
// Direct detection: |E|^2 at rate 2B. Even entries are |E_n|^2, odd entries
// the mid-point samples.
std::vector<double> detect_direct(const PeriodicSignal& sig);
// Legacy intensity channel: |E_n|^2 at rate B only.
std::vector<double> detect_intensity_channel(const PeriodicSignal& sig);

// Finite-alphabet channel law: prior over inputs and one conditional pmf row
// per input. Rows and prior must sum to 1 within 1e-12.
class DiscreteChannel {
 public:
  DiscreteChannel(std::vector<double> prior, std::vector<std::vector<double>> conditional,
                  std::size_t dof);

  const std::vector<double>& prior() const noexcept { return prior_; }
  const std::vector<std::vector<double>>& conditional() const noexcept { return conditional_; }
  std::size_t dof() const noexcept { return dof_; }
  std::size_t input_count() const noexcept { return prior_.size(); }
  std::size_t output_count() const noexcept { return conditional_.front().size(); }

  DiscreteChannel with_prior(std::vector<double> prior) const;
  std::vector<double> output_distribution() const;

 private:
  std::vector<double> prior_;
  std::vector<std::vector<double>> conditional_;
  std::size_t dof_;
};

enum class EstimateMethod { exact, monte_carlo, counting };
enum class BoundDirection { exact, lower, upper };

std::string_view to_string(EstimateMethod method);
std::string_view to_string(BoundDirection bound);

struct MIEstimate {
  double bits_per_dof = 0.0;
  double std_error = 0.0;
  EstimateMethod method = EstimateMethod::exact;
  BoundDirection bound = BoundDirection::exact;
  std::size_t samples = 0;
  std::size_t workers = 1;
};

// -sum p log2 p, skipping zero entries.
double entropy_bits(std::span<const double> pmf);

// [H(Y) - H(Y|X)] / dof from the pmf tables.
MIEstimate exact_mi(const DiscreteChannel& channel);

// -- Coherent versus direct detection on one discretized channel -----------

using OutputKey = std::vector<std::int64_t>;

// Maps a received waveform to a discrete output symbol for each receiver.
struct ReceiverQuantizer {
  std::function<OutputKey(const PeriodicSignal&)> coherent;
  std::function<OutputKey(const PeriodicSignal&)> direct;
};

// Direct output: the rate-2B intensity samples rounded to multiples of
// intensity_bin. Coherent output: that key plus one bit per zero slot (M - 1
// of them, in zero order) marking zeros inside the unit circle. A waveform is
// fixed modulo global phase by its intensity and the side of each zero, and
// any one direct output admits at most 2^(M-1) coherent outputs.
ReceiverQuantizer fiber_quantizer(double intensity_bin);

// `count` equiprobable in-band noise realizations (M time samples each) with
// per-sample variance `variance`.
std::vector<ComplexVector> noise_codebook(std::size_t M, double variance, std::size_t count,
                                          std::uint64_t seed);

struct ChainDiscretization {
  ReceiverQuantizer quantizer;
  std::vector<ComplexVector> noise;  // empty: noiseless channel
};

struct ChannelPair {
  std::vector<PeriodicSignal> inputs;  // phase-canonicalized
  DiscreteChannel coherent;            // X -> Y'
  DiscreteChannel direct;              // X -> Y
  std::size_t max_fiber = 0;           // most Y' values sharing one Y value
};

// Tabulates both channels exactly over the noise codebook. Inputs are
// phase-canonicalized first. Throws DomainError when the quantizer makes Y
// something other than a function of Y'.
ChannelPair discretize_channels(std::span<const PeriodicSignal> inputs, std::span<const double> prior,
                                const ChainDiscretization& discretization);

struct ChainBoundReport {
  MIEstimate coherent;  // I(X;Y')
  MIEstimate direct;    // I(X;Y)
  double gap = 0.0;     // I(X;Y') - I(X;Y), bits per dof
  double bound = 0.0;   // (M - 1) / M
  std::size_t coherent_outputs = 0;
  std::size_t direct_outputs = 0;
  std::size_t max_fiber = 0;
  bool holds = false;  // 0 <= gap <= bound within 1e-9
};

ChainBoundReport chain_bound_check(const ChannelPair& channels);
ChainBoundReport chain_bound_check(std::span<const PeriodicSignal> inputs,
                                   std::span<const double> prior,
                                   const ChainDiscretization& discretization);

struct CapacitySearch {
  std::vector<double> prior;
  double bits_per_dof = 0.0;
};

// Maximizes exact_mi over priors on a simplex grid with the given step.
// Limited to at most 5 inputs and M <= 2; larger channels throw DomainError.
CapacitySearch capacity_grid_search(const DiscreteChannel& channel, double step = 0.05);

// -- Noiseless counting over a constellation --------------------------------

struct CountingReport {
  std::size_t dof = 0;
  std::size_t sequences = 0;             // |constellation|^M
  std::size_t distinct_waveforms = 0;    // after canonicalization
  std::size_t distinct_intensities = 0;
  double coherent_entropy_bits = 0.0;    // H(Y'), uniform over distinct waveforms
  double direct_entropy_bits = 0.0;      // H(Y)
  double gap_bits = 0.0;                 // H(Y') - H(Y), total
  double gap_bits_per_dof = 0.0;
  std::size_t max_fiber = 0;             // largest intensity class
  bool holds = false;                    // gap <= M-1 and max_fiber <= 2^(M-1)
};

// Enumerates constellation^M sample sequences (at most 1e6). Waveforms and
// intensities are clustered at `tolerance` (relative to the constellation
// scale); two outputs closer than 10x tolerance that are not merged raise
// DomainError.
CountingReport counting_entropy(std::span<const Complex> constellation, std::size_t M,
                                double tolerance = 1e-9);

// -- Monte-Carlo estimates --------------------------------------------------

enum class Receiver { coherent, direct, intensity };
std::string_view to_string(Receiver receiver);

struct InputModel {
  enum class Kind { gaussian, constellation };
  Kind kind = Kind::gaussian;
  ComplexVector points;   // constellation points, rescaled to unit mean power
  std::size_t block = 1;  // degrees of freedom per block (direct receiver)
};

// Monte-Carlo mutual information in bits per complex degree of freedom.
//  - coherent: exact Gaussian or Gaussian-mixture densities per dof.
//  - intensity: exact noncentral chi-square densities per rate-B sample.
//  - direct + constellation: auxiliary-channel lower bound over blocks of
//    `block` dofs, with independent Gaussian q(y|x) on the 2M intensity
//    samples; reported with BoundDirection::lower.
// Global phase is not quotiented here; its share of a dof vanishes as M grows.
// Workers split the samples; results are reproducible for a fixed
// (seed, n_samples, workers). Throws InputError for n_samples < 1e4 and
// DomainError for direct detection with Gaussian input.
MIEstimate mc_mi(Receiver receiver, const InputModel& input, const NoiseSpec& noise,
                 std::size_t n_samples, std::size_t workers = 1);

}  // namespace ddcap
