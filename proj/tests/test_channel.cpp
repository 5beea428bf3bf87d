#include <gtest/gtest.h>

#include <cmath>

#include "ddcap/channel.hpp"
#include "ddcap/error.hpp"
#include "ddcap/zeros.hpp"
#include "oracles.hpp"

using namespace ddcap;
using oracle::CVec;
using oracle::Gen;
using oracle::kPi;

namespace {

double binary_entropy(double p) { return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p); }

CVec psk(int order, double phase = 0.0) {
  CVec out;
  for (int k = 0; k < order; ++k) out.push_back(std::polar(1.0, phase + 2.0 * kPi * k / order));
  return out;
}

std::vector<PeriodicSignal> all_sequences(const CVec& constellation, std::size_t M) {
  std::vector<PeriodicSignal> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < M; ++i) total *= constellation.size();
  for (std::size_t idx = 0; idx < total; ++idx) {
    CVec s(M);
    std::size_t rest = idx;
    for (auto& v : s) {
      v = constellation[rest % constellation.size()];
      rest /= constellation.size();
    }
    out.emplace_back(1.0, s);
  }
  return out;
}

std::vector<double> uniform(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

}  // namespace

// -- noise and receivers -------------------------------------------------------

TEST(Noise, InfiniteSnrIsNoiseless) {
  const auto sig = random_signal(6, 1.0, 61);
  const auto out = apply_noise(sig, {std::numeric_limits<double>::infinity(), 3});
  for (std::size_t n = 0; n < 6; ++n) EXPECT_EQ(out[n], sig[n]);
}

TEST(Noise, DeterministicInSeed) {
  const auto sig = random_signal(6, 1.0, 62);
  const auto a = apply_noise(sig, {5.0, 17});
  const auto b = apply_noise(sig, {5.0, 17});
  const auto c = apply_noise(sig, {5.0, 18});
  for (std::size_t n = 0; n < 6; ++n) EXPECT_EQ(a[n], b[n]);
  EXPECT_GT(phase_distance(a, c), 0.0);
}

TEST(Noise, EmpiricalVarianceMatchesSnr) {
  const auto sig = random_signal(4, 1.0, 63);
  const double snr = 7.0;
  double acc = 0.0;
  const int draws = 100000 / 4;
  for (int d = 0; d < draws; ++d) {
    const auto noisy = apply_noise(sig, {snr, static_cast<std::uint64_t>(d)});
    for (std::size_t n = 0; n < 4; ++n) acc += std::norm(noisy[n] - sig[n]);
  }
  const double variance = acc / (4.0 * draws);
  EXPECT_NEAR(variance, energy(sig) / snr, 0.02 * energy(sig) / snr);
}

TEST(Noise, RejectsBadInput) {
  EXPECT_THROW(apply_noise(PeriodicSignal(1.0, ComplexVector(3)), {1.0, 0}), InputError);
  EXPECT_THROW(apply_noise(random_signal(3, 1.0, 1), {0.0, 0}), InputError);
  EXPECT_THROW(apply_noise(random_signal(3, 1.0, 1), {-2.0, 0}), InputError);
}

TEST(Receivers, ConstantSignal) {
  const PeriodicSignal c(1.0, ComplexVector(3, Complex(0.0, 2.0)));
  for (double v : detect_direct(c)) EXPECT_NEAR(v, 4.0, 1e-14);
  for (double v : detect_intensity_channel(c)) EXPECT_NEAR(v, 4.0, 1e-14);
  for (const auto& v : detect_coherent(c)) EXPECT_EQ(v, Complex(0.0, 2.0));
}

TEST(Receivers, CoherentMatchesFieldAtSampleTimes) {
  const auto sig = random_signal(7, 2.0, 64);
  const auto spec = samples_to_spectrum(sig);
  const auto y = detect_coherent(sig);
  for (std::size_t n = 0; n < 7; ++n) EXPECT_LT(std::abs(y[n] - evaluate_field(spec, n / 2.0)), 1e-12);
}

TEST(Receivers, DirectGridLayout) {
  const auto sig = random_signal(5, 1.0, 65);
  const auto direct = detect_direct(sig);
  const auto legacy = detect_intensity_channel(sig);
  ASSERT_EQ(direct.size(), 10u);
  ASSERT_EQ(legacy.size(), 5u);
  for (std::size_t n = 0; n < 5; ++n) {
    EXPECT_NEAR(direct[2 * n], std::norm(sig[n]), 1e-13);
    EXPECT_NEAR(legacy[n], direct[2 * n], 1e-13);
  }
}

TEST(Receivers, OddEntriesMatchHalfSampleOracle) {
  const auto sig = random_signal(4, 1.0, 66);
  const auto direct = detect_direct(sig);
  for (std::ptrdiff_t n = 0; n < 4; ++n) {
    const double approx = half_sample_intensity_oracle(periodic_baseband_copy(sig, n, 10000), n, 10000);
    EXPECT_NEAR(direct[static_cast<std::size_t>(2 * n + 1)], approx, 1e-3);
  }
}

TEST(Receivers, IntensityChannelCannotSeeFlips) {
  const auto fam = enumerate_family(random_signal(4, 1.0, 67));
  const auto ref = detect_intensity_channel(fam.members[0].signal);
  for (const auto& m : fam.members) {
    EXPECT_LT(oracle::max_abs_diff(detect_intensity_channel(m.signal), ref), 1e-10);
    EXPECT_LT(oracle::max_abs_diff(detect_direct(m.signal), detect_direct(fam.members[0].signal)), 1e-10);
  }
}

// -- exact tables --------------------------------------------------------------

TEST(ExactMi, NoiselessIdentity) {
  std::vector<std::vector<double>> table(4, std::vector<double>(4, 0.0));
  for (int i = 0; i < 4; ++i) table[i][i] = 1.0;
  const auto mi = exact_mi(DiscreteChannel(uniform(4), table, 1));
  EXPECT_NEAR(mi.bits_per_dof, 2.0, 1e-15);
  EXPECT_EQ(mi.std_error, 0.0);
  EXPECT_EQ(mi.method, EstimateMethod::exact);
}

TEST(ExactMi, IndependentOutput) {
  const std::vector<std::vector<double>> table(3, {0.2, 0.5, 0.3});
  EXPECT_NEAR(exact_mi(DiscreteChannel({0.1, 0.6, 0.3}, table, 2)).bits_per_dof, 0.0, 1e-15);
}

TEST(ExactMi, BinarySymmetricChannel) {
  const double p = 0.11;
  const DiscreteChannel bsc(uniform(2), {{1 - p, p}, {p, 1 - p}}, 1);
  EXPECT_NEAR(exact_mi(bsc).bits_per_dof, 1.0 - binary_entropy(p), 1e-14);
  EXPECT_NEAR(exact_mi(bsc).bits_per_dof, 0.5, 0.001);
}

TEST(ExactMi, RejectsInvalidPmf) {
  EXPECT_THROW(DiscreteChannel({0.5, 0.6}, {{1.0}, {1.0}}, 1), InputError);
  EXPECT_THROW(DiscreteChannel({0.5, 0.5}, {{0.9, 0.2}, {0.5, 0.5}}, 1), InputError);
  EXPECT_THROW(DiscreteChannel({1.0}, {{1.5, -0.5}}, 1), InputError);
  EXPECT_THROW(DiscreteChannel({0.5, 0.5}, {{1.0}}, 1), InputError);
  EXPECT_THROW(DiscreteChannel({1.0}, {{1.0}}, 0), InputError);
}

TEST(ExactMi, BoundedAndReproducibleOnRandomTables) {
  Gen gen(68);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t nx = static_cast<std::size_t>(gen.integer(1, 6));
    const std::size_t ny = static_cast<std::size_t>(gen.integer(1, 6));
    const std::size_t dof = static_cast<std::size_t>(gen.integer(1, 3));
    auto random_pmf = [&](std::size_t n) {
      std::vector<double> p(n);
      double total = 0.0;
      for (auto& v : p) total += v = gen.uniform(0.0, 1.0);
      for (auto& v : p) v /= total;
      return p;
    };
    std::vector<std::vector<double>> table;
    for (std::size_t x = 0; x < nx; ++x) table.push_back(random_pmf(ny));
    const DiscreteChannel ch(random_pmf(nx), table, dof);
    const auto a = exact_mi(ch).bits_per_dof;
    EXPECT_GE(a, -1e-12);
    EXPECT_LE(a, std::log2(static_cast<double>(nx)) / dof + 1e-12);
    EXPECT_EQ(a, exact_mi(ch).bits_per_dof);
  }
}

// -- chain-rule bound ----------------------------------------------------------

TEST(ChainBound, QpskTwoSamplesNoiseless) {
  const auto inputs = all_sequences(psk(4, kPi / 4), 2);
  const ChainDiscretization disc{fiber_quantizer(1e-6), {}};
  const auto report = chain_bound_check(inputs, uniform(inputs.size()), disc);
  EXPECT_TRUE(report.holds);
  EXPECT_LE(report.gap, 0.5 + 1e-9);
  EXPECT_GE(report.gap, -1e-9);
  EXPECT_LE(report.max_fiber, 2u);
}

TEST(ChainBound, SingleSampleHasNoGap) {
  for (const auto& constellation : {psk(2), psk(4), psk(8), CVec{1.0, 2.0, Complex(0.0, 3.0), Complex(-1.0, 1.0)}}) {
    const auto inputs = all_sequences(constellation, 1);
    const ChainDiscretization disc{fiber_quantizer(1e-6), {}};
    const auto report = chain_bound_check(inputs, uniform(inputs.size()), disc);
    EXPECT_EQ(report.gap, 0.0);
    EXPECT_EQ(report.bound, 0.0);
    EXPECT_TRUE(report.holds);
  }
}

TEST(ChainBound, SingleSampleNoisyHasNoGap) {
  const auto inputs = all_sequences(CVec{1.0, 2.0, Complex(0.0, 3.0)}, 1);
  const ChainDiscretization disc{fiber_quantizer(0.25), noise_codebook(1, 0.3, 200, 5)};
  const auto report = chain_bound_check(inputs, uniform(inputs.size()), disc);
  EXPECT_NEAR(report.gap, 0.0, 1e-12);
}

TEST(ChainBound, EqualIntensityFamilyAchievesGap) {
  const auto fam = enumerate_family(random_signal(4, 1.0, 69));
  ASSERT_EQ(fam.members.size(), 8u);
  std::vector<PeriodicSignal> inputs;
  for (const auto& m : fam.members) inputs.push_back(m.signal);
  const ChainDiscretization disc{fiber_quantizer(1e-6), {}};
  const auto report = chain_bound_check(inputs, uniform(8), disc);
  EXPECT_NEAR(report.direct.bits_per_dof, 0.0, 1e-12);
  EXPECT_NEAR(report.coherent.bits_per_dof, 0.75, 1e-12);
  EXPECT_NEAR(report.gap, report.bound, 1e-12);
  EXPECT_EQ(report.max_fiber, 8u);
  EXPECT_TRUE(report.holds);
}

TEST(ChainBound, RejectsQuantizerWhereDirectIsNotAFunction) {
  ReceiverQuantizer bad;
  bad.coherent = [](const PeriodicSignal&) { return OutputKey{0}; };
  bad.direct = [](const PeriodicSignal& w) { return OutputKey{std::llround(detect_direct(w)[0] * 10)}; };
  const std::vector<PeriodicSignal> inputs{PeriodicSignal(1.0, {1.0, 1.0}), PeriodicSignal(1.0, {2.0, 1.0})};
  EXPECT_THROW(discretize_channels(inputs, uniform(2), {bad, {}}), DomainError);
}

TEST(ChainBound, SandwichOnNoisyDiscreteChannels) {
  Gen gen(70);
  const std::vector<CVec> constellations{psk(2), psk(4, kPi / 4), CVec{1.0, -1.0, Complex(0.0, 2.0)},
                                         CVec{0.5, 1.5, Complex(1.0, 1.0), Complex(-1.0, 0.5)}};
  for (std::size_t M = 1; M <= 3; ++M) {
    for (const auto& constellation : constellations) {
      const auto inputs = all_sequences(constellation, M);
      for (double variance : {0.05, 0.3}) {
        const ChainDiscretization disc{fiber_quantizer(std::sqrt(variance) / 4.0),
                                       noise_codebook(M, variance, 40, gen.seed())};
        const auto channels = discretize_channels(inputs, uniform(inputs.size()), disc);
        const auto report = chain_bound_check(channels);
        EXPECT_TRUE(report.holds) << "M=" << M << " gap=" << report.gap;
        // Data processing: Y is a function of Y'.
        EXPECT_LE(report.direct.bits_per_dof, report.coherent.bits_per_dof + 1e-9);
        EXPECT_GE(report.direct.bits_per_dof, report.coherent.bits_per_dof - (M - 1.0) / M - 1e-9);
        EXPECT_LE(report.max_fiber, std::size_t{1} << (M - 1));
      }
    }
  }
}

TEST(ChainBound, DataProcessingUnderRandomPriors) {
  Gen gen(71);
  const auto inputs = all_sequences(psk(4, kPi / 4), 2);
  const ChainDiscretization disc{fiber_quantizer(0.05), noise_codebook(2, 0.2, 60, 7)};
  const auto channels = discretize_channels(inputs, uniform(inputs.size()), disc);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> prior(inputs.size());
    double total = 0.0;
    for (auto& p : prior) total += p = gen.uniform(0.0, 1.0);
    for (auto& p : prior) p /= total;
    const double coherent = exact_mi(channels.coherent.with_prior(prior)).bits_per_dof;
    const double direct = exact_mi(channels.direct.with_prior(prior)).bits_per_dof;
    EXPECT_LE(direct, coherent + 1e-9);
    EXPECT_GE(direct, coherent - 0.5 - 1e-9);
  }
}

TEST(ChainBound, CapacityAchievingPriorTransfers) {
  // Five inputs with M = 2: exhaustive prior search is in scope.
  const std::vector<PeriodicSignal> inputs{
      PeriodicSignal(1.0, {1.0, 1.0}), PeriodicSignal(1.0, {1.0, -1.0}),
      PeriodicSignal(1.0, {1.0, Complex(0.0, 1.0)}), PeriodicSignal(1.0, {2.0, 0.5}),
      PeriodicSignal(1.0, {0.3, Complex(-1.0, 1.0)})};
  const ChainDiscretization disc{fiber_quantizer(0.1), noise_codebook(2, 0.25, 60, 11)};
  const auto channels = discretize_channels(inputs, uniform(5), disc);
  const auto cc = capacity_grid_search(channels.coherent);
  double total = 0.0;
  for (double p : cc.prior) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_GE(cc.bits_per_dof, exact_mi(channels.coherent).bits_per_dof - 1e-12);
  const double direct = exact_mi(channels.direct.with_prior(cc.prior)).bits_per_dof;
  EXPECT_LE(direct, cc.bits_per_dof + 1e-9);
  EXPECT_GE(direct, cc.bits_per_dof - 0.5 - 1e-9);
}

TEST(ChainBound, CapacitySearchScope) {
  const DiscreteChannel six(uniform(6), std::vector<std::vector<double>>(6, {1.0}), 1);
  EXPECT_THROW(capacity_grid_search(six), DomainError);
  const DiscreteChannel deep(uniform(2), {{1.0, 0.0}, {0.0, 1.0}}, 3);
  EXPECT_THROW(capacity_grid_search(deep), DomainError);
  const DiscreteChannel bsc(uniform(2), {{0.9, 0.1}, {0.1, 0.9}}, 1);
  const auto best = capacity_grid_search(bsc);
  EXPECT_NEAR(best.prior[0], 0.5, 1e-12);
  EXPECT_NEAR(best.bits_per_dof, 1.0 - binary_entropy(0.1), 1e-12);
}

TEST(NoiseCodebook, DeterministicWithRequestedVariance) {
  const auto a = noise_codebook(3, 0.5, 4000, 9);
  const auto b = noise_codebook(3, 0.5, 4000, 9);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t n = 0; n < 3; ++n) {
      EXPECT_EQ(a[i][n], b[i][n]);
      acc += std::norm(a[i][n]);
    }
  }
  EXPECT_NEAR(acc / (3.0 * 4000), 0.5, 0.025);
}

// -- counting ------------------------------------------------------------------

TEST(Counting, EightPskSingleSampleCollapses) {
  const auto r = counting_entropy(psk(8), 1);
  EXPECT_EQ(r.sequences, 8u);
  EXPECT_EQ(r.distinct_waveforms, 1u);
  EXPECT_EQ(r.coherent_entropy_bits, 0.0);
  EXPECT_EQ(r.direct_entropy_bits, 0.0);
  EXPECT_TRUE(r.holds);
}

TEST(Counting, QpskTwoSamples) {
  const auto r = counting_entropy(psk(4, kPi / 4), 2);
  EXPECT_EQ(r.sequences, 16u);
  // Canonicalization leaves 4 waveforms: the relative phase of the samples.
  EXPECT_EQ(r.distinct_waveforms, 4u);
  EXPECT_LE(r.max_fiber, 2u);
  EXPECT_LE(r.gap_bits_per_dof, 0.5 + 1e-12);
  EXPECT_TRUE(r.holds);
}

TEST(Counting, RealBpskThreeSamples) {
  const auto r = counting_entropy(psk(2), 3);
  EXPECT_EQ(r.sequences, 8u);
  EXPECT_LE(r.gap_bits, 2.0 + 1e-12);
  EXPECT_LE(r.max_fiber, 4u);
  EXPECT_TRUE(r.holds);
}

TEST(Counting, MatchesBruteForcePairwiseComparison) {
  // Oracle: quadratic pairwise comparison of canonical waveforms and intensities.
  const CVec constellation{1.0, -1.0, Complex(0.0, 1.0)};
  const std::size_t M = 3;
  const auto r = counting_entropy(constellation, M);
  std::vector<PeriodicSignal> reps;
  for (const auto& s : all_sequences(constellation, M)) {
    bool fresh = true;
    for (const auto& q : reps) fresh = fresh && phase_distance(s, q) > 1e-12;
    if (fresh) reps.push_back(s);
  }
  EXPECT_EQ(r.distinct_waveforms, reps.size());
  std::vector<std::vector<double>> classes;
  std::vector<std::size_t> counts;
  for (const auto& s : reps) {
    const auto I = detect_direct(s);
    std::size_t c = 0;
    while (c < classes.size() && oracle::max_abs_diff(classes[c], I) > 1e-9) ++c;
    if (c == classes.size()) {
      classes.push_back(I);
      counts.push_back(0);
    }
    ++counts[c];
  }
  EXPECT_EQ(r.distinct_intensities, classes.size());
  double h = 0.0;
  for (std::size_t c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(reps.size());
    h -= p * std::log2(p);
  }
  EXPECT_NEAR(r.direct_entropy_bits, h, 1e-12);
  EXPECT_NEAR(r.coherent_entropy_bits, std::log2(static_cast<double>(reps.size())), 1e-12);
}

TEST(Counting, AmbiguousClusterRaises) {
  const CVec close{1.0, 1.0 + 5e-9};
  EXPECT_THROW(counting_entropy(close, 1), DomainError);
}

TEST(Counting, RejectsOversizedEnumeration) {
  EXPECT_THROW(counting_entropy(psk(16), 5), InputError);
  EXPECT_THROW(counting_entropy(CVec{}, 2), InputError);
}

// -- Monte Carlo ---------------------------------------------------------------

TEST(MonteCarlo, CoherentGaussianMatchesClosedForm) {
  for (double snr : {3.0, 10.0}) {
    const auto est = mc_mi(Receiver::coherent, {}, {snr, 5}, 100000);
    EXPECT_NEAR(est.bits_per_dof, std::log2(1.0 + snr), 0.02 * std::log2(1.0 + snr));
    EXPECT_EQ(est.method, EstimateMethod::monte_carlo);
    EXPECT_EQ(est.bound, BoundDirection::exact);
  }
}

TEST(MonteCarlo, ZeroSnrCarriesNothing) {
  EXPECT_NEAR(mc_mi(Receiver::coherent, {}, {0.0, 5}, 10000).bits_per_dof, 0.0, 1e-12);
  EXPECT_NEAR(mc_mi(Receiver::intensity, {}, {0.0, 5}, 10000).bits_per_dof, 0.0, 1e-12);
}

TEST(MonteCarlo, Preconditions) {
  EXPECT_THROW(mc_mi(Receiver::coherent, {}, {1.0, 5}, 9999), InputError);
  EXPECT_THROW(mc_mi(Receiver::direct, {}, {1.0, 5}, 10000), DomainError);
  EXPECT_THROW(mc_mi(Receiver::coherent, {}, {-1.0, 5}, 10000), InputError);
}

TEST(MonteCarlo, ConstellationSaturatesAtHighSnr) {
  InputModel qpsk{InputModel::Kind::constellation, psk(4, kPi / 4), 1};
  const auto est = mc_mi(Receiver::coherent, qpsk, {1000.0, 6}, 20000);
  EXPECT_NEAR(est.bits_per_dof, 2.0, 0.01);
  // Intensity only sees |x|, constant for PSK.
  EXPECT_NEAR(mc_mi(Receiver::intensity, qpsk, {1000.0, 6}, 20000).bits_per_dof, 0.0, 1e-9);
}

TEST(MonteCarlo, IntensityHalfBitPerOctave) {
  const auto hi = mc_mi(Receiver::intensity, {}, {16384.0, 8}, 100000);
  const auto lo = mc_mi(Receiver::intensity, {}, {4096.0, 8}, 100000);
  EXPECT_NEAR(hi.bits_per_dof - lo.bits_per_dof, 1.0, 0.2);
  const auto chi = mc_mi(Receiver::coherent, {}, {16384.0, 8}, 100000);
  const auto clo = mc_mi(Receiver::coherent, {}, {4096.0, 8}, 100000);
  EXPECT_NEAR(chi.bits_per_dof - clo.bits_per_dof, 2.0, 0.2);
}

TEST(MonteCarlo, StandardErrorScalesAsInverseRootN) {
  const auto a = mc_mi(Receiver::coherent, {}, {10.0, 12}, 10000);
  const auto b = mc_mi(Receiver::coherent, {}, {10.0, 12}, 40000);
  const auto c = mc_mi(Receiver::coherent, {}, {10.0, 12}, 160000);
  for (double ratio : {a.std_error / b.std_error, b.std_error / c.std_error}) {
    EXPECT_GT(ratio, 2.0 / 1.5);
    EXPECT_LT(ratio, 2.0 * 1.5);
  }
}

TEST(MonteCarlo, ReproducibleForFixedWorkers) {
  const auto a = mc_mi(Receiver::coherent, {}, {4.0, 21}, 20000, 3);
  const auto b = mc_mi(Receiver::coherent, {}, {4.0, 21}, 20000, 3);
  EXPECT_EQ(a.bits_per_dof, b.bits_per_dof);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.workers, 3u);
  EXPECT_EQ(a.samples, 20000u);
  const auto c = mc_mi(Receiver::coherent, {}, {4.0, 21}, 20000, 1);
  EXPECT_NEAR(a.bits_per_dof, c.bits_per_dof, 5.0 * (a.std_error + c.std_error));
}

TEST(MonteCarlo, DirectLowerBoundSitsBelowCoherent) {
  InputModel bpsk{InputModel::Kind::constellation, {1.0, -1.0}, 3};
  for (double snr : {1.0, 10.0}) {
    const auto direct = mc_mi(Receiver::direct, bpsk, {snr, 31}, 20000);
    EXPECT_EQ(direct.bound, BoundDirection::lower);
    bpsk.block = 3;
    const auto coherent = mc_mi(Receiver::coherent, bpsk, {snr, 31}, 20000);
    EXPECT_LE(direct.bits_per_dof, coherent.bits_per_dof + 3.0 * (direct.std_error + coherent.std_error));
    EXPECT_GE(direct.bits_per_dof, -3.0 * direct.std_error);
  }
}

TEST(MonteCarlo, DirectBlockCap) {
  InputModel big{InputModel::Kind::constellation, psk(8), 5};
  EXPECT_THROW(mc_mi(Receiver::direct, big, {1.0, 1}, 10000), DomainError);
}

TEST(Names, StableStrings) {
  EXPECT_EQ(to_string(EstimateMethod::monte_carlo), "monte_carlo");
  EXPECT_EQ(to_string(BoundDirection::lower), "lower");
  EXPECT_EQ(to_string(Receiver::intensity), "intensity");
}
