#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ddcap/signal.hpp"

namespace ddcap {

// | |Z| - 1 | at or below this classifies a zero as lying on the unit circle.
inline constexpr double kUnitCircleTolerance = 1e-9;
// Off-circle zeros closer than this (relative to max(1, |Z|)) form one
// repeated-zero group.
inline constexpr double kRepeatedZeroSeparation = 1e-7;
inline constexpr int kDefaultEnumerationCap = 20;

enum class ZeroLocation { inside, on_circle, outside };

// Bit i selects zeros()[i].
using FlipMask = std::uint64_t;

// Zeros of A(Z) = leading * prod_k (Z - Z_k).
//
// Ordering is invariant under reflection Z -> 1/conj(Z), so a mask addresses
// the same zeros before and after a flip: reflectable off-circle zeros come
// first, then zeros at the origin, then on-circle zeros; within each class
// zeros are sorted by argument, then by |log|Z||.
class ZeroSet {
 public:
  ZeroSet(double angular_step, double period, Complex leading, std::vector<Complex> zeros);

  std::span<const Complex> zeros() const noexcept { return zeros_; }
  Complex leading() const noexcept { return leading_; }
  std::size_t degree() const noexcept { return zeros_.size(); }
  ZeroLocation location(std::size_t i) const { return locations_[i]; }
  bool at_origin(std::size_t i) const { return zeros_[i] == Complex{}; }
  // Off the circle and not at the origin; reflection keeps the degree.
  bool reflectable(std::size_t i) const;

  // N0: zeros not on the unit circle (zeros at the origin included).
  std::size_t off_circle_count() const noexcept;
  std::size_t on_circle_count() const noexcept;
  std::size_t reflectable_count() const noexcept { return reflectable_; }

  // Times t in [0, period) with E(t) = 0, one per on-circle zero, in zero order.
  std::vector<double> null_times() const;

  // Reflectable zeros grouped by kRepeatedZeroSeparation; each group lists
  // ascending indices into zeros(), groups ordered by their first index.
  const std::vector<std::vector<std::size_t>>& repeated_groups() const noexcept { return groups_; }

  // Expanded coefficients of leading * prod (Z - Z_k), length degree() + 1.
  ComplexVector coefficients() const;

 private:
  double angular_step_;
  double period_;
  Complex leading_;
  std::vector<Complex> zeros_;
  std::vector<ZeroLocation> locations_;
  std::size_t reflectable_ = 0;
  std::vector<std::vector<std::size_t>> groups_;
};

// Roots of sum_{k <= d} F_k Z^k with d the effective degree, by Aberth-Ehrlich
// iteration plus Newton polishing. Low-order coefficients below the degree
// tolerance are treated as exact zeros at the origin. Throws InputError on an
// identically zero polynomial and NumericalError when a root misses
//   |A(Z_k)| <= 1e-10 * max|F| * max(1, |Z_k|)^d.
ZeroSet find_zeros(const SpectralPoly& spec);

// Reflects each masked zero to 1/conj(Z_k) and rescales the leading
// coefficient by |Z_k|, which keeps |A| on the unit circle and makes the
// operation an exact involution. Throws DomainError when the mask touches an
// on-circle zero or a zero at the origin, InputError when it addresses a
// zero that does not exist.
SpectralPoly flip_zeros(const SpectralPoly& spec, FlipMask mask);
SpectralPoly flip_zeros(const SpectralPoly& spec, const ZeroSet& zeros, FlipMask mask);

struct FamilyMember {
  FlipMask mask = 0;
  PeriodicSignal signal;
};

// All distinguishable band-limited waveforms sharing one intensity.
struct EqualIntensityFamily {
  PeriodicSignal base;
  ZeroSet zeros;
  std::vector<FamilyMember> members;
};

// Enumerates every reflection pattern of the reflectable zeros. With simple
// zeros that is 2^N0 members with masks in binary counting order; a group of
// m repeated zeros contributes m + 1 patterns (reflect the first j copies)
// rather than 2^m near-identical ones. Members are phase-canonicalized.
// Throws DomainError when more than `cap` zeros are reflectable.
EqualIntensityFamily enumerate_family(const PeriodicSignal& sig, int cap = kDefaultEnumerationCap);

// Member with every reflectable zero outside the unit circle, canonicalized.
PeriodicSignal min_phase_member(const PeriodicSignal& sig);

// Period-M'/B signal whose samples are `payload` on a centred block and zero
// elsewhere. Throws InputError unless period_samples >= 4 * payload.size().
PeriodicSignal embed_finite_support(std::span<const Complex> payload, std::size_t period_samples,
                                    double bandwidth = 1.0);

// M samples of leading * prod (Z - z_k) at Z = exp(-i 2 pi n / M). Needs
// zeros.size() < M.
PeriodicSignal signal_from_zeros(std::span<const Complex> zeros, Complex leading, std::size_t M,
                                 double bandwidth = 1.0);

}  // namespace ddcap
