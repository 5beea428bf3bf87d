#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ddcap/signal.hpp"
#include "ddcap/zeros.hpp"

namespace ddcap {

// Signal JSON: {"M": int, "B": float, "samples": [[re, im], ...]}.
// Doubles are written in shortest round-trip form, so write -> read is exact.
std::string signal_to_json(const PeriodicSignal& sig);
// Throws InputError on malformed text, a sample count that disagrees with M,
// or entries that are not [re, im] pairs.
PeriodicSignal signal_from_json(std::string_view text);

// Family JSON: {"base", "zeros", "on_circle", "members": [{"mask", "signal"}]}.
std::string family_to_json(const EqualIntensityFamily& family);

struct FamilyRecord {
  PeriodicSignal base;
  ComplexVector zeros;
  std::vector<bool> on_circle;
  std::vector<FamilyMember> members;
};

FamilyRecord family_from_json(std::string_view text);

// Intensity CSV: header "t,intensity", one row per grid point, %.17g.
std::string intensity_to_csv(const SampledIntensity& intensity);
// The rate is recovered from the spacing of the first two rows, which must
// start at t = 0 and be uniform.
SampledIntensity intensity_from_csv(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace ddcap
