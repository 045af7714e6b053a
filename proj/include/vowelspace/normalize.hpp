#pragma once

#include <span>
#include <string>

#include "vowelspace/formant.hpp"

namespace vowelspace {

// Per-speaker Lobanov parameters: population mean and SD of each formant.
struct SpeakerNormStats {
  std::string speaker_id;
  double mean_f1 = 0.0;
  double mean_f2 = 0.0;
  double sd_f1 = 0.0;
  double sd_f2 = 0.0;
  std::size_t n = 0;
};

// Lobanov z-scored vowel-space coordinates.
struct NormalizedPoint {
  double z1 = 0.0;
  double z2 = 0.0;

  bool operator==(const NormalizedPoint&) const = default;
};

// Throws InsufficientData for fewer than two realizations and ZeroVariance
// when either formant is constant.
SpeakerNormStats speaker_stats(std::span<const FormantPair> realizations, std::string speaker_id = {});

NormalizedPoint lobanov(const FormantPair& point, const SpeakerNormStats& stats);

}  // namespace vowelspace
