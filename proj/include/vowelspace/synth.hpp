#pragma once

#include <cstdint>
#include <vector>

#include "vowelspace/audio.hpp"

namespace vowelspace {

struct Resonance {
  double frequency_hz = 0.0;
  double bandwidth_hz = 0.0;
};

enum class Excitation { ImpulseTrain, Noise };

// Source-filter vowel description with exactly known formants.
struct VowelSpec {
  double f0_hz = 120.0;
  std::vector<Resonance> formants;
  double duration_s = 1.0;
  int sample_rate = 16000;
  Excitation excitation = Excitation::ImpulseTrain;
  std::uint64_t seed = 0;
  // Glottal -12 dB/oct source slope and +6 dB/oct lip radiation around the
  // resonator cascade. Off leaves a flat excitation spectrum.
  bool source_shaping = true;
};

void validate(const VowelSpec& spec);

// Excitation through a cascade of two-pole resonators, peak-normalized to 0.9.
// Deterministic for a given spec (including seed under noise excitation).
AudioBuffer synth_vowel(const VowelSpec& spec);

// Vowel, gap_s of digital silence, then tail_s of the same vowel.
AudioBuffer synth_utterance_with_gap(const VowelSpec& spec, double gap_s, double tail_s);

// Two-pole resonator denominator coefficients {1, a1, a2}.
std::vector<double> resonator_polynomial(const Resonance& r, int sample_rate);

}  // namespace vowelspace
