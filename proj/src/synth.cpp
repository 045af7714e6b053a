#include "vowelspace/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "vowelspace/error.hpp"

namespace vowelspace {

namespace {

constexpr double kPeak = 0.9;
constexpr double kGlottalPole = 0.97;

std::vector<double> excitation(const VowelSpec& spec, std::size_t n) {
  std::vector<double> x(n, 0.0);
  if (spec.excitation == Excitation::Noise) {
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (double& v : x) v = dist(rng);
    return x;
  }
  const double step = spec.f0_hz / spec.sample_rate;
  double phase = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (phase >= 1.0) {
      x[i] = 1.0;
      phase -= 1.0;
    }
    phase += step;
  }
  return x;
}

}  // namespace

void validate(const VowelSpec& spec) {
  if (spec.sample_rate <= 0) throw Error(ErrorKind::InvalidArgument, "sample_rate must be positive");
  if (!(spec.duration_s > 0.0)) throw Error(ErrorKind::InvalidArgument, "duration must be positive");
  if (!(spec.f0_hz >= 60.0 && spec.f0_hz <= 400.0)) {
    throw Error(ErrorKind::InvalidArgument, "f0 must lie in [60, 400] Hz");
  }
  if (spec.formants.size() < 2 || spec.formants.size() > 4) {
    throw Error(ErrorKind::InvalidArgument, "expected 2 to 4 formants");
  }
  double previous = 0.0;
  for (const auto& f : spec.formants) {
    if (!(f.frequency_hz > previous)) {
      throw Error(ErrorKind::InvalidArgument, "formant frequencies must be strictly increasing");
    }
    if (!(f.frequency_hz < spec.sample_rate / 2.0)) {
      throw Error(ErrorKind::InvalidArgument, "formant above Nyquist");
    }
    if (!(f.bandwidth_hz > 0.0)) throw Error(ErrorKind::InvalidArgument, "bandwidth must be positive");
    previous = f.frequency_hz;
  }
}

std::vector<double> resonator_polynomial(const Resonance& r, int sample_rate) {
  const double radius = std::exp(-std::numbers::pi * r.bandwidth_hz / sample_rate);
  const double theta = 2.0 * std::numbers::pi * r.frequency_hz / sample_rate;
  return {1.0, -2.0 * radius * std::cos(theta), radius * radius};
}

AudioBuffer synth_vowel(const VowelSpec& spec) {
  validate(spec);
  const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * spec.sample_rate));
  auto signal = excitation(spec, n);

  if (spec.source_shaping) {
    for (int pass = 0; pass < 2; ++pass) {
      double y = 0.0;
      for (double& v : signal) {
        y = (1.0 - kGlottalPole) * v + kGlottalPole * y;
        v = y;
      }
    }
  }

  for (const auto& formant : spec.formants) {
    const auto a = resonator_polynomial(formant, spec.sample_rate);
    const double gain = a[0] + a[1] + a[2];  // unity gain at DC
    double y1 = 0.0;
    double y2 = 0.0;
    for (double& v : signal) {
      const double y = gain * v - a[1] * y1 - a[2] * y2;
      y2 = y1;
      y1 = y;
      v = y;
    }
  }

  if (spec.source_shaping) {
    double previous = 0.0;
    for (double& v : signal) {
      const double x = v;
      v = x - previous;
      previous = x;
    }
  }

  double peak = 0.0;
  for (double v : signal) peak = std::max(peak, std::abs(v));
  std::vector<float> samples(n);
  const double scale = peak > 0.0 ? kPeak / peak : 0.0;
  for (std::size_t i = 0; i < n; ++i) samples[i] = static_cast<float>(signal[i] * scale);
  return AudioBuffer(std::move(samples), spec.sample_rate);
}

AudioBuffer synth_utterance_with_gap(const VowelSpec& spec, double gap_s, double tail_s) {
  if (!(gap_s >= 0.0) || !(tail_s >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "gap and tail durations must be non-negative");
  }
  const auto head = synth_vowel(spec);
  std::vector<float> samples(head.samples().begin(), head.samples().end());
  samples.resize(samples.size() + static_cast<std::size_t>(std::llround(gap_s * spec.sample_rate)), 0.0f);
  if (tail_s > 0.0) {
    VowelSpec tail_spec = spec;
    tail_spec.duration_s = tail_s;
    tail_spec.seed = spec.seed + 1;
    const auto tail = synth_vowel(tail_spec);
    samples.insert(samples.end(), tail.samples().begin(), tail.samples().end());
  }
  return AudioBuffer(std::move(samples), spec.sample_rate);
}

}  // namespace vowelspace
