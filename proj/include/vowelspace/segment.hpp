#pragma once

#include <cstddef>
#include <vector>

#include "vowelspace/audio.hpp"

namespace vowelspace {

// Half-open sample range [start_sample, end_sample).
struct Segment {
  std::size_t start_sample = 0;
  std::size_t end_sample = 0;

  std::size_t length() const noexcept { return end_sample - start_sample; }
  bool operator==(const Segment&) const = default;
};

struct SegmentParams {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  // Activity threshold above the estimated noise floor.
  double threshold_db = 10.0;
  double min_silence_ms = 50.0;
  double min_voiced_ms = 60.0;
  // The noise floor is never placed closer than this to the loudest frame,
  // so a buffer without any silence still reads as one voiced run.
  double floor_headroom_db = 30.0;
};

inline constexpr double kRmsFloor = 1e-8;
inline constexpr double kSilenceFloorDb = -160.0;

// 20*log10(RMS) per frame, RMS floored at 1e-8.
std::vector<double> frame_energy_db(const AudioBuffer& buffer, double frame_ms, double hop_ms);

// Linear-interpolated percentile (0..100) of the values.
double percentile(std::vector<double> values, double pct);

// Leading voiced segment up to the first silence boundary.
Segment first_segment(const AudioBuffer& buffer, const SegmentParams& params = {});

}  // namespace vowelspace
