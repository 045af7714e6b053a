#include "vowelspace/segment.hpp"

#include <algorithm>
#include <cmath>

#include "vowelspace/error.hpp"

namespace vowelspace {

namespace {

std::size_t frames_for(double ms, double hop_ms) {
  const double count = std::ceil(ms / hop_ms - 1e-9);
  return count < 1.0 ? 1 : static_cast<std::size_t>(count);
}

}  // namespace

std::vector<double> frame_energy_db(const AudioBuffer& buffer, double frame_ms, double hop_ms) {
  if (buffer.empty()) {
    throw Error(ErrorKind::EmptyAudio, "cannot compute energy of an empty buffer");
  }
  const auto frame_list = frames(buffer, frame_ms, hop_ms);
  if (frame_list.empty()) {
    throw Error(ErrorKind::TooShort, "buffer shorter than one analysis frame");
  }
  std::vector<double> energies;
  energies.reserve(frame_list.size());
  for (const auto frame : frame_list) {
    double sum_sq = 0.0;
    for (float s : frame) sum_sq += static_cast<double>(s) * s;
    const double rms = std::max(std::sqrt(sum_sq / static_cast<double>(frame.size())), kRmsFloor);
    energies.push_back(20.0 * std::log10(rms));
  }
  return energies;
}

double percentile(std::vector<double> values, double pct) {
  if (values.empty()) throw Error(ErrorKind::EmptyList, "percentile of empty list");
  std::sort(values.begin(), values.end());
  const double rank = std::clamp(pct, 0.0, 100.0) / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

Segment first_segment(const AudioBuffer& buffer, const SegmentParams& params) {
  if (!(params.frame_ms > 0.0) || !(params.hop_ms > 0.0) || !(params.min_silence_ms > 0.0) ||
      !(params.min_voiced_ms > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "segmentation parameters must be positive");
  }
  const auto energies = frame_energy_db(buffer, params.frame_ms, params.hop_ms);
  const auto layout = frame_layout(buffer.size(), ms_to_samples(params.frame_ms, buffer.sample_rate()),
                                   ms_to_samples(params.hop_ms, buffer.sample_rate()));
  const std::size_t count = energies.size();

  const double loudest = *std::max_element(energies.begin(), energies.end());
  double floor = percentile(energies, 5.0);
  floor = std::min(floor, loudest - params.floor_headroom_db);
  floor = std::max(floor, kSilenceFloorDb);
  const double gate = floor + params.threshold_db;

  std::vector<bool> active(count);
  for (std::size_t k = 0; k < count; ++k) active[k] = energies[k] > gate;

  const std::size_t min_voiced = frames_for(params.min_voiced_ms, params.hop_ms);
  const std::size_t min_silence = frames_for(params.min_silence_ms, params.hop_ms);

  // Earliest active run that is long enough.
  std::size_t first = count;
  std::size_t last = count;
  for (std::size_t k = 0; k < count;) {
    if (!active[k]) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end + 1 < count && active[end + 1]) ++end;
    if (end - k + 1 >= min_voiced) {
      first = k;
      last = end;
      break;
    }
    k = end + 1;
  }
  if (first == count) {
    throw Error(ErrorKind::NoVoicedSegment, "no active run of at least " +
                                                std::to_string(params.min_voiced_ms) + " ms");
  }

  // Bridge short pauses until a long enough silence (or the end of the buffer).
  std::size_t k = last + 1;
  while (k < count) {
    std::size_t gap_end = k;
    while (gap_end < count && !active[gap_end]) ++gap_end;
    if (gap_end == count || gap_end - k >= min_silence) break;
    std::size_t run_end = gap_end;
    while (run_end + 1 < count && active[run_end + 1]) ++run_end;
    last = run_end;
    k = run_end + 1;
  }

  // The floor sits at least floor_headroom_db below the loudest frame, so a
  // frame turns active as soon as it overlaps the sound. The onset then lies
  // in the last hop of the first active frame and the offset in the first hop
  // of the last one; take the middle of each. Runs touching the buffer edges
  // extend to the edge.
  const std::size_t half_hop = layout.hop / 2;
  const std::size_t len = layout.frame_len;
  std::size_t start = layout.start(first) + (len > half_hop ? len - half_hop : 0);
  std::size_t end = layout.start(last) + half_hop;
  if (end <= start) {
    // Run shorter than the frame overhang (only with a tiny min_voiced_ms):
    // keep just its midpoint so lengths stay monotone in the run size.
    start = (start + end) / 2;
    end = start + 1;
  }
  Segment seg;
  seg.start_sample = first == 0 ? 0 : start;
  seg.end_sample = last + 1 == count ? buffer.size() : std::min(buffer.size(), end);
  if (seg.start_sample >= seg.end_sample) {
    throw Error(ErrorKind::NoVoicedSegment, "degenerate segment");
  }
  return seg;
}

}  // namespace vowelspace
