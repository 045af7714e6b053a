#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace vowelspace {

// Mono PCM signal. Samples are finite and nominally in [-1, 1].
class AudioBuffer {
 public:
  AudioBuffer(std::vector<float> samples, int sample_rate);

  std::span<const float> samples() const noexcept { return samples_; }
  int sample_rate() const noexcept { return sample_rate_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  double duration_s() const noexcept {
    return static_cast<double>(samples_.size()) / sample_rate_;
  }

  AudioBuffer scaled(float gain) const;

  bool operator==(const AudioBuffer&) const = default;

 private:
  std::vector<float> samples_;
  int sample_rate_;
};

enum class WavEncoding { Pcm16, Float32 };

// Reads RIFF/WAVE PCM16 or IEEE float32, mono or stereo. Stereo is
// downmixed by channel mean; PCM16 is scaled by 1/32768.
AudioBuffer load_audio(const std::filesystem::path& path);

void save_audio(const AudioBuffer& buffer, const std::filesystem::path& path,
                WavEncoding encoding = WavEncoding::Pcm16);

// Windowed-sinc resampler (Hann window, 16 zero crossings per side).
// Output length is round(n * target_rate / rate).
AudioBuffer resample(const AudioBuffer& buffer, int target_rate);

struct FrameLayout {
  std::size_t frame_len = 0;
  std::size_t hop = 0;
  std::size_t count = 0;

  std::size_t start(std::size_t k) const noexcept { return k * hop; }
};

std::size_t ms_to_samples(double ms, int sample_rate);

FrameLayout frame_layout(std::size_t n_samples, std::size_t frame_len,
                         std::size_t hop);

// Full frames only; the trailing partial frame is dropped.
std::vector<std::span<const float>> frames(const AudioBuffer& buffer,
                                           double frame_ms, double hop_ms);

}  // namespace vowelspace
