#include "vowelspace/audio.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>

#include "vowelspace/error.hpp"

namespace vowelspace {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;
constexpr int kSincHalfWidth = 16;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

AudioBuffer::AudioBuffer(std::vector<float> samples, int sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (sample_rate_ <= 0) {
    throw Error(ErrorKind::InvalidArgument, "sample rate must be positive");
  }
  for (float s : samples_) {
    if (!std::isfinite(s)) {
      throw Error(ErrorKind::InvalidArgument, "non-finite sample");
    }
  }
}

AudioBuffer AudioBuffer::scaled(float gain) const {
  std::vector<float> out(samples_);
  for (float& s : out) s *= gain;
  return AudioBuffer(std::move(out), sample_rate_);
}

AudioBuffer load_audio(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::MissingFile, path.string());
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorKind::UnsupportedFormat, path.string() + ": not RIFF/WAVE");
  }

  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t bits = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || available < 16) {
        throw Error(ErrorKind::UnsupportedFormat, path.string() + ": short fmt chunk");
      }
      const unsigned char* f = bytes.data() + body;
      format = read_u16(f);
      channels = read_u16(f + 2);
      rate = read_u32(f + 4);
      bits = read_u16(f + 14);
      if (format == kFormatExtensible && size >= 40 && available >= 40) {
        // First two bytes of the SubFormat GUID carry the real format tag.
        format = read_u16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = std::min<std::size_t>(size, available);
    }
    pos = body + size + (size & 1u);
  }

  if (!have_fmt || data == nullptr) {
    throw Error(ErrorKind::UnsupportedFormat, path.string() + ": missing fmt or data chunk");
  }
  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32) {
    throw Error(ErrorKind::UnsupportedFormat,
                path.string() + ": format tag " + std::to_string(format) + ", " +
                    std::to_string(bits) + " bits");
  }
  if (channels != 1 && channels != 2) {
    throw Error(ErrorKind::UnsupportedFormat,
                path.string() + ": " + std::to_string(channels) + " channels");
  }
  if (rate == 0) {
    throw Error(ErrorKind::UnsupportedFormat, path.string() + ": zero sample rate");
  }

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * channels;
  const std::size_t n = data_size / frame_bytes;
  if (n == 0) {
    throw Error(ErrorKind::EmptyAudio, path.string());
  }

  std::vector<float> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + i * frame_bytes + c * bytes_per_sample;
      if (pcm16) {
        acc += static_cast<std::int16_t>(read_u16(p)) / 32768.0;
      } else {
        const std::uint32_t raw = read_u32(p);
        float v;
        std::memcpy(&v, &raw, sizeof v);
        if (!std::isfinite(v)) {
          throw Error(ErrorKind::UnsupportedFormat, path.string() + ": non-finite sample");
        }
        acc += v;
      }
    }
    samples[i] = static_cast<float>(acc / channels);
  }
  return AudioBuffer(std::move(samples), static_cast<int>(rate));
}

void save_audio(const AudioBuffer& buffer, const std::filesystem::path& path,
                WavEncoding encoding) {
  const bool pcm = encoding == WavEncoding::Pcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(buffer.size() * (bits / 8));
  const auto rate = static_cast<std::uint32_t>(buffer.sample_rate());

  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  put_u32(out, 36 + data_size);
  out += "WAVEfmt ";
  put_u32(out, 16);
  put_u16(out, pcm ? kFormatPcm : kFormatFloat);
  put_u16(out, 1);
  put_u32(out, rate);
  put_u32(out, rate * (bits / 8));
  put_u16(out, bits / 8);
  put_u16(out, bits);
  out += "data";
  put_u32(out, data_size);
  for (float s : buffer.samples()) {
    if (pcm) {
      const double scaled = std::round(std::clamp(static_cast<double>(s), -1.0, 1.0) * 32768.0);
      const auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
      put_u16(out, static_cast<std::uint16_t>(v));
    } else {
      std::uint32_t raw;
      std::memcpy(&raw, &s, sizeof raw);
      put_u32(out, raw);
    }
  }

  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorKind::IoError, "cannot write " + path.string());
  }
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
}

AudioBuffer resample(const AudioBuffer& buffer, int target_rate) {
  if (target_rate <= 0) {
    throw Error(ErrorKind::InvalidArgument, "target rate must be positive");
  }
  if (target_rate == buffer.sample_rate()) return buffer;

  const auto in = buffer.samples();
  const double ratio = static_cast<double>(target_rate) / buffer.sample_rate();
  const auto n_out = static_cast<std::size_t>(
      std::llround(static_cast<double>(in.size()) * ratio));
  // Lowpass at the lower of the two Nyquist rates.
  const double cutoff = std::min(1.0, ratio);
  const double half_width = kSincHalfWidth / cutoff;
  const auto n_in = static_cast<std::ptrdiff_t>(in.size());

  std::vector<float> out(n_out);
  for (std::size_t j = 0; j < n_out; ++j) {
    const double t = static_cast<double>(j) / ratio;
    const auto lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::ceil(t - half_width)));
    const auto hi = std::min<std::ptrdiff_t>(n_in - 1, static_cast<std::ptrdiff_t>(std::floor(t + half_width)));
    double acc = 0.0;
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
      const double x = t - static_cast<double>(i);
      const double window = 0.5 * (1.0 + std::cos(std::numbers::pi * x / half_width));
      acc += in[static_cast<std::size_t>(i)] * cutoff * sinc(cutoff * x) * window;
    }
    out[j] = static_cast<float>(std::clamp(acc, -1.0, 1.0));
  }
  return AudioBuffer(std::move(out), target_rate);
}

std::size_t ms_to_samples(double ms, int sample_rate) {
  return static_cast<std::size_t>(std::llround(ms * sample_rate / 1000.0));
}

FrameLayout frame_layout(std::size_t n_samples, std::size_t frame_len, std::size_t hop) {
  if (frame_len == 0 || hop == 0) {
    throw Error(ErrorKind::InvalidArgument, "frame length and hop must be positive");
  }
  FrameLayout layout{frame_len, hop, 0};
  if (n_samples >= frame_len) layout.count = (n_samples - frame_len) / hop + 1;
  return layout;
}

std::vector<std::span<const float>> frames(const AudioBuffer& buffer, double frame_ms,
                                           double hop_ms) {
  if (!(frame_ms > 0.0) || !(hop_ms > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "frame_ms and hop_ms must be positive");
  }
  const auto layout = frame_layout(buffer.size(), ms_to_samples(frame_ms, buffer.sample_rate()),
                                   ms_to_samples(hop_ms, buffer.sample_rate()));
  std::vector<std::span<const float>> out;
  out.reserve(layout.count);
  for (std::size_t k = 0; k < layout.count; ++k) {
    out.push_back(buffer.samples().subspan(layout.start(k), layout.frame_len));
  }
  return out;
}

}  // namespace vowelspace
