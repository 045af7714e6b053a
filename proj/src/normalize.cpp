#include "vowelspace/normalize.hpp"

#include <cmath>

#include "vowelspace/error.hpp"

namespace vowelspace {

SpeakerNormStats speaker_stats(std::span<const FormantPair> realizations, std::string speaker_id) {
  const std::size_t n = realizations.size();
  if (n < 2) {
    throw Error(ErrorKind::InsufficientData,
                "speaker '" + speaker_id + "' has " + std::to_string(n) + " realization(s), need 2");
  }
  double sum1 = 0.0;
  double sum2 = 0.0;
  for (const auto& r : realizations) {
    sum1 += r.f1;
    sum2 += r.f2;
  }
  const double mean1 = sum1 / static_cast<double>(n);
  const double mean2 = sum2 / static_cast<double>(n);
  double ss1 = 0.0;
  double ss2 = 0.0;
  for (const auto& r : realizations) {
    ss1 += (r.f1 - mean1) * (r.f1 - mean1);
    ss2 += (r.f2 - mean2) * (r.f2 - mean2);
  }
  const double sd1 = std::sqrt(ss1 / static_cast<double>(n));
  const double sd2 = std::sqrt(ss2 / static_cast<double>(n));
  if (!(sd1 > 0.0) || !(sd2 > 0.0)) {
    throw Error(ErrorKind::ZeroVariance, "speaker '" + speaker_id + "' has a constant formant");
  }
  return {std::move(speaker_id), mean1, mean2, sd1, sd2, n};
}

NormalizedPoint lobanov(const FormantPair& point, const SpeakerNormStats& stats) {
  if (!(stats.sd_f1 > 0.0) || !(stats.sd_f2 > 0.0) || stats.n < 2) {
    throw Error(ErrorKind::InvalidArgument, "invalid speaker statistics");
  }
  return {(point.f1 - stats.mean_f1) / stats.sd_f1, (point.f2 - stats.mean_f2) / stats.sd_f2};
}

}  // namespace vowelspace
