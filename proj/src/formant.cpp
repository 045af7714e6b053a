#include "vowelspace/formant.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "vowelspace/error.hpp"

namespace vowelspace {

std::vector<double> lpc_coefficients(std::span<const double> frame, int order) {
  if (order < 2 || frame.size() <= static_cast<std::size_t>(order)) {
    throw Error(ErrorKind::InvalidArgument, "need frame length > order >= 2");
  }
  const auto p = static_cast<std::size_t>(order);
  std::vector<double> r(p + 1, 0.0);
  for (std::size_t lag = 0; lag <= p; ++lag) {
    double acc = 0.0;
    for (std::size_t n = lag; n < frame.size(); ++n) acc += frame[n] * frame[n - lag];
    r[lag] = acc;
  }
  return lpc_from_autocorrelation(r, order);
}

std::vector<double> lpc_from_autocorrelation(std::span<const double> r, int order) {
  if (order < 2 || r.size() <= static_cast<std::size_t>(order)) {
    throw Error(ErrorKind::InvalidArgument, "need order >= 2 and order + 1 lags");
  }
  if (!(r[0] > 0.0)) throw Error(ErrorKind::DegenerateFrame, "zero autocorrelation at lag 0");
  const auto p = static_cast<std::size_t>(order);
  std::vector<double> a(p + 1, 0.0);
  std::vector<double> prev(p + 1, 0.0);
  a[0] = 1.0;
  double err = r[0];
  for (std::size_t i = 1; i <= p; ++i) {
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc += a[j] * r[i - j];
    const double k = -acc / err;
    prev = a;
    for (std::size_t j = 1; j < i; ++j) a[j] = prev[j] + k * prev[i - j];
    a[i] = k;
    err *= (1.0 - k * k);
    // Perfectly predictable input; higher orders add nothing.
    if (!(err > r[0] * 1e-14)) break;
  }
  return a;
}

std::vector<double> smoothed_autocorrelation(const std::vector<std::vector<double>>& frames, int sample_rate,
                                             double lifter_ms, std::size_t max_lag) {
  if (frames.empty() || frames.front().empty()) throw Error(ErrorKind::InvalidArgument, "no frames");
  const std::size_t len = frames.front().size();
  std::size_t nfft = 1024;
  while (nfft < 2 * std::max(len, max_lag + 1)) nfft *= 2;

  Eigen::FFT<double> fft;
  std::vector<double> power(nfft, 0.0);
  std::vector<double> padded(nfft, 0.0);
  std::vector<std::complex<double>> spectrum;
  for (const auto& frame : frames) {
    if (frame.size() != len) throw Error(ErrorKind::InvalidArgument, "frames differ in length");
    std::fill(padded.begin(), padded.end(), 0.0);
    std::copy(frame.begin(), frame.end(), padded.begin());
    fft.fwd(spectrum, padded);
    for (std::size_t k = 0; k < nfft; ++k) power[k] += std::norm(spectrum[k]);
  }
  const double peak = *std::max_element(power.begin(), power.end());
  if (!(peak > 0.0)) throw Error(ErrorKind::DegenerateFrame, "zero-energy frames");

  // Real cepstrum, cut above the lifter, back to a smooth power envelope.
  std::vector<double> log_power(nfft);
  for (std::size_t k = 0; k < nfft; ++k) log_power[k] = std::log(power[k] + peak * 1e-10);
  std::vector<std::complex<double>> cepstrum;
  fft.fwd(cepstrum, log_power);
  const auto cutoff = static_cast<std::size_t>(std::llround(lifter_ms * sample_rate / 1000.0));
  for (std::size_t q = 0; q < nfft; ++q) {
    if (std::min(q, nfft - q) > cutoff) cepstrum[q] = 0.0;
  }
  std::vector<double> smooth_log;
  fft.inv(smooth_log, cepstrum);
  std::vector<std::complex<double>> envelope(nfft);
  for (std::size_t k = 0; k < nfft; ++k) envelope[k] = std::exp(smooth_log[k]);
  std::vector<double> r;
  fft.inv(r, envelope);
  r.resize(max_lag + 1);
  return r;
}

std::vector<Root> polynomial_roots(std::span<const double> coeffs) {
  if (coeffs.empty() || coeffs[0] == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "leading coefficient must be non-zero");
  }
  std::size_t degree = coeffs.size() - 1;
  while (degree > 0 && coeffs[degree] == 0.0) --degree;  // zero roots carry no formants
  std::vector<Root> roots(coeffs.size() - 1 - degree, Root{});
  if (degree == 0) return roots;

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree),
                                                    static_cast<Eigen::Index>(degree));
  for (std::size_t j = 0; j < degree; ++j) {
    companion(0, static_cast<Eigen::Index>(j)) = -coeffs[j + 1] / coeffs[0];
  }
  for (std::size_t i = 1; i < degree; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto& values = solver.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    roots.push_back({values[i].real(), values[i].imag()});
  }
  return roots;
}

std::vector<FormantCandidate> formant_candidates(std::span<const double> coeffs, int sample_rate,
                                                 const FormantGates& gates) {
  const double fs = sample_rate;
  std::vector<FormantCandidate> out;
  for (const auto& root : polynomial_roots(coeffs)) {
    if (!(root.im > 0.0)) continue;
    const double modulus = std::hypot(root.re, root.im);
    const double frequency = fs / (2.0 * std::numbers::pi) * std::atan2(root.im, root.re);
    const double bandwidth = -fs / std::numbers::pi * std::log(modulus);
    if (frequency < gates.min_frequency || frequency > fs / 2.0 - gates.nyquist_margin) continue;
    if (!(bandwidth > 0.0) || !(bandwidth < gates.max_bandwidth)) continue;
    out.push_back({frequency, bandwidth});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.frequency_hz < b.frequency_hz; });
  return out;
}

FormantPair select_formants(std::span<const FormantCandidate> candidates, const FormantGates& gates) {
  if (candidates.size() < 2) {
    throw Error(ErrorKind::InsufficientFormants,
                std::to_string(candidates.size()) + " candidate(s) after bandwidth gating");
  }
  auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!in(candidates[i].frequency_hz, gates.f1_min, gates.f1_max)) continue;
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (in(candidates[j].frequency_hz, gates.f2_min, gates.f2_max) &&
          candidates[j].frequency_hz > candidates[i].frequency_hz) {
        return {candidates[i].frequency_hz, candidates[j].frequency_hz};
      }
    }
    break;
  }
  throw Error(ErrorKind::GateViolation, "no candidates inside the F1/F2 plausibility ranges");
}

FormantPair formants_at(const AudioBuffer& buffer, std::size_t center, const AnalysisParams& params) {
  const auto samples = buffer.samples();
  const std::size_t frame_len = std::min(samples.size(), ms_to_samples(params.lpc_frame_ms, buffer.sample_rate()));
  if (frame_len <= static_cast<std::size_t>(params.lpc_order)) {
    throw Error(ErrorKind::TooShort, "analysis frame shorter than the LPC order");
  }
  auto frame_at = [&](std::ptrdiff_t middle) {
    const auto last_start = static_cast<std::ptrdiff_t>(samples.size() - frame_len);
    const auto start = static_cast<std::size_t>(
        std::clamp(middle - static_cast<std::ptrdiff_t>(frame_len / 2), std::ptrdiff_t{0}, last_start));
    std::vector<double> frame(frame_len);
    for (std::size_t i = 0; i < frame_len; ++i) {
      const std::size_t n = start + i;
      const double previous = n > 0 ? samples[n - 1] : 0.0;
      const double emphasized = samples[n] - params.preemphasis * previous;
      const double hamming =
          frame_len > 1 ? 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                                  static_cast<double>(frame_len - 1))
                        : 1.0;
      frame[i] = emphasized * hamming;
    }
    return frame;
  };

  std::vector<double> coeffs;
  if (params.lifter_ms > 0.0) {
    const auto step = static_cast<std::ptrdiff_t>(ms_to_samples(2.0, buffer.sample_rate()));
    std::vector<std::vector<double>> frames;
    for (std::ptrdiff_t k = -2; k <= 2; ++k) frames.push_back(frame_at(static_cast<std::ptrdiff_t>(center) + k * step));
    const auto r = smoothed_autocorrelation(frames, buffer.sample_rate(), params.lifter_ms,
                                            static_cast<std::size_t>(params.lpc_order));
    coeffs = lpc_from_autocorrelation(r, params.lpc_order);
  } else {
    coeffs = lpc_coefficients(frame_at(static_cast<std::ptrdiff_t>(center)), params.lpc_order);
  }
  const auto candidates = formant_candidates(coeffs, buffer.sample_rate(), params.gates);
  return select_formants(candidates, params.gates);
}

FormantPair measure_vowel(const AudioBuffer& buffer, const AnalysisParams& params) {
  const auto analysed = resample(buffer, params.analysis_rate);
  const auto seg = first_segment(analysed, params.segment);
  const std::size_t mid = seg.start_sample + seg.length() / 2;
  return formants_at(analysed, mid, params);
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::EmptyList, "median of empty list");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

FormantPair representative(std::span<const FormantPair> realizations) {
  if (realizations.empty()) throw Error(ErrorKind::EmptyList, "no realizations");
  std::vector<double> f1;
  std::vector<double> f2;
  f1.reserve(realizations.size());
  f2.reserve(realizations.size());
  for (const auto& r : realizations) {
    f1.push_back(r.f1);
    f2.push_back(r.f2);
  }
  return {median(std::move(f1)), median(std::move(f2))};
}

}  // namespace vowelspace
