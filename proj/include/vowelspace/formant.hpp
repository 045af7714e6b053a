#pragma once

#include <span>
#include <vector>

#include "vowelspace/audio.hpp"
#include "vowelspace/segment.hpp"

namespace vowelspace {

// Raw first and second formant of one vowel realization, in Hz.
struct FormantPair {
  double f1 = 0.0;
  double f2 = 0.0;

  bool operator==(const FormantPair&) const = default;
};

struct FormantCandidate {
  double frequency_hz = 0.0;
  double bandwidth_hz = 0.0;
};

struct FormantGates {
  double f1_min = 150.0;
  double f1_max = 1200.0;
  double f2_min = 500.0;
  double f2_max = 3500.0;
  double max_bandwidth = 400.0;
  double min_frequency = 90.0;
  double nyquist_margin = 50.0;
};

struct AnalysisParams {
  int analysis_rate = 10000;
  int lpc_order = 12;
  double preemphasis = 0.97;
  double lpc_frame_ms = 30.0;
  // Cepstral lifter cutoff applied to the frame spectrum before the
  // autocorrelation is taken; strips pitch harmonics that otherwise pull the
  // poles. 0 gives plain single-frame autocorrelation LPC.
  double lifter_ms = 3.2;
  SegmentParams segment;
  FormantGates gates;
};

// Autocorrelation LPC via Levinson-Durbin. Returns {1, a1, ..., a_order}
// for the prediction-error filter A(z) = 1 + sum a_k z^-k.
std::vector<double> lpc_coefficients(std::span<const double> frame, int order);

// Levinson-Durbin on autocorrelation lags r[0..order].
std::vector<double> lpc_from_autocorrelation(std::span<const double> r, int order);

// Autocorrelation lags 0..max_lag of the cepstrally smoothed mean power
// spectrum of equal-length frames. Quefrencies above lifter_ms are dropped.
std::vector<double> smoothed_autocorrelation(const std::vector<std::vector<double>>& frames, int sample_rate,
                                             double lifter_ms, std::size_t max_lag);

// Complex roots of z^p + c1 z^(p-1) + ... + cp given {1, c1, ..., cp}.
struct Root {
  double re = 0.0;
  double im = 0.0;
};
std::vector<Root> polynomial_roots(std::span<const double> coeffs);

std::vector<FormantCandidate> formant_candidates(std::span<const double> coeffs, int sample_rate,
                                                 const FormantGates& gates = {});

// Picks F1 as the lowest candidate inside the F1 gate and F2 as the next
// candidate above it inside the F2 gate.
FormantPair select_formants(std::span<const FormantCandidate> candidates, const FormantGates& gates);

// Formants of the pre-emphasized, Hamming-windowed frame centred at `center`.
// With a lifter, five frames 2 ms apart around `center` share one envelope.
FormantPair formants_at(const AudioBuffer& buffer, std::size_t center, const AnalysisParams& params);

// Resample, locate the leading vowel, measure at its midpoint.
FormantPair measure_vowel(const AudioBuffer& buffer, const AnalysisParams& params = {});

// Component-wise median; even counts average the middle pair.
FormantPair representative(std::span<const FormantPair> realizations);

double median(std::vector<double> values);

}  // namespace vowelspace
