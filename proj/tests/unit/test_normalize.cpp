#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vowelspace/error.hpp"
#include "vowelspace/normalize.hpp"

using namespace vowelspace;

namespace {

std::vector<FormantPair> random_speaker(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> f1(200.0, 900.0);
  std::uniform_real_distribution<double> f2(700.0, 2800.0);
  std::vector<FormantPair> out(n);
  for (auto& p : out) p = {f1(rng), f2(rng)};
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("two-point population statistics") {
  const std::vector<FormantPair> pts{{400.0, 1000.0}, {600.0, 1400.0}};
  const auto s = speaker_stats(pts, "spk");
  CHECK(s.mean_f1 == 500.0);
  CHECK(s.mean_f2 == 1200.0);
  CHECK(s.sd_f1 == 100.0);
  CHECK(s.sd_f2 == 200.0);
  CHECK(s.n == 2);
  CHECK(s.speaker_id == "spk");

  CHECK(lobanov({500.0, 1200.0}, s) == NormalizedPoint{0.0, 0.0});
  CHECK(lobanov({600.0, 1400.0}, s) == NormalizedPoint{1.0, 1.0});
}

TEST_CASE("degenerate speakers are rejected") {
  const std::vector<FormantPair> one{{400.0, 1000.0}};
  CHECK(kind_of([&] { speaker_stats(one); }) == ErrorKind::InsufficientData);
  CHECK(kind_of([&] { speaker_stats({}); }) == ErrorKind::InsufficientData);
  const std::vector<FormantPair> flat_f2{{400.0, 1000.0}, {500.0, 1000.0}};
  CHECK(kind_of([&] { speaker_stats(flat_f2); }) == ErrorKind::ZeroVariance);
  const std::vector<FormantPair> flat_f1{{400.0, 1000.0}, {400.0, 1100.0}};
  CHECK(kind_of([&] { speaker_stats(flat_f1); }) == ErrorKind::ZeroVariance);

  try {
    speaker_stats(one, "glow/ko_male");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("glow/ko_male") != std::string::npos);
  }
  CHECK(kind_of([] { lobanov({1.0, 1.0}, SpeakerNormStats{}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("statistics match a two-pass oracle on 1000 random pairs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = random_speaker(rng, 1000);
    std::vector<double> f1;
    std::vector<double> f2;
    for (const auto& p : pts) {
      f1.push_back(p.f1);
      f2.push_back(p.f2);
    }
    const auto o1 = oracle::two_pass(f1);
    const auto o2 = oracle::two_pass(f2);
    const auto s = speaker_stats(pts);
    CHECK(s.mean_f1 == doctest::Approx(static_cast<double>(o1.mean)).epsilon(1e-9));
    CHECK(s.mean_f2 == doctest::Approx(static_cast<double>(o2.mean)).epsilon(1e-9));
    CHECK(s.sd_f1 == doctest::Approx(static_cast<double>(o1.sd)).epsilon(1e-9));
    CHECK(s.sd_f2 == doctest::Approx(static_cast<double>(o2.sd)).epsilon(1e-9));
  }
}

TEST_CASE("normalized tokens have zero mean and unit population SD") {
  std::mt19937_64 rng(99);
  for (std::size_t n : {2u, 3u, 17u, 100u, 1500u}) {
    const auto pts = random_speaker(rng, n);
    const auto s = speaker_stats(pts);
    std::vector<double> z1;
    std::vector<double> z2;
    for (const auto& p : pts) {
      const auto z = lobanov(p, s);
      z1.push_back(z.z1);
      z2.push_back(z.z2);
    }
    const auto m1 = oracle::two_pass(z1);
    const auto m2 = oracle::two_pass(z2);
    CHECK(std::abs(static_cast<double>(m1.mean)) <= 1e-9);
    CHECK(std::abs(static_cast<double>(m2.mean)) <= 1e-9);
    CHECK(std::abs(static_cast<double>(m1.sd) - 1.0) <= 1e-9);
    CHECK(std::abs(static_cast<double>(m2.sd) - 1.0) <= 1e-9);
  }
}

TEST_CASE("affine formant transforms leave z-scores unchanged") {
  std::mt19937_64 rng(5);
  const std::vector<std::pair<double, double>> transforms{{1.17, 35.0}, {0.8, -50.0}, {0.8, 50.0},
                                                          {1.25, -50.0}, {1.25, 50.0}, {3.0, 0.0}};
  for (int trial = 0; trial < 10; ++trial) {
    const auto pts = random_speaker(rng, 60);
    const auto s = speaker_stats(pts);
    for (const auto& [a, b] : transforms) {
      std::vector<FormantPair> moved;
      for (const auto& p : pts) moved.push_back({a * p.f1 + b, a * p.f2 + b});
      const auto t = speaker_stats(moved);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto z = lobanov(pts[i], s);
        const auto w = lobanov(moved[i], t);
        CHECK(std::abs(z.z1 - w.z1) <= 1e-9);
        CHECK(std::abs(z.z2 - w.z2) <= 1e-9);
      }
    }
  }
}

TEST_CASE("lobanov is strictly increasing per component") {
  std::mt19937_64 rng(8);
  const auto s = speaker_stats(random_speaker(rng, 50));
  std::uniform_real_distribution<double> f(100.0, 4000.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = f(rng);
    const double b = a + 1e-3 + f(rng) * 1e-3;
    CHECK(lobanov({a, 1000.0}, s).z1 < lobanov({b, 1000.0}, s).z1);
    CHECK(lobanov({500.0, a}, s).z2 < lobanov({500.0, b}, s).z2);
  }
}
