#include <doctest.h>

#include "test_files.hpp"
#include "vowelspace/config.hpp"
#include "vowelspace/error.hpp"

using namespace vowelspace;

namespace {

std::string config_error(std::string_view text) {
  try {
    parse_config(text, "cfg");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
    return e.what();
  }
  FAIL("expected ConfigError");
  return {};
}

std::string manifest_error(const testfs::TempDir& dir, const std::string& body) {
  testfs::spit(dir / "m.csv", body);
  try {
    load_manifest(dir / "m.csv", InventoryRegistry::bundled());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ManifestParseError);
    return e.what();
  }
  FAIL("expected ManifestParseError");
  return {};
}

const std::string kHeader = std::string(kManifestHeader) + "\n";

}  // namespace

TEST_CASE("defaults and parameter block") {
  const Config c;
  validate(c);
  const auto p = c.parameters();
  for (const char* key : {"analysis_rate", "lpc_order", "preemphasis", "lpc_frame_ms", "lifter_ms", "frame_ms",
                          "hop_ms", "threshold_db", "min_silence_ms", "min_voiced_ms", "floor_headroom_db", "f1_min",
                          "f1_max", "f2_min", "f2_max", "max_bandwidth", "inventory", "summary_weighting",
                          "matrix_vowels"}) {
    CHECK(p.contains(key));
  }
  CHECK(p.at("inventory") == "bundled");
  CHECK(p.at("hop_ms") == 10.0);
}

TEST_CASE("every key parses") {
  const auto c = parse_config(
      "# comment\n"
      "analysis_rate = 11025\n lpc_order=10\npreemphasis = 0.9\nlpc_frame_ms = 25\nlifter_ms = 0\n"
      "frame_ms = 20\nhop_ms = 5\nthreshold_db = 12\nmin_silence_ms = 40\nmin_voiced_ms = 70\n"
      "floor_headroom_db = 25\nf1_min = 100\nf1_max = 1100\nf2_min = 600\nf2_max = 3000\n"
      "max_bandwidth = 500\ninventory = inv.tsv\nout_dir = results\nsummary_weighting = per-token\n"
      "matrix_vowels = non-shared\n\n");
  const auto& a = c.analysis;
  CHECK(a.analysis_rate == 11025);
  CHECK(a.lpc_order == 10);
  CHECK(a.preemphasis == 0.9);
  CHECK(a.lpc_frame_ms == 25.0);
  CHECK(a.lifter_ms == 0.0);
  CHECK(a.segment.frame_ms == 20.0);
  CHECK(a.segment.hop_ms == 5.0);
  CHECK(a.segment.threshold_db == 12.0);
  CHECK(a.segment.min_silence_ms == 40.0);
  CHECK(a.segment.min_voiced_ms == 70.0);
  CHECK(a.segment.floor_headroom_db == 25.0);
  CHECK(a.gates.f1_min == 100.0);
  CHECK(a.gates.f1_max == 1100.0);
  CHECK(a.gates.f2_min == 600.0);
  CHECK(a.gates.f2_max == 3000.0);
  CHECK(a.gates.max_bandwidth == 500.0);
  CHECK(c.inventory == "inv.tsv");
  CHECK(c.out_dir == "results");
  CHECK(c.weighting == SummaryWeighting::PerToken);
  CHECK(c.matrix_vowels == VowelFilter::NonShared);
}

TEST_CASE("bad configs are rejected with the line") {
  CHECK(config_error("hop_ms = 10\nwindow = 3\n").find("cfg:2") != std::string::npos);
  CHECK(config_error("window = 3\n").find("unknown key 'window'") != std::string::npos);
  CHECK(config_error("hop_ms 10\n").find("cfg:1") != std::string::npos);
  CHECK(config_error("hop_ms = ten\n").find("not a number") != std::string::npos);
  CHECK(config_error("lpc_order = 12.5\n").find("integer") != std::string::npos);
  CHECK(config_error("summary_weighting = median\n").find("cfg:1") != std::string::npos);
  CHECK(config_error("matrix_vowels = some\n").find("cfg:1") != std::string::npos);
  for (const char* key : {"analysis_rate", "lpc_order", "preemphasis", "lpc_frame_ms", "frame_ms", "hop_ms",
                          "threshold_db", "min_silence_ms", "min_voiced_ms", "floor_headroom_db", "f1_min", "f1_max",
                          "f2_min", "f2_max", "max_bandwidth"}) {
    CHECK(config_error(std::string(key) + " = 0\n").find(key) != std::string::npos);
    CHECK(config_error(std::string(key) + " = -3\n").find(key) != std::string::npos);
  }
  config_error("lifter_ms = -1\n");
  config_error("preemphasis = 1\n");
  config_error("lpc_order = 1\n");
  config_error("f1_min = 1300\n");
  config_error("f2_max = 400\n");
}

TEST_CASE("config file: relative inventory resolves next to it") {
  testfs::TempDir dir("config");
  testfs::spit(dir / "run.cfg", "inventory = inv.tsv\n");
  testfs::spit(dir / "inv.tsv", "EN\ti u\nDE\ti y\n");
  const auto c = load_config(dir / "run.cfg");
  CHECK(c.inventory == dir / "inv.tsv");
  CHECK(c.registry().languages().size() == 2);
  try {
    load_config(dir / "nope.cfg");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
  }
}

TEST_CASE("manifest rows resolve and keep their line numbers") {
  testfs::TempDir dir("config");
  testfs::spit(dir / "m.csv", "# comment\n" + kHeader +
                                  "a.wav,tacotron,en_female,EN,DE,y,test\r\n"
                                  "\n"
                                  "/abs/b.wav,natural,de_male,DE,DE,y,anchor\n");
  const auto e = load_manifest(dir / "m.csv", InventoryRegistry::bundled());
  REQUIRE(e.size() == 2);
  CHECK(e[0].wav_path == dir / "a.wav");
  CHECK(e[0].line == 3);
  CHECK(e[0].role == Role::Test);
  CHECK(e[0].native_language == LanguageCode("EN"));
  CHECK(e[1].wav_path == "/abs/b.wav");
  CHECK(e[1].line == 5);
  CHECK(e[1].role == Role::Anchor);
}

TEST_CASE("manifest problems are collected with line numbers") {
  testfs::TempDir dir("config");
  const auto m = manifest_error(dir, kHeader +
                                         "a.wav,s,p,EN,DE,y,test\n"       // fine
                                         "b.wav,s,p,EN,DE,y\n"            // arity
                                         "c.wav,s,p,EN,DE,y,anchor\n"     // anchor across languages
                                         "d.wav,s,p,EN,DE,ɯ,test\n"       // not a German vowel
                                         "e.wav,s,p,EN,XX,i,test\n"       // unknown language
                                         "f.wav,s,p,EN,DE,i,native\n"     // bad role
                                         ",s,p,EN,DE,i,test\n");          // empty path
  for (int line = 3; line <= 8; ++line) {
    CHECK(m.find("m.csv:" + std::to_string(line) + ":") != std::string::npos);
  }
  CHECK(m.find("m.csv:2:") == std::string::npos);
  CHECK(m.find("native_lang == target_lang") != std::string::npos);
  CHECK(m.find("/ɯ/ is not in the DE inventory") != std::string::npos);

  CHECK(manifest_error(dir, "path,system\n").find("expected header") != std::string::npos);
  try {
    load_manifest(dir / "missing.csv", InventoryRegistry::bundled());
    FAIL("expected ManifestParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ManifestParseError);
  }
}

TEST_CASE("empty manifests have no entries") {
  testfs::TempDir dir("config");
  for (const std::string& body : {std::string(), kHeader, std::string("# nothing yet\n\n")}) {
    testfs::spit(dir / "m.csv", body);
    CHECK(load_manifest(dir / "m.csv", InventoryRegistry::bundled()).empty());
  }
}
