#include "vowelspace/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <thread>
#include <tuple>

#include "vowelspace/audio.hpp"
#include "vowelspace/report.hpp"
#include "vowelspace/synth.hpp"

namespace vowelspace {

namespace {

std::ostream& out_stream(const RunContext& ctx) { return ctx.out ? *ctx.out : std::cout; }
std::ostream& err_stream(const RunContext& ctx) { return ctx.err ? *ctx.err : std::cerr; }

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

std::string file_stem_for(std::string_view name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    out += ok ? c : '_';
  }
  return out.empty() ? "unnamed" : out;
}

nlohmann::json params_object(const ParamBlock& block) {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [k, v] : block) obj[k] = v;
  return obj;
}

struct Measurement {
  std::optional<FormantPair> formants;
  ErrorKind kind = ErrorKind::IoError;
  std::string message;
};

std::vector<Measurement> measure_all(const std::vector<ManifestEntry>& entries, const AnalysisParams& params,
                                     unsigned jobs) {
  std::vector<Measurement> results(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      try {
        results[i].formants = measure_vowel(load_audio(entries[i].wav_path), params);
      } catch (const Error& e) {
        results[i].kind = e.kind();
        results[i].message = e.what();
      }
    }
  };
  const unsigned workers = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(entries.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

std::optional<LanguageCode> selector_language(const std::optional<std::string>& text, const InventoryRegistry& reg,
                                              const char* flag) {
  if (!text) return std::nullopt;
  try {
    return reg.language(*text);
  } catch (const Error&) {
    throw Error(ErrorKind::UnknownSelector, std::string(flag) + " '" + *text + "' is not a registered language");
  }
}

int plot_normalized(const PlotOptions& o, const RunContext& ctx) {
  const auto registry = ctx.config.registry();
  const auto source = selector_language(o.source, registry, "--source");
  const auto target = selector_language(o.target, registry, "--target");
  if (o.vowel && !is_ipa_vowel_symbol(*o.vowel)) {
    throw Error(ErrorKind::UnknownSelector, "--vowel '" + *o.vowel + "' is not an IPA vowel symbol");
  }
  const auto table = read_normalized_table(*o.normalized_csv);

  std::vector<const NormalizedRecord*> selected;
  for (const auto& r : table.rows) {
    if (o.system && r.system != *o.system) continue;
    if (o.speaker && r.speaker != *o.speaker) continue;
    if (o.vowel && r.vowel != *o.vowel) continue;
    if (source && r.src_lang != source->str()) continue;
    if (target && r.tgt_lang != target->str()) continue;
    selected.push_back(&r);
  }
  if (selected.empty()) throw Error(ErrorKind::EmptyPlot, "selectors match no rows");

  std::set<std::string> systems;
  for (const auto* r : selected) systems.insert(r->system);
  const bool overlay = o.vowel && o.target;

  // series name -> vowel -> points
  std::map<std::string, std::map<std::string, std::vector<NormalizedPoint>>> grouped;
  for (const auto* r : selected) {
    std::string name;
    if (overlay) {
      name = r->role == "anchor" ? r->tgt_lang + " native" : "from " + r->src_lang;
      if (systems.size() > 1) name += " [" + r->system + "]";
    } else {
      name = r->system + "/" + r->speaker + " " + r->src_lang + "\xE2\x86\x92" + r->tgt_lang;
      if (r->role == "anchor") name += " (anchor)";
    }
    grouped[name][r->vowel].push_back({r->z1, r->z2});
  }

  VowelSpacePlot plot;
  plot.title = !o.title.empty() ? o.title
               : overlay        ? "/" + *o.vowel + "/ (" + target->str() + ") across source languages"
                                : "Normalized vowel space";
  for (const auto& [name, vowels] : grouped) {
    PlotSeries series{name, {}};
    for (const auto& [vowel, points] : vowels) series.points.push_back({vowel, representative_point(points)});
    plot.series.push_back(std::move(series));
  }
  ensure_dir(ctx.out_dir);
  const auto path = ctx.out_dir / o.output;
  render_vowel_space(plot, path);
  out_stream(ctx) << "wrote " << path.string() << "\n";
  return kExitOk;
}

int plot_matrix(const PlotOptions& o, const RunContext& ctx) {
  const auto matrices = pair_matrices_from_json(read_json(*o.pair_matrix_json));
  ensure_dir(ctx.out_dir);
  int written = 0;
  for (const auto& [system, matrix] : matrices) {
    if (o.system && system != *o.system) continue;
    if (matrix.populated() == 0) continue;
    const auto path = ctx.out_dir / ("heatmap_" + file_stem_for(system) + ".svg");
    render_heatmap(matrix, o.title.empty() ? "Mean vowel distance: " + system : o.title, path);
    out_stream(ctx) << "wrote " << path.string() << "\n";
    ++written;
  }
  if (written == 0) throw Error(ErrorKind::EmptyPlot, "no populated pair matrix matches the selectors");
  return kExitOk;
}

VowelSpec spec_from_json(const nlohmann::json& defaults, const nlohmann::json& item) {
  auto pick = [&](const char* key) -> const nlohmann::json* {
    if (item.contains(key)) return &item.at(key);
    if (defaults.contains(key)) return &defaults.at(key);
    return nullptr;
  };
  VowelSpec spec;
  if (const auto* v = pick("sample_rate")) spec.sample_rate = v->get<int>();
  if (const auto* v = pick("duration")) spec.duration_s = v->get<double>();
  if (const auto* v = pick("f0")) spec.f0_hz = v->get<double>();
  if (const auto* v = pick("seed")) spec.seed = v->get<std::uint64_t>();
  if (const auto* v = pick("source_shaping")) spec.source_shaping = v->get<bool>();
  if (const auto* v = pick("excitation")) {
    const auto e = v->get<std::string>();
    if (e == "impulse") {
      spec.excitation = Excitation::ImpulseTrain;
    } else if (e == "noise") {
      spec.excitation = Excitation::Noise;
    } else {
      throw Error(ErrorKind::InvalidArgument, "excitation must be impulse or noise");
    }
  }
  for (const auto& f : item.at("formants")) {
    spec.formants.push_back({f.at(0).get<double>(), f.at(1).get<double>()});
  }
  validate(spec);
  return spec;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::ConfigError:
    case ErrorKind::ManifestParseError:
    case ErrorKind::UnknownLanguage:
    case ErrorKind::UnknownSelector:
    case ErrorKind::InventoryValidation:
    case ErrorKind::MissingFile:
    case ErrorKind::IoError:
      return kExitUsage;
    default:
      return kExitNoData;
  }
}

int cmd_extract(const std::filesystem::path& manifest, const RunContext& ctx) {
  const auto registry = ctx.config.registry();
  const auto entries = load_manifest(manifest, registry);
  if (entries.empty()) {
    err_stream(ctx) << "no entries in " << manifest.string() << "\n";
    return kExitNoData;
  }
  const auto results = measure_all(entries, ctx.config.analysis, ctx.jobs);

  Table<FormantRecord> table;
  table.params = to_param_block(ctx.config.parameters());
  std::map<std::tuple<std::string, std::string, std::string, std::string, std::string, Role>, std::size_t> counters;
  std::size_t failures = 0;
  ensure_dir(ctx.out_dir);
  std::ofstream errors(ctx.out_dir / "extract_errors.csv", std::ios::binary);
  if (!errors) throw Error(ErrorKind::IoError, "cannot write extract_errors.csv");
  errors << "wav_path,line,error,message\n";

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const auto key = std::make_tuple(e.system, e.speaker, e.native_language.str(), e.target_language.str(), e.vowel,
                                     e.role);
    const std::size_t idx = counters[key]++;
    const auto& r = results[i];
    if (!r.formants) {
      ++failures;
      std::string message = r.message;
      std::replace(message.begin(), message.end(), '"', '\'');
      errors << '"' << e.wav_path.generic_string() << "\"," << e.line << ',' << to_string(r.kind) << ",\""
             << message << "\"\n";
      continue;
    }
    table.rows.push_back({e.system, e.speaker, e.native_language.str(), e.target_language.str(), e.vowel,
                          std::string(to_string(e.role)), idx, r.formants->f1, r.formants->f2});
  }
  write_table(ctx.out_dir / "formants.csv", table);
  out_stream(ctx) << "extracted " << table.rows.size() << " of " << entries.size() << " file(s)";
  if (failures > 0) out_stream(ctx) << ", " << failures << " failure(s) in extract_errors.csv";
  out_stream(ctx) << "\n";
  if (table.rows.empty()) {
    err_stream(ctx) << "no file could be measured\n";
    return kExitNoData;
  }
  return kExitOk;
}

int cmd_normalize(const std::filesystem::path& formants_csv, const RunContext& ctx) {
  const auto input = read_formant_table(formants_csv);
  if (input.rows.empty()) {
    err_stream(ctx) << "no rows in " << formants_csv.string() << "\n";
    return kExitNoData;
  }
  std::map<std::pair<std::string, std::string>, std::vector<FormantPair>> by_speaker;
  for (const auto& r : input.rows) by_speaker[{r.system, r.speaker}].push_back({r.f1_hz, r.f2_hz});

  std::map<std::pair<std::string, std::string>, SpeakerNormStats> stats;
  for (const auto& [key, points] : by_speaker) {
    stats.emplace(key, speaker_stats(points, key.first + "/" + key.second));
  }

  Table<NormalizedRecord> output;
  output.params = input.params;
  for (const auto& r : input.rows) {
    const auto z = lobanov({r.f1_hz, r.f2_hz}, stats.at({r.system, r.speaker}));
    output.rows.push_back({r.system, r.speaker, r.src_lang, r.tgt_lang, r.vowel, r.role, r.idx, z.z1, z.z2});
  }

  nlohmann::json speakers = nlohmann::json::array();
  for (const auto& [key, s] : stats) {
    speakers.push_back({{"system", key.first},
                        {"speaker", key.second},
                        {"n", s.n},
                        {"mean_f1", s.mean_f1},
                        {"mean_f2", s.mean_f2},
                        {"sd_f1", s.sd_f1},
                        {"sd_f2", s.sd_f2}});
  }
  ensure_dir(ctx.out_dir);
  write_table(ctx.out_dir / "normalized.csv", output);
  write_json(ctx.out_dir / "speaker_stats.json",
             {{"parameters", ctx.config.parameters()},
              {"extraction", params_object(input.params)},
              {"method", "lobanov (population SD)"},
              {"speakers", speakers}});
  out_stream(ctx) << "normalized " << output.rows.size() << " row(s) for " << stats.size() << " speaker(s)\n";
  return kExitOk;
}

int cmd_metrics(const std::filesystem::path& normalized_csv, const RunContext& ctx) {
  const auto registry = ctx.config.registry();
  const auto input = read_normalized_table(normalized_csv);
  if (input.rows.empty()) {
    err_stream(ctx) << "no rows in " << normalized_csv.string() << "\n";
    return kExitNoData;
  }

  // Speakers of one system and language pair are pooled.
  using Key = std::tuple<std::string, std::string, std::string, std::string, Role>;
  std::map<Key, VowelObservationSet> groups;
  std::map<Key, std::set<std::string>> speakers;
  for (const auto& r : input.rows) {
    const Role role = parse_role(r.role);
    const Key key{r.system, r.src_lang, r.tgt_lang, r.vowel, role};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) {
      it->second.system_id = r.system;
      it->second.source_language = registry.language(r.src_lang);
      it->second.target_language = registry.language(r.tgt_lang);
      it->second.vowel = r.vowel;
      it->second.role = role;
    }
    it->second.points.push_back({r.z1, r.z2});
    speakers[key].insert(r.speaker);
  }
  std::vector<VowelObservationSet> sets;
  for (auto& [key, set] : groups) {
    for (const auto& s : speakers[key]) set.speaker_id += (set.speaker_id.empty() ? "" : "+") + s;
    sets.push_back(std::move(set));
  }

  const auto rows = build_metric_rows(sets, registry);
  if (rows.empty()) {
    err_stream(ctx) << "no test rows in " << normalized_csv.string() << "\n";
    return kExitNoData;
  }
  const auto params = ctx.config.parameters();
  ensure_dir(ctx.out_dir);
  write_table(ctx.out_dir / "metrics.csv", rows);
  write_json(ctx.out_dir / "summary.json",
             summary_json(shared_summary(rows, ctx.config.weighting), ctx.config.weighting, params));
  write_json(ctx.out_dir / "pair_matrix.json",
             pair_matrix_json(pair_matrices(rows, ctx.config.matrix_vowels), ctx.config.matrix_vowels, params));
  out_stream(ctx) << "wrote " << rows.size() << " metric row(s)\n";
  return kExitOk;
}

int cmd_plot(const PlotOptions& options, const RunContext& ctx) {
  if (options.normalized_csv.has_value() == options.pair_matrix_json.has_value()) {
    throw Error(ErrorKind::InvalidArgument, "give exactly one of --normalized or --matrix");
  }
  return options.normalized_csv ? plot_normalized(options, ctx) : plot_matrix(options, ctx);
}

int cmd_synth(const std::filesystem::path& spec_file, const RunContext& ctx) {
  const auto doc = read_json(spec_file);
  try {
    std::vector<std::pair<std::string, nlohmann::json>> items;
    if (doc.contains("grid")) {
      const auto& g = doc.at("grid");
      const double min_sep = g.value("min_separation", 300.0);
      const auto bw = g.value("bandwidths", std::vector<double>{80.0, 100.0});
      for (double f1 : g.at("f1")) {
        for (double f2 : g.at("f2")) {
          if (f2 - f1 < min_sep) continue;
          const std::string name = "f1_" + format_sig6(f1) + "_f2_" + format_sig6(f2);
          items.emplace_back(name, nlohmann::json{{"formants", {{f1, bw.at(0)}, {f2, bw.at(1)}}}});
        }
      }
    }
    if (doc.contains("vowels")) {
      for (const auto& v : doc.at("vowels")) items.emplace_back(v.at("name").get<std::string>(), v);
    }
    if (items.empty()) throw Error(ErrorKind::InvalidArgument, "spec has no vowels or grid");

    const std::string encoding = doc.value("encoding", "pcm16");
    if (encoding != "pcm16" && encoding != "float32") {
      throw Error(ErrorKind::InvalidArgument, "encoding must be pcm16 or float32");
    }
    std::set<std::string> names;
    ensure_dir(ctx.out_dir);
    for (const auto& [name, item] : items) {
      const auto stem = file_stem_for(name);
      if (!names.insert(stem).second) throw Error(ErrorKind::InvalidArgument, "duplicate vowel name '" + name + "'");
      const auto spec = spec_from_json(doc, item);
      const double gap = item.value("gap", doc.value("gap", 0.0));
      const double tail = item.value("tail", doc.value("tail", 0.0));
      const auto audio = gap > 0.0 || tail > 0.0 ? synth_utterance_with_gap(spec, gap, tail) : synth_vowel(spec);
      save_audio(audio, ctx.out_dir / (stem + ".wav"),
                 encoding == "pcm16" ? WavEncoding::Pcm16 : WavEncoding::Float32);
    }
    out_stream(ctx) << "wrote " << items.size() << " wav file(s) to " << ctx.out_dir.string() << "\n";
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, spec_file.string() + ": " + e.what());
  }
  return kExitOk;
}

int cmd_inventory(const std::string& language_a, const std::string& language_b, const RunContext& ctx) {
  const auto registry = ctx.config.registry();
  const auto a = registry.language(language_a);
  const auto b = registry.language(language_b);
  const auto shared = shared_vowels(registry, a, b);

  auto& out = out_stream(ctx);
  out << "shared:";
  for (const auto& v : registry.inventory(a).vowels) {
    if (shared.contains(v)) out << ' ' << v;
  }
  out << "\nnon-shared:";
  for (const auto& lang : {a, b}) {
    if (lang == b && a == b) break;
    for (const auto& v : registry.inventory(lang).vowels) {
      if (!shared.contains(v)) out << ' ' << v << '(' << lang.str() << ')';
    }
  }
  out << "\n";
  return kExitOk;
}

}  // namespace vowelspace
