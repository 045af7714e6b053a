// Command-line front end for the vowel-space analysis pipeline.

#include <CLI11.hpp>
#include <iostream>

#include "vowelspace/pipeline.hpp"

using namespace vowelspace;

int main(int argc, char** argv) {
  CLI::App app{"Cross-lingual vowel-space analysis: formants, Lobanov normalization, accent metrics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  unsigned jobs = 1;
  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (default: config out_dir, else .)");
  app.add_option("--jobs", jobs, "parallel workers for extract")->check(CLI::Range(1u, 256u));

  std::string manifest;
  auto* extract = app.add_subcommand("extract", "measure F1/F2 for every manifest row -> formants.csv");
  extract->add_option("manifest", manifest, "manifest CSV")->required();

  std::string formants;
  auto* normalize = app.add_subcommand("normalize", "Lobanov-normalize formants.csv -> normalized.csv");
  normalize->add_option("formants", formants, "formants.csv")->required();

  std::string normalized;
  std::string inventory_override;
  std::string weighting;
  std::string matrix_vowels;
  auto* metrics = app.add_subcommand("metrics", "distance/compactness -> metrics.csv, summary.json, pair_matrix.json");
  metrics->add_option("normalized", normalized, "normalized.csv")->required();
  metrics->add_option("--inventory", inventory_override, "inventory file (default: bundled)");
  metrics->add_option("--weighting", weighting, "summary weighting")->check(CLI::IsMember({"per-vowel", "per-token"}));
  metrics->add_option("--matrix-vowels", matrix_vowels, "vowels entering the pair matrix")
      ->check(CLI::IsMember({"all", "shared", "non-shared"}));

  PlotOptions plot_options;
  std::string plot_normalized;
  std::string plot_matrix;
  auto* plot = app.add_subcommand("plot", "vowel-space SVG from normalized.csv, or heatmaps from pair_matrix.json");
  plot->add_option("--normalized", plot_normalized, "normalized.csv");
  plot->add_option("--matrix", plot_matrix, "pair_matrix.json");
  plot->add_option("--system", plot_options.system, "keep one system");
  plot->add_option("--speaker", plot_options.speaker, "keep one speaker");
  plot->add_option("--vowel", plot_options.vowel, "keep one vowel (with --target: overlay across sources)");
  plot->add_option("--source", plot_options.source, "keep one source language");
  plot->add_option("--target", plot_options.target, "keep one target language");
  plot->add_option("--output", plot_options.output, "file name for the vowel-space SVG");
  plot->add_option("--title", plot_options.title, "plot title");

  std::string spec;
  auto* synth = app.add_subcommand("synth", "write oracle vowel WAVs from a JSON spec");
  synth->add_option("spec", spec, "synthesis spec (JSON)")->required();

  std::string lang_a;
  std::string lang_b;
  auto* inventory = app.add_subcommand("inventory", "list shared and non-shared vowels of a language pair");
  inventory->add_option("language_a", lang_a)->required();
  inventory->add_option("language_b", lang_b)->required();
  inventory->add_option("--inventory", inventory_override, "inventory file (default: bundled)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunContext ctx;
    ctx.config = config_path.empty() ? Config{} : load_config(config_path);
    if (!inventory_override.empty()) ctx.config.inventory = inventory_override;
    if (!weighting.empty()) {
      ctx.config.weighting = weighting == "per-token" ? SummaryWeighting::PerToken : SummaryWeighting::PerVowel;
    }
    if (!matrix_vowels.empty()) ctx.config.matrix_vowels = parse_vowel_filter(matrix_vowels);
    ctx.out_dir = out_dir.empty() ? ctx.config.out_dir : std::filesystem::path(out_dir);
    ctx.jobs = jobs;

    if (*extract) return cmd_extract(manifest, ctx);
    if (*normalize) return cmd_normalize(formants, ctx);
    if (*metrics) return cmd_metrics(normalized, ctx);
    if (*plot) {
      if (!plot_normalized.empty()) plot_options.normalized_csv = plot_normalized;
      if (!plot_matrix.empty()) plot_options.pair_matrix_json = plot_matrix;
      return cmd_plot(plot_options, ctx);
    }
    if (*synth) return cmd_synth(spec, ctx);
    if (*inventory) return cmd_inventory(lang_a, lang_b, ctx);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}
