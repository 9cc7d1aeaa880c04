#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "padicstab/experiment.hpp"
#include "padicstab/presets.hpp"

namespace {

constexpr int kConfigError = 2;

int run_config_text(const std::string& text, padicstab::ReportFormat format, const std::string& out_path) {
  padicstab::StabilityReport report;
  try {
    const padicstab::ExperimentConfig cfg = padicstab::parse_config_text(text);
    report = padicstab::run_experiment(cfg);
  } catch (const padicstab::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  }
  const std::string bytes = padicstab::emit_report(report, format);
  if (out_path.empty()) {
    std::cout << bytes;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return kConfigError;
    }
    out << bytes;
  }
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon stability experiments for additive-cubic maps over p-adic numbers"};
  app.require_subcommand(1);

  const std::map<std::string, padicstab::ReportFormat> formats{{"json", padicstab::ReportFormat::json},
                                                               {"text", padicstab::ReportFormat::text}};
  padicstab::ReportFormat format = padicstab::ReportFormat::json;
  std::string out_path;
  std::string config_path;
  std::string preset_name;

  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("--config", config_path, "experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--format", format, "report format")->transform(CLI::CheckedTransformer(formats));
  run->add_option("--out", out_path, "write the report here instead of stdout");

  auto* presets = app.add_subcommand("presets", "shipped experiment configs");
  presets->require_subcommand(1);
  auto* list = presets->add_subcommand("list", "list preset names");
  auto* show = presets->add_subcommand("show", "print a preset config");
  show->add_option("name", preset_name)->required();
  auto* prun = presets->add_subcommand("run", "run a preset");
  prun->add_option("name", preset_name)->required();
  prun->add_option("--format", format, "report format")->transform(CLI::CheckedTransformer(formats));
  prun->add_option("--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (run->parsed()) {
      std::ifstream in(config_path, std::ios::binary);
      std::stringstream text;
      text << in.rdbuf();
      return run_config_text(text.str(), format, out_path);
    }
    if (list->parsed()) {
      for (const auto& p : padicstab::presets()) std::cout << p.name << "  " << p.summary << "\n";
      return 0;
    }
    const padicstab::Preset* preset = padicstab::find_preset(preset_name);
    if (preset == nullptr) {
      std::cerr << "unknown preset '" << preset_name << "' (see: presets list)\n";
      return kConfigError;
    }
    if (show->parsed()) {
      std::cout << nlohmann::ordered_json::parse(preset->json).dump(2) << "\n";
      return 0;
    }
    return run_config_text(std::string(preset->json), format, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
