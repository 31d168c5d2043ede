#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semnet/pipeline.hpp"

namespace {

struct CliOptions {
  semnet::PipelineConfig config;
  std::string format = "jsonl";
  std::vector<std::string> models;
  bool lenient = false;
  std::int64_t seed = -1;
  std::string config_file;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--input", opt.config.input_path, "Input records file");
  cmd->add_option("--format", opt.format, "Input format: jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  cmd->add_option("--model", opt.models, "Null model (repeatable): birgm, bipcm, bicm")
      ->check(CLI::IsMember({"birgm", "bipcm", "bicm"}));
  cmd->add_option("--fdr-t", opt.config.fdr_t, "FDR single-test level t");
  cmd->add_option("--merge-threshold", opt.config.merge_threshold,
                  "Edit-distance threshold for hashtag merging");
  cmd->add_option("--seed", opt.seed, "Random seed (required)");
  cmd->add_option("--out", opt.config.out_dir, "Output directory");
  cmd->add_option("--polarization-threshold", opt.config.polarization_threshold,
                  "Minimum neighbor-community share for assignment");
  cmd->add_option("--min-community-size", opt.config.min_community_size,
                  "Verified members required to analyze a community");
  cmd->add_flag("--lenient", opt.lenient, "Skip malformed input lines instead of failing");
  cmd->add_option("--config", opt.config_file,
                  "Config file with key = value lines; flags take precedence");
}

// key = value lines, '#' comments; keys match the long flags ('-' or '_').
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(is, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = trim(line.substr(0, eq));
    for (auto& c : key)
      if (c == '_') c = '-';
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (!key.empty()) out[key] = value;
  }
  return out;
}

void apply_config_file(const CLI::App* cmd, CliOptions& opt) {
  if (opt.config_file.empty()) return;
  const auto kv = read_config_file(opt.config_file);
  auto unset = [&](const char* flag) { return cmd->count(flag) == 0; };
  auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (const auto* v = get("input"); v && unset("--input")) opt.config.input_path = *v;
  if (const auto* v = get("format"); v && unset("--format")) opt.format = *v;
  if (const auto* v = get("fdr-t"); v && unset("--fdr-t")) opt.config.fdr_t = std::stod(*v);
  if (const auto* v = get("merge-threshold"); v && unset("--merge-threshold"))
    opt.config.merge_threshold = std::stoi(*v);
  if (const auto* v = get("seed"); v && unset("--seed")) opt.seed = std::stoll(*v);
  if (const auto* v = get("out"); v && unset("--out")) opt.config.out_dir = *v;
  if (const auto* v = get("polarization-threshold"); v && unset("--polarization-threshold"))
    opt.config.polarization_threshold = std::stod(*v);
  if (const auto* v = get("min-community-size"); v && unset("--min-community-size"))
    opt.config.min_community_size = std::stoi(*v);
  if (const auto* v = get("lenient"); v && unset("--lenient"))
    opt.lenient = *v == "true" || *v == "1";
  if (const auto* v = get("model"); v && unset("--model")) {
    std::size_t pos = 0;
    while (pos <= v->size()) {
      const auto comma = v->find(',', pos);
      const auto tok = v->substr(pos, comma == std::string::npos ? comma : comma - pos);
      if (!tok.empty()) opt.models.push_back(tok);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
}

semnet::PipelineConfig finalize(const CLI::App* cmd, CliOptions& opt) {
  apply_config_file(cmd, opt);
  opt.config.format = opt.format == "csv" ? semnet::RecordFormat::csv : semnet::RecordFormat::jsonl;
  opt.config.strict_parse = !opt.lenient;
  if (opt.seed >= 0) {
    opt.config.seed = static_cast<std::uint64_t>(opt.seed);
    opt.config.has_seed = true;
  }
  if (!opt.models.empty()) {
    // canonical order and dedup, so flag order never changes artifacts
    std::vector<semnet::ModelKind> kinds;
    for (semnet::ModelKind k :
         {semnet::ModelKind::BiRGM, semnet::ModelKind::BiPCM, semnet::ModelKind::BiCM}) {
      for (const auto& name : opt.models)
        if (semnet::model_kind_from_name(name) == k && (kinds.empty() || kinds.back() != k)) {
          kinds.push_back(k);
          break;
        }
    }
    opt.config.models = kinds;
  }
  opt.config.validate();
  return opt.config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semnet: daily semantic co-occurrence networks with null-model filtering"};
  app.require_subcommand(1);

  CliOptions opt;
  add_common_options(app.add_subcommand("run", "Run the full pipeline"), opt);
  for (const auto& name : semnet::stage_names())
    add_common_options(app.add_subcommand(name, "Run the '" + name + "' stage"), opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* cmd = app.get_subcommands().front();
  semnet::PipelineConfig config;
  try {
    config = finalize(cmd, opt);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  const std::string stage = cmd->get_name();
  try {
    const auto files =
        stage == "run" ? semnet::run_pipeline(config) : semnet::run_stage(stage, config);
    std::cout << files.size() << " artifact(s) written to " << config.out_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
