#include "semnet/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "semnet/mesoscale.hpp"
#include "semnet/metrics.hpp"
#include "semnet/util.hpp"
#include "semnet/validation.hpp"

namespace fs = std::filesystem;

namespace semnet {

void PipelineConfig::validate() const {
  if (input_path.empty()) throw std::invalid_argument("input path is required");
  if (out_dir.empty()) throw std::invalid_argument("output directory is required");
  if (!has_seed) throw std::invalid_argument("seed is required for reproducible runs");
  if (merge_threshold < 0) throw std::invalid_argument("merge threshold must be >= 0");
  if (!(fdr_t > 0.0 && fdr_t < 1.0)) throw std::invalid_argument("fdr t must lie in (0,1)");
  if (!(polarization_threshold > 0.0 && polarization_threshold <= 1.0))
    throw std::invalid_argument("polarization threshold must lie in (0,1]");
  if (models.empty()) throw std::invalid_argument("at least one null model must be selected");
}

std::string PipelineConfig::canonical_string() const {
  std::ostringstream os;
  os << "fdr_t=" << format_double(fdr_t) << '\n';
  os << "format=" << (format == RecordFormat::jsonl ? "jsonl" : "csv") << '\n';
  os << "input=" << input_path << '\n';
  os << "merge_threshold=" << merge_threshold << '\n';
  os << "min_community_size=" << min_community_size << '\n';
  os << "models=";
  for (std::size_t i = 0; i < models.size(); ++i) os << (i ? "," : "") << model_kind_name(models[i]);
  os << '\n';
  os << "polarization_threshold=" << format_double(polarization_threshold) << '\n';
  os << "restarts=" << louvain_restarts << ',' << cp_restarts << '\n';
  os << "seed=" << seed << '\n';
  os << "strict=" << (strict_parse ? 1 : 0) << '\n';
  return os.str();
}

std::string PipelineConfig::config_hash() const {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_string())));
  return buf;
}

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names = {"ingest", "project",   "validate",
                                                 "communities", "mesoscale", "metrics"};
  return names;
}

namespace {

// Records every file it writes so a failing stage can be rolled back.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(fs::path root) : root_(std::move(root)) {}

  void write(const std::string& rel, const std::string& content) {
    const fs::path p = root_ / rel;
    fs::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
    os << content;
    os.close();
    if (!os) throw std::runtime_error("write failed for '" + p.string() + "'");
    written_.push_back(rel);
  }

  void rollback() {
    std::error_code ec;
    for (const auto& rel : written_) fs::remove(root_ / rel, ec);
    written_.clear();
  }

  const std::vector<std::string>& written() const { return written_; }

 private:
  fs::path root_;
  std::vector<std::string> written_;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void require_artifact(const std::string& stage, const fs::path& root, const std::string& rel,
                      const std::string& producer) {
  if (!fs::exists(root / rel))
    throw StageError(stage, "missing artifact '" + rel + "' (run stage '" + producer + "' first)");
}

std::vector<TaggedRecord> load_cached_records(const fs::path& root) {
  std::ifstream is(root / "ingest/records.jsonl", std::ios::binary);
  return parse_records(is, {RecordFormat::jsonl, true});
}

struct IngestSummary {
  Date first_day, last_day;
  int total_days = 0;
};

IngestSummary load_summary(const fs::path& root) {
  const auto j = nlohmann::json::parse(slurp(root / "ingest/summary.json"));
  IngestSummary s;
  s.first_day = *parse_date(j.at("first_day").get<std::string>());
  s.last_day = *parse_date(j.at("last_day").get<std::string>());
  s.total_days = j.at("total_days").get<int>();
  return s;
}

// --------------------------------------------------------------- stages ---

void stage_ingest(const PipelineConfig& cfg, ArtifactWriter& out) {
  std::ifstream is(cfg.input_path, std::ios::binary);
  if (!is) throw StageError("ingest", "cannot open input '" + cfg.input_path + "'");
  std::vector<ParseIssue> issues;
  std::vector<TaggedRecord> records;
  try {
    records = parse_records(is, {cfg.format, cfg.strict_parse}, &issues);
  } catch (const ParseError& e) {
    throw StageError("ingest", e.what());
  }
  if (records.empty()) throw StageError("ingest", "no records parsed from input");

  const auto counts = hashtag_counts(records);
  const MergeMap merge = build_merge_map(counts, cfg.merge_threshold);

  // The cache carries canonical hashtags; later stages apply no merging.
  std::vector<TaggedRecord> canonical = records;
  for (auto& r : canonical) {
    std::set<std::string> tags;
    for (const auto& h : r.hashtags) tags.insert(merge.resolve(h));
    r.hashtags.assign(tags.begin(), tags.end());
  }
  std::ostringstream rec_os;
  write_records_jsonl(rec_os, canonical);
  out.write("ingest/records.jsonl", rec_os.str());

  std::ostringstream mm_os;
  for (const auto& [tag, count] : counts) {
    const std::string& c = merge.resolve(tag);
    mm_os << tag << '\t' << c << '\t' << merge.frequencies.at(c) << '\n';
  }
  out.write("ingest/merge_map.tsv", mm_os.str());

  Date first = records.front().utc_day(), last = first;
  std::int64_t tagged = 0;
  std::set<std::string> users;
  for (const auto& r : records) {
    first = std::min(first, r.utc_day());
    last = std::max(last, r.utc_day());
    tagged += !r.hashtags.empty();
    users.insert(r.author_id);
  }
  nlohmann::json j;
  j["records"] = records.size();
  j["records_with_hashtags"] = tagged;
  j["users"] = users.size();
  j["raw_hashtags"] = counts.size();
  j["canonical_hashtags"] = merge.frequencies.size();
  j["first_day"] = format_date(first);
  j["last_day"] = format_date(last);
  j["total_days"] = static_cast<int>(days_from_civil(last) - days_from_civil(first) + 1);
  j["skipped_lines"] = issues.size();
  out.write("ingest/summary.json", j.dump(2));
}

void stage_project(const PipelineConfig& cfg, ArtifactWriter& out) {
  const fs::path root = cfg.out_dir;
  require_artifact("project", root, "ingest/records.jsonl", "ingest");
  const auto records = load_cached_records(root);
  const BipartiteGraph rt = build_retweet_graph(records);
  std::ostringstream bos;
  write_bipartite_tsv(bos, rt);
  out.write("retweet/bipartite.tsv", bos.str());
  std::ostringstream nos;
  write_mono_tsv(nos, naive_projection(rt, Layer::top));
  out.write("retweet/naive_projection.tsv", nos.str());
}

void stage_validate(const PipelineConfig& cfg, ArtifactWriter& out) {
  const fs::path root = cfg.out_dir;
  require_artifact("validate", root, "retweet/bipartite.tsv", "project");
  std::ifstream is(root / "retweet/bipartite.tsv");
  const BipartiteGraph rt = read_bipartite_tsv(is);
  // Projection runs on the verified layer: transpose so it sits at the bottom.
  const BipartiteGraph flipped = rt.transposed();
  auto [model, report] = fit_bicm(flipped);
  out.write("retweet/bicm_model.json", dump_model_json(model, &report));
  if (!report.converged)
    throw StageError("validate", "BiCM fit did not converge (max residual " +
                                     format_double(report.max_residual) + ")");
  const ValidatedProjection vp = validated_projection(flipped, model, cfg.fdr_t);
  std::ostringstream vos;
  write_validated_tsv(vos, flipped, vp.fdr);
  out.write("retweet/validated.tsv", vos.str());
  out.write("retweet/fdr.json", fdr_summary_json(vp.fdr));
}

struct Bundle {
  std::string id;
  std::vector<std::string> verified;
  std::vector<std::string> assigned;  // non-verified members
};

std::vector<Bundle> load_bundles(const fs::path& root) {
  const auto j = nlohmann::json::parse(slurp(root / "communities/index.json"));
  std::vector<Bundle> bundles;
  for (const auto& e : j.at("bundles")) {
    Bundle b;
    b.id = e.at("id").get<std::string>();
    std::istringstream ms(slurp(root / ("communities/" + b.id + "/members.txt")));
    std::string line;
    while (std::getline(ms, line)) {
      if (line.empty()) continue;
      const auto tab = line.find('\t');
      const std::string user = line.substr(0, tab);
      if (line.substr(tab + 1) == "verified")
        b.verified.push_back(user);
      else
        b.assigned.push_back(user);
    }
    bundles.push_back(std::move(b));
  }
  return bundles;
}

void stage_communities(const PipelineConfig& cfg, ArtifactWriter& out) {
  const fs::path root = cfg.out_dir;
  require_artifact("communities", root, "retweet/validated.tsv", "validate");
  require_artifact("communities", root, "retweet/bipartite.tsv", "project");
  std::ifstream vis(root / "retweet/validated.tsv");
  MonoGraph validated;
  try {
    validated = read_mono_tsv(vis);
  } catch (const ParseError& e) {
    throw StageError("communities", e.what());
  }
  if (validated.num_edges() < 1)
    throw StageError("communities", "validated projection has no edges; no communities to detect");

  const Partition part = louvain(validated, cfg.seed, cfg.louvain_restarts);

  // Stable community ids: larger first, ties by smallest member label.
  std::vector<std::vector<int>> groups(part.num_communities);
  for (int i = 0; i < validated.num_nodes(); ++i) groups[part.labels[i]].push_back(i);
  std::vector<int> order(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (groups[a].size() != groups[b].size()) return groups[a].size() > groups[b].size();
    return validated.labels[groups[a].front()] < validated.labels[groups[b].front()];
  });
  std::vector<int> new_id(groups.size());
  for (std::size_t r = 0; r < order.size(); ++r) new_id[order[r]] = static_cast<int>(r);

  std::map<std::string, int> verified_comm;
  for (int i = 0; i < validated.num_nodes(); ++i)
    verified_comm[validated.labels[i]] = new_id[part.labels[i]];

  nlohmann::json cj;
  cj["modularity"] = part.modularity;
  cj["num_communities"] = part.num_communities;
  cj["community"] = verified_comm;
  out.write("retweet/communities.json", cj.dump(2));

  std::ifstream bis(root / "retweet/bipartite.tsv");
  const BipartiteGraph rt = read_bipartite_tsv(bis);
  const PolarizationAssignment pol = polarization(rt, verified_comm, cfg.polarization_threshold);
  out.write("retweet/polarization.json", polarization_json(pol));

  std::vector<std::vector<std::string>> verified_members(groups.size()), assigned(groups.size());
  for (const auto& [user, c] : verified_comm) verified_members[c].push_back(user);
  for (const auto& [user, e] : pol.assigned) assigned[e.community].push_back(user);

  nlohmann::json index;
  index["bundles"] = nlohmann::json::array();
  for (std::size_t c = 0; c < groups.size(); ++c) {
    if (static_cast<int>(verified_members[c].size()) < cfg.min_community_size) continue;
    const std::string id = "c" + std::to_string(c);
    std::ostringstream ms;
    for (const auto& u : verified_members[c]) ms << u << "\tverified\n";
    for (const auto& u : assigned[c]) ms << u << "\tassigned\n";
    out.write("communities/" + id + "/members.txt", ms.str());
    index["bundles"].push_back({{"id", id},
                                {"verified", verified_members[c].size()},
                                {"assigned", assigned[c].size()}});
  }
  out.write("communities/index.json", index.dump(2));
}

// Per (bundle, day) artifact set, computed in parallel and written in a
// fixed order.
struct DailyTask {
  int bundle_idx;
  Date day;
};

void stage_mesoscale(const PipelineConfig& cfg, ArtifactWriter& out) {
  const fs::path root = cfg.out_dir;
  require_artifact("mesoscale", root, "communities/index.json", "communities");
  require_artifact("mesoscale", root, "ingest/records.jsonl", "ingest");
  const auto bundles = load_bundles(root);
  const auto records = load_cached_records(root);

  const MergeMap identity;  // cached records already carry canonical hashtags
  std::vector<std::map<Date, BipartiteGraph>> daily(bundles.size());
  for (std::size_t b = 0; b < bundles.size(); ++b) {
    std::set<std::string> members(bundles[b].verified.begin(), bundles[b].verified.end());
    members.insert(bundles[b].assigned.begin(), bundles[b].assigned.end());
    std::vector<TaggedRecord> mine;
    for (const auto& r : records)
      if (members.count(r.author_id)) mine.push_back(r);
    daily[b] = build_daily_hashtag_graphs(mine, identity);
  }

  std::vector<DailyTask> tasks;
  for (std::size_t b = 0; b < bundles.size(); ++b)
    for (const auto& [day, g] : daily[b]) tasks.push_back({static_cast<int>(b), day});

  auto mesoscale_json = [&](const MonoGraph& g, std::uint64_t seed) {
    nlohmann::json j;
    if (g.num_edges() >= 1) {
      const Partition p = louvain(g, derive_seed(seed, 1), cfg.louvain_restarts);
      j["louvain"] = nlohmann::json::parse(partition_json(g, p));
    } else {
      j["louvain"] = nullptr;
    }
    const CorePeripheryAssignment cp = detect_core_periphery(g, derive_seed(seed, 2), cfg.cp_restarts);
    j["core_periphery"] = nlohmann::json::parse(core_periphery_json(g, cp));
    const auto coreness = kcore_decomposition(g);
    nlohmann::json cj = nlohmann::json::object();
    for (int i = 0; i < g.num_nodes(); ++i) cj[g.labels[i]] = coreness[i];
    j["coreness"] = cj;
    std::vector<int> core_nodes;
    for (int i = 0; i < g.num_nodes(); ++i)
      if (cp.core[i]) core_nodes.push_back(i);
    j["innermost_shell_core_jaccard"] = core_jaccard(innermost_shell(g), core_nodes);
    return j.dump(2);
  };

  using FileList = std::vector<std::pair<std::string, std::string>>;
  std::vector<FileList> results(tasks.size());
  std::vector<std::string> task_errors(tasks.size());

// exceptions cannot leave an omp region; capture and rethrow below
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t ti = 0; ti < static_cast<std::int64_t>(tasks.size()); ++ti) {
    try {
      const auto& task = tasks[ti];
      const Bundle& bundle = bundles[task.bundle_idx];
      const BipartiteGraph& g = daily[task.bundle_idx].at(task.day);
      const std::string dir = format_date(task.day) + "/" + bundle.id + "/";
      const std::uint64_t day_seed =
          derive_seed(cfg.seed, fnv1a64(bundle.id), static_cast<std::uint64_t>(days_from_civil(task.day)));
      FileList files;

      std::ostringstream bos;
      write_bipartite_tsv(bos, g);
      files.emplace_back(dir + "bipartite.tsv", bos.str());

      const MonoGraph naive = naive_projection(g, Layer::bottom);
      std::ostringstream nos;
      write_mono_tsv(nos, naive);
      files.emplace_back(dir + "naive/projection.tsv", nos.str());
      files.emplace_back(dir + "naive/mesoscale.json", mesoscale_json(naive, derive_seed(day_seed, 0)));

      for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
        const ModelKind kind = cfg.models[mi];
        const std::string mdir = dir + model_kind_name(kind) + "/";
        NullModel model;
        SolverReport report;
        try {
          switch (kind) {
            case ModelKind::BiCM: {
              auto fitted = fit_bicm(g);
              model = std::move(fitted.first);
              report = fitted.second;
              break;
            }
            case ModelKind::BiPCM:
              model = fit_bipcm(g, Layer::bottom);
              break;
            case ModelKind::BiRGM:
              model = fit_birgm(g);
              break;
          }
        } catch (const DegenerateDegreeError& e) {
          // Single-user or single-hashtag days saturate the BiCM; record why
          // and move on rather than aborting the whole run.
          nlohmann::json err;
          err["kind"] = model_kind_name(kind);
          err["degenerate"] = e.what();
          files.emplace_back(mdir + "model.json", err.dump(2));
          continue;
        }
        files.emplace_back(mdir + "model.json",
                           dump_model_json(model, kind == ModelKind::BiCM ? &report : nullptr));
        const ValidatedProjection vp = validated_projection(g, model, cfg.fdr_t);
        std::ostringstream vos;
        write_validated_tsv(vos, g, vp.fdr);
        files.emplace_back(mdir + "projection.tsv", vos.str());
        files.emplace_back(mdir + "fdr.json", fdr_summary_json(vp.fdr));
        files.emplace_back(mdir + "mesoscale.json",
                           mesoscale_json(vp.graph, derive_seed(day_seed, 16 + mi)));
      }
      results[ti] = std::move(files);
    } catch (const std::exception& e) {
      task_errors[ti] = e.what();
    }
  }

  for (std::size_t ti = 0; ti < tasks.size(); ++ti)
    if (!task_errors[ti].empty())
      throw StageError("mesoscale", format_date(tasks[ti].day) + "/" +
                                        bundles[tasks[ti].bundle_idx].id + ": " + task_errors[ti]);
  for (const auto& files : results)
    for (const auto& [rel, content] : files) out.write(rel, content);
}

void stage_metrics(const PipelineConfig& cfg, ArtifactWriter& out) {
  const fs::path root = cfg.out_dir;
  require_artifact("metrics", root, "communities/index.json", "communities");
  require_artifact("metrics", root, "ingest/summary.json", "ingest");
  const auto bundles = load_bundles(root);
  const IngestSummary summary = load_summary(root);

  // Daily directories, discovered from disk.
  std::vector<Date> dates;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    if (auto d = parse_date(entry.path().filename().string())) dates.push_back(*d);
  }
  std::sort(dates.begin(), dates.end());

  auto load_graph = [&](const fs::path& bipartite, const fs::path& projection) {
    std::ifstream bis(bipartite);
    const BipartiteGraph g = read_bipartite_tsv(bis);
    std::ifstream pis(projection);
    const MonoGraph edges_only = read_mono_tsv(pis);
    // Re-anchor the edge list on the day's full hashtag set so isolated
    // hashtags stay in the report.
    std::map<std::string, int> idx;
    for (int a = 0; a < g.num_bottom(); ++a) idx[g.bottom_labels[a]] = a;
    std::vector<MonoGraph::Edge> edges;
    for (const auto& e : edges_only.edges)
      edges.push_back({idx.at(edges_only.labels[e.u]), idx.at(edges_only.labels[e.v]), e.weight});
    return MonoGraph::from_edges(g.bottom_labels, std::move(edges));
  };

  for (const auto& bundle : bundles) {
    std::map<Date, MonoGraph> naive_by_day;
    std::map<Date, BipartiteGraph> bipartite_by_day;
    for (const Date& day : dates) {
      const fs::path dir = root / format_date(day) / bundle.id;
      if (!fs::exists(dir / "bipartite.tsv")) continue;
      std::ifstream bis(dir / "bipartite.tsv");
      bipartite_by_day.emplace(day, read_bipartite_tsv(bis));
      const MonoGraph naive = load_graph(dir / "bipartite.tsv", dir / "naive/projection.tsv");
      naive_by_day.emplace(day, naive);

      const std::string rel_dir = format_date(day) + "/" + bundle.id + "/";
      out.write(rel_dir + "naive/metrics.json", metrics_report_json(naive, summarize(naive)));
      for (ModelKind kind : cfg.models) {
        const fs::path pj = dir / model_kind_name(kind) / "projection.tsv";
        if (!fs::exists(pj)) continue;  // degenerate model on this day
        const MonoGraph vg = load_graph(dir / "bipartite.tsv", pj);
        out.write(rel_dir + model_kind_name(kind) + "/metrics.json",
                  metrics_report_json(vg, summarize(vg)));
      }
    }

    std::ostringstream hp;
    for (const auto& [tag, v] : hashtag_persistence(bipartite_by_day, summary.total_days))
      hp << tag << '\t' << format_double(v) << '\n';
    out.write("communities/" + bundle.id + "/hashtag_persistence.tsv", hp.str());

    std::ostringstream tp;
    for (const auto& [triple, v] : triadic_persistence(naive_by_day, summary.total_days))
      tp << triple[0] << '\t' << triple[1] << '\t' << triple[2] << '\t' << format_double(v) << '\n';
    out.write("communities/" + bundle.id + "/triadic_persistence.tsv", tp.str());

    std::ostringstream ts;
    ts << "date,node_count,mean_degree,core_size,periphery_size\n";
    for (const auto& [day, naive] : naive_by_day) {
      const auto ms = nlohmann::json::parse(
          slurp(root / format_date(day) / bundle.id / "naive/mesoscale.json"));
      std::int64_t core = 0, peri = 0;
      for (const auto& [label, role] : ms.at("core_periphery").at("roles").items())
        (role.get<std::string>() == "core" ? core : peri) += 1;
      const double mean_deg =
          naive.num_nodes() ? 2.0 * naive.num_edges() / static_cast<double>(naive.num_nodes()) : 0.0;
      ts << format_date(day) << ',' << naive.num_nodes() << ',' << format_double(mean_deg) << ','
         << core << ',' << peri << '\n';
    }
    out.write("communities/" + bundle.id + "/timeseries.csv", ts.str());
  }
}

void dispatch_stage(const std::string& name, const PipelineConfig& cfg, ArtifactWriter& out) {
  if (name == "ingest")
    stage_ingest(cfg, out);
  else if (name == "project")
    stage_project(cfg, out);
  else if (name == "validate")
    stage_validate(cfg, out);
  else if (name == "communities")
    stage_communities(cfg, out);
  else if (name == "mesoscale")
    stage_mesoscale(cfg, out);
  else if (name == "metrics")
    stage_metrics(cfg, out);
  else
    throw std::invalid_argument("unknown stage '" + name + "'");
}

}  // namespace

std::vector<std::string> run_stage(const std::string& name, const PipelineConfig& config) {
  config.validate();
  fs::create_directories(config.out_dir);
  ArtifactWriter out(config.out_dir);
  try {
    dispatch_stage(name, config, out);
  } catch (...) {
    out.rollback();
    throw;
  }
  write_manifest(config);
  auto files = out.written();
  files.push_back("manifest.json");
  return files;
}

std::vector<std::string> run_pipeline(const PipelineConfig& config) {
  config.validate();
  fs::create_directories(config.out_dir);
  std::vector<std::string> all;
  for (const auto& name : stage_names()) {
    ArtifactWriter out(config.out_dir);
    try {
      dispatch_stage(name, config, out);
    } catch (const StageError&) {
      out.rollback();
      throw;
    } catch (const std::exception& e) {
      out.rollback();
      throw StageError(name, e.what());
    }
    all.insert(all.end(), out.written().begin(), out.written().end());
  }
  write_manifest(config);
  all.push_back("manifest.json");
  return all;
}

std::string write_manifest(const PipelineConfig& config) {
  const fs::path root = config.out_dir;
  nlohmann::json j;
  j["version"] = kVersion;
  j["config"] = nlohmann::json::parse(
      [&] {
        nlohmann::json c;
        std::istringstream is(config.canonical_string());
        std::string line;
        while (std::getline(is, line)) {
          const auto eq = line.find('=');
          c[line.substr(0, eq)] = line.substr(eq + 1);
        }
        return c.dump();
      }());
  j["config_hash"] = config.config_hash();
  {
    nlohmann::json in;
    in["path"] = config.input_path;
    std::error_code ec;
    const auto content = fs::exists(config.input_path, ec) ? slurp(config.input_path) : "";
    in["bytes"] = content.size();
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(content)));
    in["fnv64"] = buf;
    j["input"] = in;
  }
  if (fs::exists(root / "communities/index.json"))
    j["community_bundles"] = nlohmann::json::parse(slurp(root / "communities/index.json"))["bundles"];
  else
    j["community_bundles"] = nlohmann::json::array();

  std::map<std::string, std::string> artifacts;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const std::string rel = fs::relative(entry.path(), root).generic_string();
    if (rel == "manifest.json") continue;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(slurp(entry.path()))));
    artifacts[rel] = buf;
  }
  j["artifacts"] = artifacts;

  const std::string text = j.dump(2) + "\n";
  std::ofstream os(root / "manifest.json", std::ios::binary);
  os << text;
  return text;
}

}  // namespace semnet
