/*
 * Copyright 2026 The ttdfair Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ttdfair/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "json.hpp"
#include "ttdfair/classifier.hpp"
#include "ttdfair/csv.hpp"
#include "ttdfair/errors.hpp"
#include "ttdfair/fairness.hpp"
#include "ttdfair/features.hpp"
#include "ttdfair/ingest.hpp"
#include "ttdfair/log.hpp"
#include "ttdfair/rng.hpp"
#include "ttdfair/ttd.hpp"

namespace ttdfair {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

void write_text_atomic(const fs::path& path, const std::string& bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << bytes;
  }
  fs::rename(tmp, path);
}

void write_json(const fs::path& path, const ordered_json& doc) {
  write_text_atomic(path, doc.dump(2) + "\n");
}

ordered_json opt_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

/// Runs fn(0..n-1) on up to `jobs` worker threads; rethrows the
/// lowest-index exception so failures are deterministic.
void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (jobs <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void require_file(const fs::path& path, const char* what) {
  if (!fs::exists(path)) {
    throw ValidationError(std::string(what) + " does not exist: " +
                          path.string());
  }
}

ordered_json config_json(const RunConfig& c, const char* command) {
  ordered_json metrics = ordered_json::array();
  for (const auto& m : c.metrics) metrics.push_back(m);
  return ordered_json{
      {"command", command},
      {"data_dir", c.data_dir.string()},
      {"events_file", c.events_file.string()},
      {"cohort_file", c.cohort_file.string()},
      {"phenotype_id", c.phenotype_id},
      {"out_dir", c.out_dir.string()},
      {"lookback_days", c.lookback_days},
      {"include_diagnosis_day", c.include_diagnosis_day},
      {"window_days", c.window_days},
      {"lambda", c.lambda},
      {"tol", c.tol},
      {"max_iter", c.max_iter},
      {"test_frac", c.test_frac},
      {"min_support", c.min_support},
      {"ratio", c.ratio},
      {"threshold", c.threshold},
      {"n_resamples", c.n_resamples},
      {"alpha", c.alpha},
      {"seed", c.seed},
      {"metrics", std::move(metrics)},
      {"jobs", c.jobs},
      {"dump_matrices", c.dump_matrices},
  };
}

ordered_json stats_json(const IngestStats& s) {
  return ordered_json{
      {"n_members", s.n_members},
      {"n_events_total", s.n_events_total},
      {"n_events_kept", s.n_events_kept},
      {"n_events_unknown_patient", s.n_events_unknown_patient},
      {"n_events_outside_window", s.n_events_outside_window},
      {"n_events_diagnosis_day_dropped", s.n_events_diagnosis_day_dropped},
      {"n_events_deduplicated", s.n_events_deduplicated},
      {"vocabulary_size", s.vocabulary_size},
  };
}

ordered_json summary_json(const DisparitySummary& s) {
  return ordered_json{
      {"n_conditions", s.n_conditions},
      {"frac_women_later", s.frac_b_later},
      {"mean_abs_diff_days", s.mean_abs_diff},
      {"frac_abs_diff_over_100d", s.frac_over_100d},
  };
}

CohortHistories load_cohort(const PhenotypeFiles& files,
                            const RunConfig& config, IngestStats* stats) {
  require_file(files.events, "events file");
  require_file(files.cohort, "cohort file");

  std::vector<ConditionEvent> events;
  std::vector<CohortMember> members;
  try {
    std::ifstream in(files.events, std::ios::binary);
    events = parse_condition_events(in);
  } catch (const ParseError& e) {
    throw ParseError(files.events.string() + ": " + e.what());
  }
  try {
    std::ifstream in(files.cohort, std::ios::binary);
    members = parse_cohort_file(in);
  } catch (const ParseError& e) {
    throw ParseError(files.cohort.string() + ": " + e.what());
  }
  if (members.empty()) {
    throw ValidationError("cohort file " + files.cohort.string() +
                          " has no members");
  }

  IngestOptions options;
  options.phenotype_id = files.id;
  options.lookback_days = config.lookback_days;
  options.include_diagnosis_day = config.include_diagnosis_day;
  CohortHistories cohort = build_histories(events, members, options, stats);
  if (stats && stats->n_events_unknown_patient > 0) {
    log_warn(files.id + ": " +
             std::to_string(stats->n_events_unknown_patient) +
             " events reference patients outside the cohort");
  }
  return cohort;
}

std::vector<PhenotypeFiles> resolve_inputs(const RunConfig& config,
                                           bool require_manifest) {
  if (!config.data_dir.empty()) {
    fs::path manifest = config.data_dir / "manifest.json";
    require_file(manifest, "manifest");
    return read_manifest(manifest);
  }
  if (require_manifest) {
    throw ArgumentError(
        "audit needs --data <dir> with a manifest.json: controls are drawn "
        "from sibling phenotypes");
  }
  if (config.events_file.empty() || config.cohort_file.empty()) {
    throw ArgumentError("provide --data <dir> or both --events and --cohort");
  }
  return {{config.phenotype_id, config.events_file, config.cohort_file}};
}

}  // namespace

std::vector<PhenotypeFiles> read_manifest(const fs::path& manifest_file) {
  std::ifstream in(manifest_file);
  if (!in) throw Error("cannot read " + manifest_file.string());
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(manifest_file.string() + ": " + e.what());
  }
  if (!doc.contains("phenotypes") || !doc["phenotypes"].is_array()) {
    throw ParseError(manifest_file.string() +
                     ": missing 'phenotypes' array");
  }
  fs::path base = manifest_file.parent_path();
  std::vector<PhenotypeFiles> out;
  for (const auto& entry : doc["phenotypes"]) {
    PhenotypeFiles files;
    files.id = entry.at("id").get<std::string>();
    files.events = base / entry.at("events_file").get<std::string>();
    files.cohort = base / entry.at("cohort_file").get<std::string>();
    out.push_back(std::move(files));
  }
  if (out.empty()) {
    throw ValidationError(manifest_file.string() + ": no phenotypes listed");
  }
  return out;
}

void run_synth(const SynthConfig& config, const fs::path& out_dir) {
  if (out_dir.empty()) throw ArgumentError("synth needs --out <dir>");
  write_dataset(generate(config), out_dir);
}

void run_ttd(const RunConfig& config) {
  if (config.out_dir.empty()) throw ArgumentError("ttd needs --out <dir>");
  auto entries = resolve_inputs(config, /*require_manifest=*/false);
  fs::create_directories(config.out_dir);

  std::vector<std::pair<std::string, DisparitySummary>> summaries(
      entries.size());
  parallel_for(entries.size(), config.jobs, [&](std::size_t i) {
    const auto& entry = entries[i];
    IngestStats stats;
    CohortHistories cohort = load_cohort(entry, config, &stats);
    write_json(config.out_dir / ("ingest_" + entry.id + ".json"),
               ordered_json{{"command", "ttd"},
                            {"phenotype_id", entry.id},
                            {"config", config_json(config, "ttd")},
                            {"stats", stats_json(stats)}});

    auto table = condition_ttd_table(cohort, config.min_support);

    std::string csv =
        "condition_code,n_men,n_women,mean_ttd_men,mean_ttd_women,diff_days\n";
    for (const auto& row : table) {
      csv += row.condition_code;
      csv += ',';
      csv += std::to_string(row.n_a);
      csv += ',';
      csv += std::to_string(row.n_b);
      csv += ',';
      csv += format_double(row.mean_ttd_a);
      csv += ',';
      csv += format_double(row.mean_ttd_b);
      csv += ',';
      csv += format_double(row.diff);
      csv += '\n';
    }
    write_text_atomic(config.out_dir / ("ttd_" + entry.id + ".csv"), csv);

    if (table.empty()) {
      throw ValidationError(
          "phenotype " + entry.id +
          ": no condition meets min_support in both groups; nothing to "
          "summarize");
    }
    DisparitySummary summary = disparity_summary(table);
    summaries[i] = {entry.id, summary};
    write_json(
        config.out_dir / ("ttd_summary_" + entry.id + ".json"),
        ordered_json{{"command", "ttd"},
                     {"phenotype_id", entry.id},
                     {"config", config_json(config, "ttd")},
                     {"diff_sign_convention", "women_minus_men"},
                     {"summary", summary_json(summary)}});
  });

  CrossPhenotypeSummary cross = cross_phenotype_summary(summaries);
  ordered_json per_ph = ordered_json::object();
  for (const auto& [id, s] : summaries) per_ph[id] = summary_json(s);
  write_json(config.out_dir / "ttd_cross_phenotype.json",
             ordered_json{{"command", "ttd"},
                          {"config", config_json(config, "ttd")},
                          {"diff_sign_convention", "women_minus_men"},
                          {"n_phenotypes", cross.n_phenotypes},
                          {"total_conditions", cross.total_conditions},
                          {"unweighted", summary_json(cross.unweighted)},
                          {"weighted_by_conditions",
                           summary_json(cross.weighted)},
                          {"per_phenotype", std::move(per_ph)}});
}

namespace {

struct MetricReport {
  ordered_json json;
};

ordered_json group_values_json(const WindowEvaluation& ev, GapMetric metric,
                               Group g) {
  ordered_json arr = ordered_json::array();
  for (int i = 1; i <= ev.spec().n_windows; ++i) {
    GroupConfusion conf = ev.confusion(i);
    arr.push_back(opt_json(
        group_metric(metric, g == Group::A ? conf.a : conf.b)));
  }
  return arr;
}

void audit_phenotype(const RunConfig& config, const PhenotypeFiles& entry,
                     const CohortHistories& positives,
                     const IngestStats& ingest_stats,
                     std::span<const PatientHistory> pool,
                     std::size_t pool_dropped) {
  const std::string& id = entry.id;

  NegativeSamplingResult sampled = sample_negatives(
      positives, pool, config.ratio, derive_seed(config.seed, "negatives:" + id));
  if (!sampled.unmatched_positive_ids.empty()) {
    log_warn(id + ": " +
             std::to_string(sampled.unmatched_positive_ids.size()) +
             " positives lack a full set of matched controls");
  }

  LabeledCohort labeled = make_labeled_cohort(positives, sampled.negatives);
  SplitIndices split = stratified_split(labeled, config.test_frac,
                                        derive_seed(config.seed, "split:" + id));
  LabeledCohort train_set = select_rows(labeled, split.train_rows);
  LabeledCohort test_set = select_rows(labeled, split.test_rows);

  TrainOptions train_options;
  train_options.lambda = config.lambda;
  train_options.tol = config.tol;
  train_options.max_iter = config.max_iter;
  train_options.seed = derive_seed(config.seed, "train:" + id);
  LogRegModel model = train(full_matrix(train_set), train_set.labels,
                            train_set.vocabulary, train_options);
  std::string model_file = "model_" + id + ".json";
  save_model(model, config.out_dir / model_file);

  WindowSpec spec = WindowSpec::make(config.lookback_days, config.window_days);
  WindowEvaluation ev =
      WindowEvaluation::run(model, test_set, spec, config.threshold);

  std::vector<GapMetric> metrics;
  for (const auto& name : config.metrics) {
    auto m = metric_from_name(name);
    if (!m) throw ArgumentError("unknown metric '" + name + "'");
    metrics.push_back(*m);
  }

  ordered_json metrics_json = ordered_json::object();
  for (GapMetric metric : metrics) {
    GapSeries series = ev.series(metric);
    ordered_json entry_json = ordered_json::object();
    ordered_json series_json = ordered_json::array();
    for (const auto& v : series.values) series_json.push_back(opt_json(v));
    entry_json["series"] = std::move(series_json);
    entry_json["by_group"] =
        ordered_json{{"men", group_values_json(ev, metric, Group::A)},
                     {"women", group_values_json(ev, metric, Group::B)}};

    if (series.n_defined() == 0) {
      entry_json["msd"] = nullptr;
      entry_json["msd_error"] = "every window is undefined for this metric";
    } else {
      BootstrapOptions boot;
      boot.n_resamples = config.n_resamples;
      boot.alpha = config.alpha;
      boot.seed = derive_seed(config.seed,
                              "bootstrap:" + id + ":" +
                                  std::string(metric_name(metric)));
      MsdResult result =
          bootstrap_msd(model, test_set, spec, metric, config.threshold, boot);
      entry_json["msd"] = result.msd;
      entry_json["mean_gap"] = result.mean_gap;
      entry_json["mse"] = result.mse;
      entry_json["n_windows_used"] = result.n_windows_used;
      entry_json["ci_low"] = result.ci->first;
      entry_json["ci_high"] = result.ci->second;
      entry_json["bootstrap"] =
          ordered_json{{"n_resamples", config.n_resamples},
                       {"kept", result.n_resamples_kept},
                       {"discarded", result.n_resamples_discarded},
                       {"alpha", config.alpha}};
    }

    try {
      TrendFit trend = gap_trend(series);
      entry_json["trend"] = ordered_json{{"slope", trend.slope},
                                         {"intercept", trend.intercept},
                                         {"n_points", trend.n_points}};
    } catch (const ValidationError& e) {
      entry_json["trend"] = nullptr;
      entry_json["trend_error"] = e.what();
    }
    metrics_json[std::string(metric_name(metric))] = std::move(entry_json);
  }

  // Plot data: one row per window with raw per-group values and gaps.
  std::string csv = "window_index,day_cutoff";
  for (GapMetric metric : metrics) {
    std::string name(metric_name(metric));
    csv += "," + name + "_men," + name + "_women," + name + "_gap";
  }
  csv += '\n';
  for (int i = 1; i <= spec.n_windows; ++i) {
    GroupConfusion conf = ev.confusion(i);
    csv += std::to_string(i);
    csv += ',';
    csv += std::to_string(spec.cutoff_day(i));
    for (GapMetric metric : metrics) {
      auto va = group_metric(metric, conf.a);
      auto vb = group_metric(metric, conf.b);
      auto g = gap(metric, conf);
      csv += ',';
      if (va) csv += format_double(*va);
      csv += ',';
      if (vb) csv += format_double(*vb);
      csv += ',';
      if (g) csv += format_double(*g);
    }
    csv += '\n';
  }
  write_text_atomic(config.out_dir / ("audit_windows_" + id + ".csv"), csv);

  if (config.dump_matrices) {
    fs::path mdir = config.out_dir / "matrices" / id;
    fs::create_directories(mdir);
    ordered_json rows = ordered_json::array();
    for (const auto& row : test_set.rows) rows.push_back(row.member.patient_id);
    ordered_json cols = ordered_json::array();
    for (const auto& code : test_set.vocabulary) cols.push_back(code);
    write_json(mdir / "labels.json",
               ordered_json{{"rows", std::move(rows)},
                            {"cols", std::move(cols)}});
    for (int i = 1; i <= spec.n_windows; ++i) {
      std::ostringstream dump;
      dump_matrix(censored_matrix(test_set, spec, i), dump);
      write_text_atomic(mdir / ("window_" + std::to_string(i) + ".csv"),
                        dump.str());
    }
  }

  std::size_t test_a = 0, test_pos = 0;
  for (std::size_t r = 0; r < test_set.n_rows(); ++r) {
    if (test_set.groups[r] == Group::A) ++test_a;
    if (test_set.labels[r] == 1) ++test_pos;
  }
  ordered_json unmatched = ordered_json::array();
  for (const auto& pid : sampled.unmatched_positive_ids) {
    unmatched.push_back(pid);
  }

  write_json(
      config.out_dir / ("audit_" + id + ".json"),
      ordered_json{
          {"command", "audit"},
          {"phenotype_id", id},
          {"config", config_json(config, "audit")},
          {"gap_sign_convention", "men_minus_women"},
          {"ingest", stats_json(ingest_stats)},
          {"negatives",
           {{"n_pool", pool.size()},
            {"n_pool_dropped_shared_ids", pool_dropped},
            {"n_matched", sampled.negatives.size()},
            {"n_unmatched_positives", sampled.unmatched_positive_ids.size()},
            {"unmatched_positive_ids", std::move(unmatched)}}},
          {"cohort",
           {{"n_rows", labeled.n_rows()},
            {"n_positives", positives.histories.size()},
            {"n_negatives", sampled.negatives.size()},
            {"vocabulary_size", labeled.vocabulary.size()}}},
          {"split",
           {{"n_train", split.train_rows.size()},
            {"n_test", split.test_rows.size()},
            {"n_test_men", test_a},
            {"n_test_women", split.test_rows.size() - test_a},
            {"n_test_positives", test_pos}}},
          {"model",
           {{"file", model_file},
            {"lambda", model.lambda},
            {"iterations", model.info.iterations},
            {"converged", model.info.converged},
            {"final_objective", model.info.final_objective},
            {"grad_max_norm", model.info.grad_max_norm}}},
          {"windows",
           {{"window_days", spec.window_days},
            {"n_windows", spec.n_windows},
            {"horizon_days", spec.horizon_days}}},
          {"metrics", std::move(metrics_json)},
      });
}

}  // namespace

void run_audit(const RunConfig& config) {
  if (config.out_dir.empty()) throw ArgumentError("audit needs --out <dir>");
  auto entries = resolve_inputs(config, /*require_manifest=*/true);
  if (entries.size() < 2) {
    throw ValidationError(
        "audit needs at least two phenotypes; controls come from sibling "
        "phenotypes");
  }
  fs::create_directories(config.out_dir);

  std::vector<CohortHistories> cohorts(entries.size());
  std::vector<IngestStats> stats(entries.size());
  parallel_for(entries.size(), config.jobs, [&](std::size_t i) {
    cohorts[i] = load_cohort(entries[i], config, &stats[i]);
    write_json(config.out_dir / ("ingest_" + entries[i].id + ".json"),
               ordered_json{{"command", "audit"},
                            {"phenotype_id", entries[i].id},
                            {"config", config_json(config, "audit")},
                            {"stats", stats_json(stats[i])}});
  });

  parallel_for(entries.size(), config.jobs, [&](std::size_t i) {
    // Control pool: histories of every other phenotype, deduplicated by
    // patient id (manifest order wins) and excluding the positives.
    std::unordered_set<std::string> taken;
    for (const auto& h : cohorts[i].histories) {
      taken.insert(h.member.patient_id);
    }
    std::vector<PatientHistory> pool;
    std::size_t dropped = 0;
    for (std::size_t q = 0; q < entries.size(); ++q) {
      if (q == i) continue;
      for (const auto& h : cohorts[q].histories) {
        if (taken.insert(h.member.patient_id).second) {
          pool.push_back(h);
        } else {
          ++dropped;
        }
      }
    }
    audit_phenotype(config, entries[i], cohorts[i], stats[i], pool, dropped);
  });
}

void run_report(const RunConfig& config) {
  if (config.out_dir.empty()) throw ArgumentError("report needs --out <dir>");
  require_file(config.out_dir, "report input directory");

  std::vector<fs::path> summary_files, audit_files;
  for (const auto& entry : fs::directory_iterator(config.out_dir)) {
    std::string name = entry.path().filename().string();
    if (name.rfind("ttd_summary_", 0) == 0) summary_files.push_back(entry.path());
    if (name.rfind("audit_", 0) == 0 && name.rfind("audit_windows_", 0) != 0) {
      audit_files.push_back(entry.path());
    }
  }
  std::sort(summary_files.begin(), summary_files.end());
  std::sort(audit_files.begin(), audit_files.end());
  if (summary_files.empty() && audit_files.empty()) {
    throw ValidationError("no ttd_summary_*.json or audit_*.json in " +
                          config.out_dir.string());
  }

  auto load_json = [](const fs::path& p) {
    std::ifstream in(p);
    ordered_json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(p.string() + ": " + e.what());
    }
    return doc;
  };

  ordered_json report{{"command", "report"},
                      {"config", config_json(config, "report")}};

  std::vector<std::pair<std::string, DisparitySummary>> summaries;
  ordered_json ttd_per_ph = ordered_json::object();
  for (const auto& file : summary_files) {
    ordered_json doc = load_json(file);
    DisparitySummary s;
    const auto& j = doc.at("summary");
    s.n_conditions = j.at("n_conditions").get<std::size_t>();
    s.frac_b_later = j.at("frac_women_later").get<double>();
    s.mean_abs_diff = j.at("mean_abs_diff_days").get<double>();
    s.frac_over_100d = j.at("frac_abs_diff_over_100d").get<double>();
    std::string id = doc.at("phenotype_id").get<std::string>();
    ttd_per_ph[id] = summary_json(s);
    summaries.emplace_back(std::move(id), s);
  }
  if (!summaries.empty()) {
    CrossPhenotypeSummary cross = cross_phenotype_summary(summaries);
    report["ttd"] = ordered_json{
        {"diff_sign_convention", "women_minus_men"},
        {"n_phenotypes", cross.n_phenotypes},
        {"total_conditions", cross.total_conditions},
        {"unweighted", summary_json(cross.unweighted)},
        {"weighted_by_conditions", summary_json(cross.weighted)},
        {"per_phenotype", std::move(ttd_per_ph)}};
  }

  struct RankRow {
    std::string metric;
    std::string id;
    double msd, ci_low, ci_high, mean_gap, mse;
    std::size_t n_windows_used, n_test;
  };
  std::vector<RankRow> ranking;
  for (const auto& file : audit_files) {
    ordered_json doc = load_json(file);
    std::string id = doc.at("phenotype_id").get<std::string>();
    auto n_test = doc.at("split").at("n_test").get<std::size_t>();
    for (const auto& [metric, m] : doc.at("metrics").items()) {
      if (m.at("msd").is_null()) continue;
      RankRow row;
      row.metric = metric;
      row.id = id;
      row.msd = m.at("msd").get<double>();
      row.ci_low = m.at("ci_low").get<double>();
      row.ci_high = m.at("ci_high").get<double>();
      row.mean_gap = m.at("mean_gap").get<double>();
      row.mse = m.at("mse").get<double>();
      row.n_windows_used = m.at("n_windows_used").get<std::size_t>();
      row.n_test = n_test;
      ranking.push_back(std::move(row));
    }
  }
  std::sort(ranking.begin(), ranking.end(),
            [](const RankRow& x, const RankRow& y) {
              if (x.metric != y.metric) return x.metric < y.metric;
              double ax = std::abs(x.msd), ay = std::abs(y.msd);
              if (ax != ay) return ax > ay;
              return x.id < y.id;
            });

  std::string csv =
      "metric,phenotype_id,msd,ci_low,ci_high,mean_gap,mse,n_windows_used,"
      "n_test\n";
  ordered_json ranking_json = ordered_json::array();
  for (const auto& r : ranking) {
    csv += r.metric + "," + r.id + "," + format_double(r.msd) + "," +
           format_double(r.ci_low) + "," + format_double(r.ci_high) + "," +
           format_double(r.mean_gap) + "," + format_double(r.mse) + "," +
           std::to_string(r.n_windows_used) + "," + std::to_string(r.n_test) +
           "\n";
    ranking_json.push_back(ordered_json{{"metric", r.metric},
                                        {"phenotype_id", r.id},
                                        {"msd", r.msd},
                                        {"ci_low", r.ci_low},
                                        {"ci_high", r.ci_high},
                                        {"mean_gap", r.mean_gap},
                                        {"mse", r.mse},
                                        {"n_windows_used", r.n_windows_used},
                                        {"n_test", r.n_test}});
  }
  if (!ranking.empty()) {
    report["msd_ranking"] = std::move(ranking_json);
    write_text_atomic(config.out_dir / "msd_ranking.csv", csv);
  }
  write_json(config.out_dir / "report.json", report);
}

int exit_code_for_error(const std::exception& e) {
  if (dynamic_cast<const ArgumentError*>(&e)) return kExitUsage;
  if (dynamic_cast<const ParseError*>(&e)) return kExitDataError;
  if (dynamic_cast<const ValidationError*>(&e)) return kExitDataError;
  return kExitRuntime;
}

}  // namespace ttdfair
