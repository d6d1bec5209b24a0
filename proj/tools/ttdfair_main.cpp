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

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ttdfair/cli.hpp"
#include "ttdfair/log.hpp"

namespace {

using ttdfair::RunConfig;
using ttdfair::SynthConfig;

void add_common_run_options(CLI::App* cmd, RunConfig* config) {
  cmd->add_option("--out", config->out_dir, "Output directory")->required();
  cmd->add_option("--lookback", config->lookback_days,
                  "Lookback horizon in days")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("!--exclude-diagnosis-day", config->include_diagnosis_day,
                "Drop events recorded on the diagnosis day itself");
  cmd->add_option("--seed", config->seed, "Root RNG seed");
  cmd->add_option("--jobs", config->jobs,
                  "Worker threads across phenotypes")
      ->check(CLI::PositiveNumber);
}

void add_data_options(CLI::App* cmd, RunConfig* config) {
  cmd->add_option("--data", config->data_dir,
                  "Dataset directory containing manifest.json");
  cmd->add_option("--events", config->events_file,
                  "Events CSV (single-cohort mode)");
  cmd->add_option("--cohort", config->cohort_file,
                  "Cohort CSV (single-cohort mode)");
  cmd->add_option("--phenotype-id", config->phenotype_id,
                  "Phenotype label in single-cohort mode");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ttdfair: time-to-diagnosis disparity and time-variant fairness "
      "auditing over longitudinal condition events"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file "
                                 "(command-line flags win)");
  app.footer("Exit codes: 0 success, 1 usage, 2 data validation, 3 runtime.\n"
             "Set TTDFAIR_LOG=error|warn|info|debug for log verbosity.");

  SynthConfig synth;
  RunConfig config;
  std::filesystem::path synth_out;

  CLI::App* synth_cmd = app.add_subcommand(
      "synth", "Generate a synthetic multi-phenotype dataset");
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();
  synth_cmd->add_option("--phenotypes", synth.n_phenotypes,
                        "Number of phenotypes");
  synth_cmd->add_option("--patients-per-group", synth.patients_per_group,
                        "Patients per phenotype per group");
  synth_cmd->add_option("--signal-codes", synth.n_signal_codes,
                        "Disease-informative codes per phenotype");
  synth_cmd->add_option("--noise-codes", synth.n_noise_codes,
                        "Shared noise codes");
  synth_cmd->add_option("--signal-prob", synth.signal_prob,
                        "Chance a positive carries each signal code");
  synth_cmd->add_option("--noise-rate", synth.noise_rate,
                        "Chance any patient carries each noise code");
  synth_cmd->add_option("--lead-mean-men", synth.lead_mean_a,
                        "Mean signal lead time for men, days");
  synth_cmd->add_option("--lead-mean-women", synth.lead_mean_b,
                        "Mean signal lead time for women, days");
  synth_cmd->add_option("--lead-sigma-men", synth.lead_sigma_a,
                        "Lead time sigma for men");
  synth_cmd->add_option("--lead-sigma-women", synth.lead_sigma_b,
                        "Lead time sigma for women");
  synth_cmd->add_option("--age-mean", synth.age_mean, "Mean age");
  synth_cmd->add_option("--age-sigma", synth.age_sigma, "Age sigma");
  synth_cmd->add_option("--horizon", synth.horizon_days,
                        "Lookback horizon in days");
  synth_cmd->add_option("--seed", synth.seed, "Root RNG seed");

  CLI::App* ttd_cmd = app.add_subcommand(
      "ttd", "Per-condition time-to-diagnosis disparity tables and summaries");
  add_data_options(ttd_cmd, &config);
  add_common_run_options(ttd_cmd, &config);
  ttd_cmd->add_option("--min-support", config.min_support,
                      "Patients per group a condition needs to be tabulated")
      ->check(CLI::PositiveNumber);

  CLI::App* audit_cmd = app.add_subcommand(
      "audit", "Train diagnosis classifiers and audit time-variant fairness");
  add_data_options(audit_cmd, &config);
  add_common_run_options(audit_cmd, &config);
  audit_cmd->add_option("-w,--window-days", config.window_days,
                        "Censoring window size in days")
      ->check(CLI::PositiveNumber);
  audit_cmd->add_option("--lambda", config.lambda, "L2 penalty strength")
      ->check(CLI::PositiveNumber);
  audit_cmd->add_option("--tol", config.tol,
                        "Convergence tolerance on gradient max-norm");
  audit_cmd->add_option("--max-iter", config.max_iter,
                        "Optimizer iteration cap");
  audit_cmd->add_option("--test-frac", config.test_frac,
                        "Held-out test fraction");
  audit_cmd->add_option("--ratio", config.ratio,
                        "Matched controls per positive")
      ->check(CLI::PositiveNumber);
  audit_cmd->add_option("--threshold", config.threshold,
                        "Probability threshold for a positive call");
  audit_cmd->add_option("--resamples", config.n_resamples,
                        "Bootstrap resamples for the MSD CI");
  audit_cmd->add_option("--alpha", config.alpha,
                        "Bootstrap CI alpha (0.05 = 95% interval)");
  audit_cmd
      ->add_option("--metrics", config.metrics,
                   "Fairness gap metrics to audit")
      ->delimiter(',')
      ->check(CLI::IsMember(
          {"recall", "specificity", "precision", "accuracy"}));
  audit_cmd->add_flag("--dump-matrices", config.dump_matrices,
                      "Write censored test matrices as sparse triplets");

  CLI::App* report_cmd = app.add_subcommand(
      "report", "Collate ttd and audit outputs into a cross-phenotype report");
  report_cmd->add_option("--out", config.out_dir,
                         "Directory holding ttd/audit outputs")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ttdfair::kExitUsage;
  }

  try {
    if (synth_cmd->parsed()) {
      ttdfair::run_synth(synth, synth_out);
    } else if (ttd_cmd->parsed()) {
      ttdfair::run_ttd(config);
    } else if (audit_cmd->parsed()) {
      ttdfair::run_audit(config);
    } else if (report_cmd->parsed()) {
      ttdfair::run_report(config);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ttdfair::exit_code_for_error(e);
  }
  return 0;
}
