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

#ifndef TTDFAIR_CLI_HPP
#define TTDFAIR_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ttdfair/synth.hpp"

namespace ttdfair {

/// Resolved parameters of a ttd / audit / report run. Every report embeds
/// this config, so identical configs reproduce identical output bytes.
struct RunConfig {
  // Inputs: either a dataset directory holding manifest.json (required for
  // audit, which draws controls from sibling phenotypes), or a single
  // events/cohort file pair (ttd only).
  std::filesystem::path data_dir;
  std::filesystem::path events_file;
  std::filesystem::path cohort_file;
  std::string phenotype_id = "cohort";
  std::filesystem::path out_dir;

  int lookback_days = 1095;
  bool include_diagnosis_day = true;
  int window_days = 30;
  double lambda = 1.0;
  double tol = 1e-6;
  int max_iter = 1000;
  double test_frac = 0.2;
  std::size_t min_support = 10;
  std::size_t ratio = 1;
  double threshold = 0.5;
  std::size_t n_resamples = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  std::vector<std::string> metrics{"recall", "specificity", "precision"};
  int jobs = 1;
  bool dump_matrices = false;
};

/// One phenotype's input files, as listed by a dataset manifest.
struct PhenotypeFiles {
  std::string id;
  std::filesystem::path events;
  std::filesystem::path cohort;
};

/// Reads manifest.json (paths resolved relative to the manifest directory).
std::vector<PhenotypeFiles> read_manifest(
    const std::filesystem::path& manifest_file);

/// Per-phenotype TTD disparity tables and summaries, plus a cross-phenotype
/// summary (unweighted and condition-count-weighted pooling).
void run_ttd(const RunConfig& config);

/// Full fairness audit per phenotype: matched controls, stratified split,
/// training on the uncensored matrix, per-window gaps, MSD with bootstrap
/// CI, and trend fits. Writes report JSON, plot-data CSV, and the model.
void run_audit(const RunConfig& config);

/// Collates ttd_summary_*.json and audit_*.json from out_dir into
/// report.json and msd_ranking.csv.
void run_report(const RunConfig& config);

void run_synth(const SynthConfig& config,
               const std::filesystem::path& out_dir);

// Process exit codes: 0 success, 1 usage, 2 data validation, 3 runtime.
constexpr int kExitUsage = 1;
constexpr int kExitDataError = 2;
constexpr int kExitRuntime = 3;

int exit_code_for_error(const std::exception& e);

}  // namespace ttdfair

#endif  // TTDFAIR_CLI_HPP
