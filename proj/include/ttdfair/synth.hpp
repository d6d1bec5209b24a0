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

#ifndef TTDFAIR_SYNTH_HPP
#define TTDFAIR_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ttdfair {

/// Controls for the synthetic multi-phenotype generator. Positives of each
/// phenotype carry phenotype-specific signal codes whose lead time (days
/// before diagnosis) is drawn from a per-group truncated normal, so group
/// disparities of known size can be injected. Noise codes are shared across
/// phenotypes and appear in everyone at a flat rate; sibling phenotypes
/// double as the control pool for classifier audits.
struct SynthConfig {
  std::size_t n_phenotypes = 2;
  std::size_t patients_per_group = 500;  // per phenotype, per group
  std::size_t n_signal_codes = 5;
  std::size_t n_noise_codes = 50;
  double signal_prob = 1.0;   // chance a positive carries each signal code
  double noise_rate = 0.10;   // chance any patient carries each noise code
  double lead_mean_a = 400.0;  // men: mean signal lead time, days
  double lead_mean_b = 430.0;  // women
  double lead_sigma_a = 20.0;
  double lead_sigma_b = 20.0;
  double age_mean = 55.0;
  double age_sigma = 12.0;
  int age_min = 13;
  int age_max = 95;
  int horizon_days = 1095;
  std::uint64_t seed = 1;
};

/// Empirical per-code truth recorded while generating, the oracle that the
/// ttd pipeline must reproduce exactly. Means are over carriers only.
struct SignalCodeTruth {
  std::string code;
  std::size_t n_a = 0, n_b = 0;
  std::int64_t ttd_sum_a = 0, ttd_sum_b = 0;

  std::optional<double> mean_ttd_a() const;
  std::optional<double> mean_ttd_b() const;
};

struct SynthPhenotype {
  std::string id;
  std::string events_csv;   // exact bytes of the events file
  std::string cohort_csv;   // exact bytes of the cohort file
  std::vector<SignalCodeTruth> truth;
};

struct SynthDataset {
  SynthConfig config;
  std::vector<SynthPhenotype> phenotypes;
};

/// Deterministic given config.seed: same config, same bytes. Throws
/// ValidationError on infeasible configs (lead mean outside [0, horizon],
/// rates outside [0, 1], ...).
SynthDataset generate(const SynthConfig& config);

/// Writes events_<id>.csv and cohort_<id>.csv per phenotype plus
/// manifest.json into dir (created if missing).
void write_dataset(const SynthDataset& dataset,
                   const std::filesystem::path& dir);

}  // namespace ttdfair

#endif  // TTDFAIR_SYNTH_HPP
