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

#include "ttdfair/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "ttdfair/csv.hpp"
#include "ttdfair/dates.hpp"
#include "ttdfair/errors.hpp"
#include "ttdfair/rng.hpp"
#include "ttdfair/types.hpp"

namespace ttdfair {

namespace {

using ordered_json = nlohmann::ordered_json;

void validate(const SynthConfig& c) {
  if (c.n_phenotypes < 1) throw ValidationError("need at least one phenotype");
  if (c.patients_per_group < 1) {
    throw ValidationError("need at least one patient per group");
  }
  if (c.horizon_days < 1) throw ValidationError("horizon must be >= 1 day");
  auto in01 = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in01(c.signal_prob) || !in01(c.noise_rate)) {
    throw ValidationError("signal_prob and noise_rate must be in [0, 1]");
  }
  auto lead_ok = [&](double m) {
    return m >= 0.0 && m <= static_cast<double>(c.horizon_days);
  };
  if (!lead_ok(c.lead_mean_a) || !lead_ok(c.lead_mean_b)) {
    throw ValidationError("signal lead-time means must lie in [0, horizon]");
  }
  if (c.lead_sigma_a < 0.0 || c.lead_sigma_b < 0.0 || c.age_sigma < 0.0) {
    throw ValidationError("sigmas must be non-negative");
  }
  if (c.age_min < 13 || c.age_max < c.age_min) {
    throw ValidationError("age range must satisfy 13 <= age_min <= age_max");
  }
}

std::string zpad(std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*zu", width, value);
  return buf;
}

}  // namespace

std::optional<double> SignalCodeTruth::mean_ttd_a() const {
  if (n_a == 0) return {};
  return static_cast<double>(ttd_sum_a) / static_cast<double>(n_a);
}

std::optional<double> SignalCodeTruth::mean_ttd_b() const {
  if (n_b == 0) return {};
  return static_cast<double>(ttd_sum_b) / static_cast<double>(n_b);
}

SynthDataset generate(const SynthConfig& config) {
  validate(config);

  SynthDataset dataset;
  dataset.config = config;

  const Date base_index = *parse_date("2015-01-01");
  std::vector<std::string> noise_codes;
  noise_codes.reserve(config.n_noise_codes);
  for (std::size_t k = 0; k < config.n_noise_codes; ++k) {
    noise_codes.push_back("NOISE-" + zpad(k, 3));
  }

  for (std::size_t pi = 0; pi < config.n_phenotypes; ++pi) {
    SynthPhenotype ph;
    ph.id = "PH" + zpad(pi + 1, 2);

    std::vector<std::string> signal_codes;
    for (std::size_t k = 0; k < config.n_signal_codes; ++k) {
      signal_codes.push_back("SIG-" + ph.id + "-" + zpad(k, 2));
      ph.truth.push_back({signal_codes.back(), 0, 0, 0, 0});
    }

    Rng rng(derive_seed(config.seed, "synth.phenotype", pi));
    std::string events = "patient_id,condition_code,occurred_on\n";
    std::string cohort = "patient_id,group,age_at_index,index_date\n";

    for (Group group : {Group::A, Group::B}) {
      double lead_mean =
          group == Group::A ? config.lead_mean_a : config.lead_mean_b;
      double lead_sigma =
          group == Group::A ? config.lead_sigma_a : config.lead_sigma_b;
      for (std::size_t k = 0; k < config.patients_per_group; ++k) {
        std::string pid = ph.id + "-" + group_code(group) + "-" + zpad(k, 5);
        int age = static_cast<int>(std::llround(rng.truncated_normal(
            config.age_mean, config.age_sigma,
            static_cast<double>(config.age_min),
            static_cast<double>(config.age_max))));
        Date index =
            base_index + static_cast<Date>(rng.uniform_below(1461));

        cohort += pid;
        cohort += ',';
        cohort += group_code(group);
        cohort += ',';
        cohort += std::to_string(age);
        cohort += ',';
        cohort += format_date(index);
        cohort += '\n';

        for (std::size_t s = 0; s < signal_codes.size(); ++s) {
          if (config.signal_prob < 1.0 &&
              rng.uniform01() >= config.signal_prob) {
            continue;
          }
          auto lead = static_cast<int>(std::llround(rng.truncated_normal(
              lead_mean, lead_sigma, 0.0,
              static_cast<double>(config.horizon_days))));
          events += pid;
          events += ',';
          events += signal_codes[s];
          events += ',';
          events += format_date(index - lead);
          events += '\n';
          if (group == Group::A) {
            ++ph.truth[s].n_a;
            ph.truth[s].ttd_sum_a += lead;
          } else {
            ++ph.truth[s].n_b;
            ph.truth[s].ttd_sum_b += lead;
          }
        }
        for (const auto& code : noise_codes) {
          if (rng.uniform01() >= config.noise_rate) continue;
          auto delta = static_cast<Date>(
              rng.uniform_below(static_cast<std::uint64_t>(
                  config.horizon_days + 1)));
          events += pid;
          events += ',';
          events += code;
          events += ',';
          events += format_date(index - delta);
          events += '\n';
        }
      }
    }
    ph.events_csv = std::move(events);
    ph.cohort_csv = std::move(cohort);
    dataset.phenotypes.push_back(std::move(ph));
  }
  return dataset;
}

void write_dataset(const SynthDataset& dataset,
                   const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  auto write_atomic = [](const fs::path& path, const std::string& bytes) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw Error("cannot write " + path.string());
      out << bytes;
    }
    fs::rename(tmp, path);
  };

  const SynthConfig& c = dataset.config;
  ordered_json manifest{
      {"format", "ttdfair-synth-v1"},
      {"horizon_days", c.horizon_days},
      {"seed", c.seed},
      {"config",
       {{"n_phenotypes", c.n_phenotypes},
        {"patients_per_group", c.patients_per_group},
        {"n_signal_codes", c.n_signal_codes},
        {"n_noise_codes", c.n_noise_codes},
        {"signal_prob", c.signal_prob},
        {"noise_rate", c.noise_rate},
        {"lead_mean_men", c.lead_mean_a},
        {"lead_mean_women", c.lead_mean_b},
        {"lead_sigma_men", c.lead_sigma_a},
        {"lead_sigma_women", c.lead_sigma_b},
        {"age_mean", c.age_mean},
        {"age_sigma", c.age_sigma},
        {"age_min", c.age_min},
        {"age_max", c.age_max}}},
      {"phenotypes", ordered_json::array()},
  };

  for (const auto& ph : dataset.phenotypes) {
    std::string events_name = "events_" + ph.id + ".csv";
    std::string cohort_name = "cohort_" + ph.id + ".csv";
    write_atomic(dir / events_name, ph.events_csv);
    write_atomic(dir / cohort_name, ph.cohort_csv);

    ordered_json truth = ordered_json::array();
    for (const auto& t : ph.truth) {
      ordered_json row{{"code", t.code},
                       {"n_men", t.n_a},
                       {"n_women", t.n_b}};
      auto ma = t.mean_ttd_a();
      auto mb = t.mean_ttd_b();
      row["mean_ttd_men"] = ma ? ordered_json(*ma) : ordered_json(nullptr);
      row["mean_ttd_women"] = mb ? ordered_json(*mb) : ordered_json(nullptr);
      row["diff_days"] =
          ma && mb ? ordered_json(*mb - *ma) : ordered_json(nullptr);
      truth.push_back(std::move(row));
    }
    manifest["phenotypes"].push_back(ordered_json{
        {"id", ph.id},
        {"events_file", events_name},
        {"cohort_file", cohort_name},
        {"patients_per_group", dataset.config.patients_per_group},
        {"injected",
         {{"lead_mean_men", c.lead_mean_a},
          {"lead_mean_women", c.lead_mean_b},
          {"lead_sigma_men", c.lead_sigma_a},
          {"lead_sigma_women", c.lead_sigma_b}}},
        {"truth", std::move(truth)},
    });
  }

  write_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace ttdfair
