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

#ifndef TTDFAIR_CLASSIFIER_HPP
#define TTDFAIR_CLASSIFIER_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ttdfair/features.hpp"
#include "ttdfair/types.hpp"

namespace ttdfair {

constexpr int kNegativeMatchMaxAgeGap = 5;  // years

/// Age/gender-matched controls for a positive cohort. Controls come from a
/// pool of patients belonging to other phenotypes; each keeps its own
/// index-date alignment.
struct NegativeSamplingResult {
  std::vector<PatientHistory> negatives;
  std::vector<std::string> unmatched_positive_ids;  // fewer than `ratio` matches
};

/// For each positive (in cohort order), draws up to `ratio` controls with the
/// same group and an age difference of at most five years, uniformly without
/// replacement from the pool. Exhausted pools yield partial matches, reported
/// in unmatched_positive_ids, never silently. Throws ValidationError if the
/// pool shares a patient id with the positives.
NegativeSamplingResult sample_negatives(const CohortHistories& positives,
                                        std::span<const PatientHistory> pool,
                                        std::size_t ratio, std::uint64_t seed);

/// Positives and matched controls flattened into one row set with a shared
/// (sorted union) vocabulary. Rows keep cohort order: positives first.
struct LabeledCohort {
  std::string phenotype_id;
  int lookback_days = 0;
  std::vector<PatientHistory> rows;
  std::vector<int> labels;   // 1 = phenotype case, 0 = control
  std::vector<Group> groups; // copied out of each row's member
  std::vector<std::string> vocabulary;

  std::size_t n_rows() const { return rows.size(); }
};

LabeledCohort make_labeled_cohort(const CohortHistories& positives,
                                  std::span<const PatientHistory> negatives);

/// Row subset in ascending order with the same vocabulary; used to carve the
/// train and test sides out of a split.
LabeledCohort select_rows(const LabeledCohort& cohort,
                          std::span<const std::size_t> indices);

CensoredFeatureMatrix censored_matrix(const LabeledCohort& cohort,
                                      const WindowSpec& spec, int i);
CensoredFeatureMatrix full_matrix(const LabeledCohort& cohort);

/// Deterministic 80/20-style split stratified by (group x label): each
/// stratum contributes round(test_frac * size) rows to the test side, at
/// least one row to each side. Throws if any stratum has < 2 members.
struct SplitIndices {
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  std::uint64_t seed = 0;
};

SplitIndices stratified_split(const LabeledCohort& cohort, double test_frac,
                              std::uint64_t seed);

struct Gradient {
  std::vector<double> weights;
  double intercept = 0.0;

  double max_norm() const;
};

/// Objective: mean negative log-likelihood + (lambda / (2N)) * ||w||^2,
/// intercept unpenalized. Returns the objective and its gradient.
std::pair<double, Gradient> loss_and_gradient(
    std::span<const double> weights, double intercept,
    const CensoredFeatureMatrix& X, std::span<const int> y, double lambda);

struct TrainOptions {
  double lambda = 1.0;
  double tol = 1e-6;  // on gradient max-norm
  int max_iter = 1000;
  std::uint64_t seed = 0;  // recorded for provenance; training itself is
                           // deterministic from a zero start
};

struct TrainInfo {
  int iterations = 0;
  double final_objective = 0.0;
  double grad_max_norm = 0.0;
  bool converged = false;
  bool monotone_objective = true;
  std::uint64_t seed = 0;
};

struct LogRegModel {
  std::vector<double> weights;
  double intercept = 0.0;
  double lambda = 0.0;
  std::vector<std::string> feature_names;  // aligned with weights
  TrainInfo info;
};

/// Full-batch gradient descent with backtracking line search; every accepted
/// step decreases the objective. Converged when the gradient max-norm drops
/// below tol, otherwise flagged after max_iter. Throws on single-class y.
LogRegModel train(const CensoredFeatureMatrix& X, std::span<const int> y,
                  std::span<const std::string> feature_names,
                  const TrainOptions& options);

std::vector<double> predict_proba(const LogRegModel& model,
                                  const CensoredFeatureMatrix& X);

constexpr double kDefaultThreshold = 0.5;

/// Label 1 iff probability >= threshold (ties are positive).
std::vector<int> predict(const LogRegModel& model,
                         const CensoredFeatureMatrix& X,
                         double threshold = kDefaultThreshold);

/// JSON persistence; weights round-trip bit-exactly, so a reloaded model
/// scores identically.
void save_model(const LogRegModel& model, const std::filesystem::path& path);
LogRegModel load_model(const std::filesystem::path& path);

}  // namespace ttdfair

#endif  // TTDFAIR_CLASSIFIER_HPP
