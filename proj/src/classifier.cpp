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

#include "ttdfair/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <unordered_set>

#include "json.hpp"
#include "ttdfair/errors.hpp"
#include "ttdfair/rng.hpp"

namespace ttdfair {

namespace {

using ordered_json = nlohmann::ordered_json;

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z)));
}

// Row score convention: start from the intercept, then add weights in
// ascending column order. Kept fixed so dense re-computations can reproduce
// the exact same doubles.
double row_score(const LogRegModel& model, const CensoredFeatureMatrix& X,
                 std::size_t r) {
  double z = model.intercept;
  for (std::uint32_t c : X.row(r)) z += model.weights[c];
  return z;
}

void check_labels(std::span<const int> y) {
  for (int v : y) {
    if (v != 0 && v != 1) throw ArgumentError("labels must be 0 or 1");
  }
}

}  // namespace

NegativeSamplingResult sample_negatives(const CohortHistories& positives,
                                        std::span<const PatientHistory> pool,
                                        std::size_t ratio,
                                        std::uint64_t seed) {
  if (ratio < 1) throw ArgumentError("negative ratio must be >= 1");

  std::unordered_set<std::string> positive_ids;
  for (const auto& h : positives.histories) {
    positive_ids.insert(h.member.patient_id);
  }
  for (const auto& candidate : pool) {
    if (positive_ids.count(candidate.member.patient_id)) {
      throw ValidationError("candidate pool contains positive patient '" +
                            candidate.member.patient_id + "'");
    }
  }

  // Bucket the pool by (group, age) so eligibility scans touch at most
  // 2 * kNegativeMatchMaxAgeGap + 1 buckets per positive.
  std::map<std::pair<int, int>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    buckets[{static_cast<int>(pool[i].member.group),
             pool[i].member.age_at_index}]
        .push_back(i);
  }

  Rng rng(derive_seed(seed, "sample_negatives"));
  NegativeSamplingResult result;
  result.negatives.reserve(positives.histories.size() * ratio);

  for (const auto& positive : positives.histories) {
    const CohortMember& pm = positive.member;
    std::size_t matched = 0;
    for (std::size_t k = 0; k < ratio; ++k) {
      std::vector<std::vector<std::size_t>*> eligible;
      std::size_t total = 0;
      for (int age = pm.age_at_index - kNegativeMatchMaxAgeGap;
           age <= pm.age_at_index + kNegativeMatchMaxAgeGap; ++age) {
        auto it = buckets.find({static_cast<int>(pm.group), age});
        if (it != buckets.end() && !it->second.empty()) {
          eligible.push_back(&it->second);
          total += it->second.size();
        }
      }
      if (total == 0) break;
      std::size_t pick = static_cast<std::size_t>(rng.uniform_below(total));
      for (auto* bucket : eligible) {
        if (pick >= bucket->size()) {
          pick -= bucket->size();
          continue;
        }
        result.negatives.push_back(pool[(*bucket)[pick]]);
        // Swap-remove: draws stay uniform over whatever remains.
        (*bucket)[pick] = bucket->back();
        bucket->pop_back();
        ++matched;
        break;
      }
    }
    if (matched < ratio) {
      result.unmatched_positive_ids.push_back(pm.patient_id);
    }
  }
  return result;
}

LabeledCohort make_labeled_cohort(const CohortHistories& positives,
                                  std::span<const PatientHistory> negatives) {
  LabeledCohort lc;
  lc.phenotype_id = positives.phenotype_id;
  lc.lookback_days = positives.lookback_days;
  lc.rows.reserve(positives.histories.size() + negatives.size());

  for (const auto& h : positives.histories) {
    lc.rows.push_back(h);
    lc.labels.push_back(1);
  }
  for (const auto& h : negatives) {
    for (const auto& [code, offset] : h.observations) {
      if (offset < 0 || offset > lc.lookback_days) {
        throw ArgumentError("control patient '" + h.member.patient_id +
                            "' has offset outside the cohort lookback");
      }
    }
    lc.rows.push_back(h);
    lc.labels.push_back(0);
  }

  std::vector<std::string> vocab;
  for (const auto& row : lc.rows) {
    lc.groups.push_back(row.member.group);
    for (const auto& [code, _] : row.observations) vocab.push_back(code);
  }
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  lc.vocabulary = std::move(vocab);
  return lc;
}

LabeledCohort select_rows(const LabeledCohort& cohort,
                          std::span<const std::size_t> indices) {
  LabeledCohort out;
  out.phenotype_id = cohort.phenotype_id;
  out.lookback_days = cohort.lookback_days;
  out.vocabulary = cohort.vocabulary;
  out.rows.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= cohort.n_rows()) throw ArgumentError("row index out of range");
    out.rows.push_back(cohort.rows[i]);
    out.labels.push_back(cohort.labels[i]);
    out.groups.push_back(cohort.groups[i]);
  }
  return out;
}

CensoredFeatureMatrix censored_matrix(const LabeledCohort& cohort,
                                      const WindowSpec& spec, int i) {
  if (spec.horizon_days != cohort.lookback_days) {
    throw ArgumentError("window horizon does not match cohort lookback");
  }
  return CensoredFeatureMatrix::build(cohort.rows, cohort.vocabulary,
                                      spec.cutoff_day(i), i);
}

CensoredFeatureMatrix full_matrix(const LabeledCohort& cohort) {
  WindowSpec spec =
      WindowSpec::make(cohort.lookback_days, cohort.lookback_days);
  return censored_matrix(cohort, spec, 1);
}

SplitIndices stratified_split(const LabeledCohort& cohort, double test_frac,
                              std::uint64_t seed) {
  if (!(test_frac > 0.0 && test_frac < 1.0)) {
    throw ArgumentError("test_frac must be in (0, 1)");
  }

  // Fixed stratum order: (A,1), (A,0), (B,1), (B,0).
  std::vector<std::size_t> strata[4];
  for (std::size_t i = 0; i < cohort.n_rows(); ++i) {
    int s = (cohort.groups[i] == Group::A ? 0 : 2) + (1 - cohort.labels[i]);
    strata[s].push_back(i);
  }

  Rng rng(derive_seed(seed, "stratified_split"));
  SplitIndices split;
  split.seed = seed;
  for (auto& stratum : strata) {
    if (stratum.empty()) continue;
    if (stratum.size() < 2) {
      throw ValidationError(
          "cannot stratify: a (group x label) stratum has fewer than 2 "
          "members");
    }
    rng.shuffle(stratum);
    auto n = static_cast<double>(stratum.size());
    auto n_test = static_cast<std::size_t>(std::llround(test_frac * n));
    n_test = std::clamp<std::size_t>(n_test, 1, stratum.size() - 1);
    split.test_rows.insert(split.test_rows.end(), stratum.begin(),
                           stratum.begin() + n_test);
    split.train_rows.insert(split.train_rows.end(), stratum.begin() + n_test,
                            stratum.end());
  }
  std::sort(split.test_rows.begin(), split.test_rows.end());
  std::sort(split.train_rows.begin(), split.train_rows.end());
  return split;
}

double Gradient::max_norm() const {
  double m = std::fabs(intercept);
  for (double w : weights) m = std::max(m, std::fabs(w));
  return m;
}

namespace {

double objective_only(std::span<const double> weights, double intercept,
                      const CensoredFeatureMatrix& X, std::span<const int> y,
                      double lambda) {
  auto n = static_cast<double>(X.n_rows());
  double nll = 0.0;
  for (std::size_t r = 0; r < X.n_rows(); ++r) {
    double z = intercept;
    for (std::uint32_t c : X.row(r)) z += weights[c];
    nll += softplus(z) - static_cast<double>(y[r]) * z;
  }
  double penalty = 0.0;
  for (double w : weights) penalty += w * w;
  return nll / n + lambda / (2.0 * n) * penalty;
}

}  // namespace

std::pair<double, Gradient> loss_and_gradient(std::span<const double> weights,
                                              double intercept,
                                              const CensoredFeatureMatrix& X,
                                              std::span<const int> y,
                                              double lambda) {
  if (weights.size() != X.n_cols()) {
    throw ArgumentError("weight length does not match feature count");
  }
  if (y.size() != X.n_rows()) {
    throw ArgumentError("label length does not match row count");
  }
  if (X.n_rows() == 0) throw ArgumentError("cannot evaluate on zero rows");
  if (!(lambda > 0.0)) throw ArgumentError("lambda must be > 0");
  check_labels(y);

  auto n = static_cast<double>(X.n_rows());
  Gradient grad;
  grad.weights.assign(weights.size(), 0.0);

  double nll = 0.0;
  double resid_sum = 0.0;
  for (std::size_t r = 0; r < X.n_rows(); ++r) {
    double z = intercept;
    for (std::uint32_t c : X.row(r)) z += weights[c];
    double label = static_cast<double>(y[r]);
    nll += softplus(z) - label * z;
    double resid = sigmoid(z) - label;
    resid_sum += resid;
    for (std::uint32_t c : X.row(r)) grad.weights[c] += resid;
  }

  double penalty = 0.0;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    penalty += weights[c] * weights[c];
    grad.weights[c] = grad.weights[c] / n + lambda / n * weights[c];
  }
  grad.intercept = resid_sum / n;

  double objective = nll / n + lambda / (2.0 * n) * penalty;
  return {objective, std::move(grad)};
}

LogRegModel train(const CensoredFeatureMatrix& X, std::span<const int> y,
                  std::span<const std::string> feature_names,
                  const TrainOptions& options) {
  if (X.n_rows() < 2) throw ValidationError("need at least 2 training rows");
  if (feature_names.size() != X.n_cols()) {
    throw ArgumentError("feature name count does not match matrix width");
  }
  check_labels(y);
  bool has_pos = false, has_neg = false;
  for (int v : y) (v == 1 ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) {
    throw ValidationError("training labels contain a single class");
  }

  LogRegModel model;
  model.lambda = options.lambda;
  model.feature_names.assign(feature_names.begin(), feature_names.end());
  model.weights.assign(X.n_cols(), 0.0);
  model.intercept = 0.0;
  model.info.seed = options.seed;

  constexpr double kArmijo = 1e-4;
  double step = 1.0;
  auto [objective, grad] = loss_and_gradient(model.weights, model.intercept,
                                             X, y, options.lambda);

  for (int iter = 0; iter < options.max_iter; ++iter) {
    model.info.grad_max_norm = grad.max_norm();
    if (model.info.grad_max_norm < options.tol) {
      model.info.converged = true;
      break;
    }

    double grad_sq = grad.intercept * grad.intercept;
    for (double g : grad.weights) grad_sq += g * g;

    // Backtracking line search along -grad.
    double t = std::min(step * 2.0, 1e6);
    std::vector<double> trial_w(model.weights.size());
    double trial_b = 0.0, trial_obj = 0.0;
    bool accepted = false;
    for (int halving = 0; halving < 80; ++halving) {
      for (std::size_t c = 0; c < trial_w.size(); ++c) {
        trial_w[c] = model.weights[c] - t * grad.weights[c];
      }
      trial_b = model.intercept - t * grad.intercept;
      trial_obj = objective_only(trial_w, trial_b, X, y, options.lambda);
      if (trial_obj <= objective - kArmijo * t * grad_sq) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // step underflow; gradient info exhausted

    if (trial_obj > objective) model.info.monotone_objective = false;
    model.weights = std::move(trial_w);
    model.intercept = trial_b;
    objective = trial_obj;
    step = t;
    model.info.iterations = iter + 1;

    std::tie(objective, grad) = loss_and_gradient(
        model.weights, model.intercept, X, y, options.lambda);
  }

  model.info.final_objective = objective;
  model.info.grad_max_norm = grad.max_norm();
  if (model.info.grad_max_norm < options.tol) model.info.converged = true;
  return model;
}

std::vector<double> predict_proba(const LogRegModel& model,
                                  const CensoredFeatureMatrix& X) {
  if (X.n_cols() != model.weights.size()) {
    throw ArgumentError("matrix width does not match model feature count");
  }
  std::vector<double> proba(X.n_rows());
  for (std::size_t r = 0; r < X.n_rows(); ++r) {
    proba[r] = sigmoid(row_score(model, X, r));
  }
  return proba;
}

std::vector<int> predict(const LogRegModel& model,
                         const CensoredFeatureMatrix& X, double threshold) {
  auto proba = predict_proba(model, X);
  std::vector<int> labels(proba.size());
  for (std::size_t r = 0; r < proba.size(); ++r) {
    labels[r] = proba[r] >= threshold ? 1 : 0;
  }
  return labels;
}

void save_model(const LogRegModel& model, const std::filesystem::path& path) {
  ordered_json weights = ordered_json::array();
  for (std::size_t c = 0; c < model.weights.size(); ++c) {
    weights.push_back({model.feature_names[c], model.weights[c]});
  }
  ordered_json doc{
      {"format", "ttdfair-logreg-v1"},
      {"lambda", model.lambda},
      {"intercept", model.intercept},
      {"weights", std::move(weights)},
      {"metadata",
       {{"iterations", model.info.iterations},
        {"final_objective", model.info.final_objective},
        {"grad_max_norm", model.info.grad_max_norm},
        {"converged", model.info.converged},
        {"monotone_objective", model.info.monotone_objective},
        {"seed", model.info.seed}}},
  };
  std::ofstream out(path);
  if (!out) throw Error("cannot write model file " + path.string());
  out << doc.dump(2) << '\n';
}

LogRegModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read model file " + path.string());
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model file " + path.string() + ": " + e.what());
  }
  if (doc.value("format", "") != "ttdfair-logreg-v1") {
    throw ParseError("model file " + path.string() + ": unknown format");
  }
  LogRegModel model;
  model.lambda = doc.at("lambda").get<double>();
  model.intercept = doc.at("intercept").get<double>();
  for (const auto& entry : doc.at("weights")) {
    model.feature_names.push_back(entry.at(0).get<std::string>());
    model.weights.push_back(entry.at(1).get<double>());
  }
  const auto& meta = doc.at("metadata");
  model.info.iterations = meta.at("iterations").get<int>();
  model.info.final_objective = meta.at("final_objective").get<double>();
  model.info.grad_max_norm = meta.at("grad_max_norm").get<double>();
  model.info.converged = meta.at("converged").get<bool>();
  model.info.monotone_objective = meta.at("monotone_objective").get<bool>();
  model.info.seed = meta.at("seed").get<std::uint64_t>();
  return model;
}

}  // namespace ttdfair
