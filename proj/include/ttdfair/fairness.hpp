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

#ifndef TTDFAIR_FAIRNESS_HPP
#define TTDFAIR_FAIRNESS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ttdfair/classifier.hpp"
#include "ttdfair/features.hpp"
#include "ttdfair/types.hpp"

namespace ttdfair {

struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
};

/// Per-group confusion counts; counts sum to each group's test-set size.
struct GroupConfusion {
  ConfusionCounts a;  // men
  ConfusionCounts b;  // women
};

GroupConfusion confusion_by_group(std::span<const int> y_true,
                                  std::span<const int> y_pred,
                                  std::span<const Group> groups);

enum class GapMetric { kRecall, kSpecificity, kPrecision, kAccuracy };

std::string_view metric_name(GapMetric metric);
std::optional<GapMetric> metric_from_name(std::string_view name);

/// Raw per-group value (recall, specificity, precision, or accuracy);
/// nullopt when the denominator is zero.
std::optional<double> group_metric(GapMetric metric,
                                   const ConfusionCounts& counts);

/// Fairness gap, A minus B (men minus women). Undefined (nullopt) when
/// either group's denominator is zero; never silently zeroed.
std::optional<double> gap(GapMetric metric, const GroupConfusion& confusion);

/// Per-window gap values g_1 ... g_b; undefined windows stay nullopt.
struct GapSeries {
  GapMetric metric;
  WindowSpec spec;
  std::vector<std::optional<double>> values;

  std::size_t n_defined() const;
};

/// Per-window predictions of one model over one labeled test cohort.
/// Computed once, then reused by gap series, per-window reports, and the
/// bootstrap (the model is fixed, so a patient's prediction at a window
/// never changes across resamples).
class WindowEvaluation {
 public:
  static WindowEvaluation run(const LogRegModel& model,
                              const LabeledCohort& test,
                              const WindowSpec& spec, double threshold);

  const WindowSpec& spec() const { return spec_; }
  std::size_t n_rows() const { return labels_.size(); }

  GroupConfusion confusion(int window) const;
  GroupConfusion confusion(int window,
                           std::span<const std::size_t> rows) const;
  GapSeries series(GapMetric metric) const;

 private:
  WindowSpec spec_{};
  std::vector<int> labels_;
  std::vector<Group> groups_;
  std::vector<std::vector<int>> predictions_;  // [window - 1][row]
};

/// Scores every censored test window with a model trained on the full
/// training matrix and returns the per-window gaps.
GapSeries gap_series(const LogRegModel& model, const LabeledCohort& test,
                     const WindowSpec& spec, GapMetric metric,
                     double threshold = kDefaultThreshold);

/// Mean squared discrimination over the defined windows of a gap series:
/// sign(mean gap) times mean squared gap, in [-1, 1]. Positive favors men,
/// negative favors women, and sign(0) = 0 so an all-zero series maps to 0.
struct MsdResult {
  double msd = 0.0;
  double mean_gap = 0.0;
  double mse = 0.0;
  std::size_t n_windows_used = 0;
  std::optional<std::pair<double, double>> ci;  // [ci_low, ci_high]
  std::size_t n_resamples_kept = 0;
  std::size_t n_resamples_discarded = 0;
};

/// Throws ValidationError when every window is undefined.
MsdResult msd(const GapSeries& series);

/// Ordinary least squares of gap on window index (defined windows only).
struct TrendFit {
  double slope = 0.0;      // gap change per window step
  double intercept = 0.0;
  std::size_t n_points = 0;
};

/// Throws ValidationError with fewer than 2 defined windows.
TrendFit gap_trend(const GapSeries& series);

struct BootstrapOptions {
  std::size_t n_resamples = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 0;
};

/// Patient-level nonparametric bootstrap, stratified by group: resamples
/// test patients with replacement, recomputes the gap series and MSD per
/// resample, and attaches the percentile interval [alpha/2, 1 - alpha/2]
/// (widened, if needed, to bracket the point estimate). Resamples whose
/// series is entirely undefined are discarded and counted; more than 50%
/// discarded is an error. Deterministic given the seed.
MsdResult bootstrap_msd(const LogRegModel& model, const LabeledCohort& test,
                        const WindowSpec& spec, GapMetric metric,
                        double threshold, const BootstrapOptions& options);

}  // namespace ttdfair

#endif  // TTDFAIR_FAIRNESS_HPP
