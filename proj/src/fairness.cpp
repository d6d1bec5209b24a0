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

#include "ttdfair/fairness.hpp"

#include <algorithm>
#include <cmath>

#include "ttdfair/errors.hpp"
#include "ttdfair/rng.hpp"

namespace ttdfair {

GroupConfusion confusion_by_group(std::span<const int> y_true,
                                  std::span<const int> y_pred,
                                  std::span<const Group> groups) {
  if (y_true.size() != y_pred.size() || y_true.size() != groups.size()) {
    throw ArgumentError("confusion_by_group: length mismatch");
  }
  GroupConfusion out;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    ConfusionCounts& c = groups[i] == Group::A ? out.a : out.b;
    if (y_true[i] == 1) {
      y_pred[i] == 1 ? ++c.tp : ++c.fn;
    } else {
      y_pred[i] == 1 ? ++c.fp : ++c.tn;
    }
  }
  return out;
}

std::string_view metric_name(GapMetric metric) {
  switch (metric) {
    case GapMetric::kRecall: return "recall";
    case GapMetric::kSpecificity: return "specificity";
    case GapMetric::kPrecision: return "precision";
    case GapMetric::kAccuracy: return "accuracy";
  }
  return "?";
}

std::optional<GapMetric> metric_from_name(std::string_view name) {
  if (name == "recall") return GapMetric::kRecall;
  if (name == "specificity") return GapMetric::kSpecificity;
  if (name == "precision") return GapMetric::kPrecision;
  if (name == "accuracy") return GapMetric::kAccuracy;
  return {};
}

std::optional<double> group_metric(GapMetric metric,
                                   const ConfusionCounts& counts) {
  std::size_t num = 0, den = 0;
  switch (metric) {
    case GapMetric::kRecall:
      num = counts.tp;
      den = counts.tp + counts.fn;
      break;
    case GapMetric::kSpecificity:
      num = counts.tn;
      den = counts.tn + counts.fp;
      break;
    case GapMetric::kPrecision:
      num = counts.tp;
      den = counts.tp + counts.fp;
      break;
    case GapMetric::kAccuracy:
      num = counts.tp + counts.tn;
      den = counts.total();
      break;
  }
  if (den == 0) return {};
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> gap(GapMetric metric, const GroupConfusion& confusion) {
  auto va = group_metric(metric, confusion.a);
  auto vb = group_metric(metric, confusion.b);
  if (!va || !vb) return {};
  return *va - *vb;
}

std::size_t GapSeries::n_defined() const {
  std::size_t n = 0;
  for (const auto& v : values) {
    if (v) ++n;
  }
  return n;
}

WindowEvaluation WindowEvaluation::run(const LogRegModel& model,
                                       const LabeledCohort& test,
                                       const WindowSpec& spec,
                                       double threshold) {
  WindowEvaluation ev;
  ev.spec_ = spec;
  ev.labels_ = test.labels;
  ev.groups_ = test.groups;
  ev.predictions_.reserve(spec.n_windows);
  for (int i = 1; i <= spec.n_windows; ++i) {
    ev.predictions_.push_back(
        predict(model, censored_matrix(test, spec, i), threshold));
  }
  return ev;
}

GroupConfusion WindowEvaluation::confusion(int window) const {
  if (window < 1 || window > spec_.n_windows) {
    throw ArgumentError("window index out of range");
  }
  return confusion_by_group(labels_, predictions_[window - 1], groups_);
}

GroupConfusion WindowEvaluation::confusion(
    int window, std::span<const std::size_t> rows) const {
  if (window < 1 || window > spec_.n_windows) {
    throw ArgumentError("window index out of range");
  }
  const auto& pred = predictions_[window - 1];
  GroupConfusion out;
  for (std::size_t r : rows) {
    ConfusionCounts& c = groups_[r] == Group::A ? out.a : out.b;
    if (labels_[r] == 1) {
      pred[r] == 1 ? ++c.tp : ++c.fn;
    } else {
      pred[r] == 1 ? ++c.fp : ++c.tn;
    }
  }
  return out;
}

GapSeries WindowEvaluation::series(GapMetric metric) const {
  GapSeries s;
  s.metric = metric;
  s.spec = spec_;
  s.values.reserve(spec_.n_windows);
  for (int i = 1; i <= spec_.n_windows; ++i) {
    s.values.push_back(gap(metric, confusion(i)));
  }
  return s;
}

GapSeries gap_series(const LogRegModel& model, const LabeledCohort& test,
                     const WindowSpec& spec, GapMetric metric,
                     double threshold) {
  return WindowEvaluation::run(model, test, spec, threshold).series(metric);
}

namespace {

MsdResult msd_of_values(std::span<const std::optional<double>> values) {
  double sum = 0.0, sum_sq = 0.0;
  std::size_t n = 0;
  for (const auto& v : values) {
    if (!v) continue;
    sum += *v;
    sum_sq += *v * *v;
    ++n;
  }
  if (n == 0) {
    throw ValidationError("msd: every window is undefined");
  }
  MsdResult r;
  r.n_windows_used = n;
  r.mean_gap = sum / static_cast<double>(n);
  r.mse = sum_sq / static_cast<double>(n);
  double sign = r.mean_gap > 0.0 ? 1.0 : (r.mean_gap < 0.0 ? -1.0 : 0.0);
  r.msd = sign * r.mse;
  return r;
}

// Type-7 (linear interpolation) quantile of an ascending-sorted sample.
double lower_quantile(std::span<const double> sorted, double p) {
  double pos = static_cast<double>(sorted.size() - 1) * p;
  auto k = static_cast<std::size_t>(pos);
  double f = pos - static_cast<double>(k);
  if (k + 1 >= sorted.size()) return sorted.back();
  return (1.0 - f) * sorted[k] + f * sorted[k + 1];
}

}  // namespace

MsdResult msd(const GapSeries& series) { return msd_of_values(series.values); }

TrendFit gap_trend(const GapSeries& series) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (!series.values[i]) continue;
    xs.push_back(static_cast<double>(i + 1));  // window index, 1-based
    ys.push_back(*series.values[i]);
  }
  if (xs.size() < 2) {
    throw ValidationError(
        "gap_trend: need at least 2 defined windows to fit a line");
  }
  double n = static_cast<double>(xs.size());
  double x_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= n;
  y_mean /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - x_mean;
    sxx += dx * dx;
    sxy += dx * (ys[i] - y_mean);
  }
  TrendFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = y_mean - fit.slope * x_mean;
  fit.n_points = xs.size();
  return fit;
}

MsdResult bootstrap_msd(const LogRegModel& model, const LabeledCohort& test,
                        const WindowSpec& spec, GapMetric metric,
                        double threshold, const BootstrapOptions& options) {
  if (options.n_resamples < 1) {
    throw ArgumentError("bootstrap: need at least 1 resample");
  }
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    throw ArgumentError("bootstrap: alpha must be in (0, 1)");
  }

  WindowEvaluation ev = WindowEvaluation::run(model, test, spec, threshold);
  MsdResult point = msd(ev.series(metric));

  // Two strata (one per group). Each stratum's resampling stream is keyed by
  // the sorted patient ids it contains, not by the group label, so swapping
  // the A/B labels replays the identical draws and the CI mirrors exactly.
  struct Stratum {
    std::vector<std::size_t> rows;
    std::uint64_t key = 0;
  };
  Stratum strata[2];
  for (std::size_t r = 0; r < test.n_rows(); ++r) {
    strata[test.groups[r] == Group::A ? 0 : 1].rows.push_back(r);
  }
  for (auto& stratum : strata) {
    std::vector<std::string_view> ids;
    ids.reserve(stratum.rows.size());
    for (std::size_t r : stratum.rows) {
      ids.push_back(test.rows[r].member.patient_id);
    }
    std::sort(ids.begin(), ids.end());
    std::uint64_t key = 0xcbf29ce484222325ULL;
    for (auto id : ids) key = splitmix64(key ^ fnv1a64(id));
    stratum.key = key;
  }

  std::vector<double> resampled;
  resampled.reserve(options.n_resamples);
  std::size_t discarded = 0;
  std::vector<std::size_t> sample;
  for (std::size_t r = 0; r < options.n_resamples; ++r) {
    sample.clear();
    for (const auto& stratum : strata) {
      if (stratum.rows.empty()) continue;
      Rng rng(derive_seed(options.seed ^ stratum.key, "bootstrap.resample", r));
      for (std::size_t k = 0; k < stratum.rows.size(); ++k) {
        sample.push_back(
            stratum.rows[rng.uniform_below(stratum.rows.size())]);
      }
    }
    double sum = 0.0, sum_sq = 0.0;
    std::size_t n = 0;
    for (int i = 1; i <= spec.n_windows; ++i) {
      auto g = gap(metric, ev.confusion(i, sample));
      if (!g) continue;
      sum += *g;
      sum_sq += *g * *g;
      ++n;
    }
    if (n == 0) {
      ++discarded;
      continue;
    }
    double mean = sum / static_cast<double>(n);
    double sign = mean > 0.0 ? 1.0 : (mean < 0.0 ? -1.0 : 0.0);
    resampled.push_back(sign * (sum_sq / static_cast<double>(n)));
  }

  if (discarded * 2 > options.n_resamples) {
    throw ValidationError(
        "bootstrap: more than half of the resamples had no defined window");
  }

  std::vector<double> ascending = resampled;
  std::sort(ascending.begin(), ascending.end());
  std::vector<double> neg_ascending;
  neg_ascending.reserve(resampled.size());
  for (double v : resampled) neg_ascending.push_back(-v);
  std::sort(neg_ascending.begin(), neg_ascending.end());

  double lo = lower_quantile(ascending, options.alpha / 2.0);
  // Upper bound defined as the mirrored lower bound of the negated sample;
  // this keeps CI(relabeled) == -CI(original) an exact identity.
  double hi = -lower_quantile(neg_ascending, options.alpha / 2.0);
  lo = std::min(lo, point.msd);
  hi = std::max(hi, point.msd);

  point.ci = {lo, hi};
  point.n_resamples_kept = resampled.size();
  point.n_resamples_discarded = discarded;
  return point;
}

}  // namespace ttdfair
