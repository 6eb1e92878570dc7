// Copyright 2026 the dialex authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dialex/forest.hpp"

namespace dialex {

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
};

Metrics metrics_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn,
                            std::uint64_t tn);

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  bool stratified = false;  // per-class proportional split when set
};

/// Seeded uniform shuffle, then prefix/suffix split. Train size is
/// round(train_fraction * n) clamped to [1, n-1]. Throws for datasets
/// smaller than 2 or fractions outside (0,1).
std::pair<std::vector<LabeledPair>, std::vector<LabeledPair>> split_dataset(
    std::span<const LabeledPair> data, const SplitSpec& spec);

/// Positive-class precision/recall/F1 at the given probability threshold.
Metrics evaluate(const Forest& forest, std::span<const LabeledPair> test,
                 double threshold = 0.5);

/// Seeded coin-flip predictor matching the training positive rate
/// (comparison baseline only).
Metrics random_baseline(std::span<const LabeledPair> train, std::span<const LabeledPair> test,
                        std::uint64_t seed);

struct MeanMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// rows = dataset names + "ALL" (multi-source model trained on the
/// concatenated train splits); columns = dataset names. Each cell is the
/// mean over seeds.
struct CrossMatrix {
  std::vector<std::string> sources;
  std::vector<std::string> targets;
  std::vector<std::vector<MeanMetrics>> cells;
};

CrossMatrix cross_dialect_matrix(
    const std::vector<std::pair<std::string, std::vector<LabeledPair>>>& datasets,
    std::span<const std::uint64_t> seeds, const ForestParams& base_params,
    double train_fraction = 0.8, unsigned jobs = 1);

struct AblationPoint {
  double fraction = 0.0;
  double mean_f1 = 0.0;
  double std_f1 = 0.0;  // sample standard deviation over seeds
};

/// Trains on seeded subsamples of the training pool and evaluates every run
/// on one fixed test split (drawn once from split_spec, independent of the
/// per-run seeds).
std::vector<AblationPoint> ablation_curve(std::span<const LabeledPair> data,
                                          std::span<const double> fractions,
                                          std::span<const std::uint64_t> seeds,
                                          const ForestParams& base_params,
                                          const SplitSpec& split_spec, unsigned jobs = 1);

}  // namespace dialex
