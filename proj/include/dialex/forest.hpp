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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dialex/stringsim.hpp"
#include "dialex/text.hpp"

namespace dialex {

/// A (German lemma, dialect term) pair with its feature vector and gold
/// label (positive = translation).
struct LabeledPair {
  Term german;
  Term dialect;
  FeatureVector features{};
  bool positive = false;
};

struct ForestParams {
  int n_trees = 100;
  int max_features = 3;  // floor(sqrt(12)); per-split feature subsample size
  bool bootstrap = true;
  int min_samples_split = 2;
  int max_depth = 0;  // 0 = unlimited
  double positive_class_weight = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Binary decision tree node. Internal nodes route "value <= threshold" to
/// the left child; leaves keep the (negative, positive) training counts.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::uint64_t n_neg = 0;
  std::uint64_t n_pos = 0;

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // node 0 is the root
};

/// Trained ensemble. Immutable after training; safe to share across threads.
class Forest {
 public:
  Forest(ForestParams params, std::vector<Tree> trees);

  const ForestParams& params() const { return params_; }
  const std::vector<Tree>& trees() const { return trees_; }
  std::span<const std::string_view> feature_order() const { return kFeatureNames; }

  /// Mean over trees of the leaf positive-class fraction.
  double predict_proba(const FeatureVector& fv) const;

 private:
  ForestParams params_;
  std::vector<Tree> trees_;
};

/// Gini impurity 1 - sum((c_i/n)^2) of a class-count vector.
/// Throws std::invalid_argument when all counts are zero.
double gini(std::span<const std::uint64_t> counts);

struct SplitResult {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;  // weighted Gini decrease
};

/// Best CART split of `rows` over candidate thresholds (midpoints between
/// consecutive distinct sorted feature values). Ties break toward the lower
/// feature index, then the lower threshold; nullopt when no split decreases
/// impurity.
std::optional<SplitResult> best_split(std::span<const LabeledPair> rows,
                                      std::span<const int> features,
                                      double positive_class_weight = 1.0);

/// Grows params.n_trees CART trees. Tree t draws its bootstrap sample and
/// per-node feature subsets from an RNG substream keyed by (params.seed, t),
/// so identical inputs and seed give a byte-identical serialized forest for
/// any worker count. Rows are canonically reordered internally, making the
/// result invariant to input row order as well.
Forest train_forest(std::span<const LabeledPair> data, const ForestParams& params,
                    unsigned jobs = 1);

/// Positive iff predict_proba >= threshold. Throws for threshold outside (0,1).
bool classify(const Forest& forest, const FeatureVector& fv, double threshold = 0.5);

/// Versioned structured-text serialization (schema: docs/model-format.md).
/// save -> load -> save is byte-identical.
std::string save_forest(const Forest& forest);
Forest load_forest(std::string_view bytes);

}  // namespace dialex
