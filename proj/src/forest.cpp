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

#include "dialex/forest.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "dialex/parallel.hpp"
#include "dialex/rng.hpp"

namespace dialex {

void ForestParams::validate() const {
  if (n_trees < 1) throw std::invalid_argument("forest: n_trees must be >= 1");
  if (max_features < 1 || max_features > kFeatureCount) {
    throw std::invalid_argument("forest: max_features must be in [1, 12]");
  }
  if (min_samples_split < 2) throw std::invalid_argument("forest: min_samples_split must be >= 2");
  if (max_depth < 0) throw std::invalid_argument("forest: max_depth must be >= 0");
  if (!(positive_class_weight > 0.0)) {
    throw std::invalid_argument("forest: positive_class_weight must be > 0");
  }
}

double gini(std::span<const std::uint64_t> counts) {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total == 0) throw std::invalid_argument("gini: all counts are zero");
  double sum_sq = 0.0;
  for (std::uint64_t c : counts) {
    const double p = double(c) / double(total);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

namespace {

// Best split over an index subset. The selection key is
// Q = sum over children of (w_neg^2 + w_pos^2) / w_child, equivalent to the
// weighted Gini decrease but cheaper and numerically stable; ties keep the
// first candidate in (feature ascending, threshold ascending) sweep order.
std::optional<SplitResult> best_split_core(std::span<const LabeledPair> data,
                                           std::span<const std::uint32_t> idx,
                                           std::span<const int> feats, double wpos,
                                           std::vector<std::pair<double, bool>>& scratch) {
  const std::size_t n = idx.size();
  if (n < 2) return std::nullopt;
  double tot_wn = 0.0, tot_wp = 0.0;
  for (std::uint32_t i : idx) {
    if (data[i].positive) {
      tot_wp += wpos;
    } else {
      tot_wn += 1.0;
    }
  }
  if (tot_wn == 0.0 || tot_wp == 0.0) return std::nullopt;
  const double total_weight = tot_wn + tot_wp;
  const double base = (tot_wn * tot_wn + tot_wp * tot_wp) / total_weight;

  double best_q = base;
  int best_feature = -1;
  double best_threshold = 0.0;
  for (int f : feats) {
    scratch.clear();
    for (std::uint32_t i : idx) scratch.emplace_back(data[i].features[f], data[i].positive);
    std::sort(scratch.begin(), scratch.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double left_wn = 0.0, left_wp = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (scratch[i].second) {
        left_wp += wpos;
      } else {
        left_wn += 1.0;
      }
      if (scratch[i].first == scratch[i + 1].first) continue;
      const double right_wn = tot_wn - left_wn;
      const double right_wp = tot_wp - left_wp;
      const double q = (left_wn * left_wn + left_wp * left_wp) / (left_wn + left_wp) +
                       (right_wn * right_wn + right_wp * right_wp) / (right_wn + right_wp);
      if (q > best_q) {
        double thr = (scratch[i].first + scratch[i + 1].first) / 2.0;
        // Guard against midpoint rounding up to the next value.
        if (!(thr > scratch[i].first && thr < scratch[i + 1].first)) thr = scratch[i].first;
        best_q = q;
        best_feature = f;
        best_threshold = thr;
      }
    }
  }
  if (best_feature < 0) return std::nullopt;
  return SplitResult{best_feature, best_threshold, (best_q - base) / total_weight};
}

Tree grow_tree(std::span<const LabeledPair> data, const ForestParams& params,
               std::vector<std::uint32_t> rows, SplitRng& rng) {
  Tree tree;
  std::vector<std::pair<double, bool>> scratch;
  scratch.reserve(rows.size());

  struct Item {
    std::size_t begin, end;
    int depth;
    std::int32_t parent;
    bool left_child;
  };
  std::vector<Item> stack;
  stack.push_back(Item{0, rows.size(), 0, -1, false});

  while (!stack.empty()) {
    const Item item = stack.back();
    stack.pop_back();
    const auto node_index = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (item.parent >= 0) {
      (item.left_child ? tree.nodes[item.parent].left : tree.nodes[item.parent].right) =
          node_index;
    }

    std::uint64_t n_neg = 0, n_pos = 0;
    for (std::size_t i = item.begin; i < item.end; ++i) {
      (data[rows[i]].positive ? n_pos : n_neg) += 1;
    }
    TreeNode& node = tree.nodes[node_index];
    node.n_neg = n_neg;
    node.n_pos = n_pos;

    const std::size_t count = item.end - item.begin;
    const bool pure = n_neg == 0 || n_pos == 0;
    const bool depth_capped = params.max_depth > 0 && item.depth >= params.max_depth;
    if (pure || count < static_cast<std::size_t>(params.min_samples_split) || depth_capped) {
      continue;  // leaf
    }

    const auto feat_idx =
        rng.sample_without_replacement(kFeatureCount, static_cast<std::uint32_t>(params.max_features));
    std::vector<int> feats(feat_idx.begin(), feat_idx.end());
    const auto split =
        best_split_core(data, std::span(rows).subspan(item.begin, count), feats,
                        params.positive_class_weight, scratch);
    if (!split) continue;  // leaf

    node.feature = split->feature;
    node.threshold = split->threshold;
    const auto mid_it = std::stable_partition(
        rows.begin() + item.begin, rows.begin() + item.end, [&](std::uint32_t r) {
          return data[r].features[split->feature] <= split->threshold;
        });
    const auto mid = static_cast<std::size_t>(mid_it - rows.begin());
    // Right pushed first so the left child is grown (and consumes RNG) first.
    stack.push_back(Item{mid, item.end, item.depth + 1, node_index, false});
    stack.push_back(Item{item.begin, mid, item.depth + 1, node_index, true});
  }
  return tree;
}

double leaf_fraction(const TreeNode& leaf, double wpos) {
  const double wp = wpos * double(leaf.n_pos);
  return wp / (double(leaf.n_neg) + wp);
}

}  // namespace

std::optional<SplitResult> best_split(std::span<const LabeledPair> rows,
                                      std::span<const int> features,
                                      double positive_class_weight) {
  for (int f : features) {
    if (f < 0 || f >= kFeatureCount) throw std::invalid_argument("best_split: bad feature index");
  }
  std::vector<std::uint32_t> idx(rows.size());
  for (std::uint32_t i = 0; i < rows.size(); ++i) idx[i] = i;
  std::vector<int> feats(features.begin(), features.end());
  std::sort(feats.begin(), feats.end());
  std::vector<std::pair<double, bool>> scratch;
  return best_split_core(rows, idx, feats, positive_class_weight, scratch);
}

Forest::Forest(ForestParams params, std::vector<Tree> trees)
    : params_(params), trees_(std::move(trees)) {
  params_.validate();
  if (static_cast<int>(trees_.size()) != params_.n_trees) {
    throw std::invalid_argument("forest: tree count does not match params.n_trees");
  }
  for (const Tree& tree : trees_) {
    if (tree.nodes.empty()) throw std::invalid_argument("forest: empty tree");
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf()) {
        if (node.n_neg == 0 && node.n_pos == 0) {
          throw std::invalid_argument("forest: leaf with empty class counts");
        }
      } else {
        if (node.feature >= kFeatureCount) {
          throw std::invalid_argument("forest: feature index out of range");
        }
        const auto size = static_cast<std::int32_t>(tree.nodes.size());
        if (node.left <= 0 || node.left >= size || node.right <= 0 || node.right >= size) {
          throw std::invalid_argument("forest: child index out of range");
        }
      }
    }
  }
}

double Forest::predict_proba(const FeatureVector& fv) const {
  double sum = 0.0;
  for (const Tree& tree : trees_) {
    const TreeNode* node = &tree.nodes[0];
    while (!node->is_leaf()) {
      node = &tree.nodes[fv[node->feature] <= node->threshold ? node->left : node->right];
    }
    sum += leaf_fraction(*node, params_.positive_class_weight);
  }
  return sum / double(trees_.size());
}

Forest train_forest(std::span<const LabeledPair> data, const ForestParams& params,
                    unsigned jobs) {
  params.validate();
  if (data.empty()) throw std::invalid_argument("train_forest: empty dataset");

  // Canonical row order: bootstrap indexes into this, so shuffled inputs
  // train the same forest.
  std::vector<std::uint32_t> canon(data.size());
  for (std::uint32_t i = 0; i < data.size(); ++i) canon[i] = i;
  std::sort(canon.begin(), canon.end(), [&](std::uint32_t a, std::uint32_t b) {
    const auto& fa = data[a].features;
    const auto& fb = data[b].features;
    for (int f = 0; f < kFeatureCount; ++f) {
      if (fa[f] != fb[f]) return fa[f] < fb[f];
    }
    return data[a].positive < data[b].positive;
  });

  std::vector<Tree> trees(static_cast<std::size_t>(params.n_trees));
  parallel_for(trees.size(), jobs, [&](std::size_t t) {
    SplitRng rng(params.seed, t);
    std::vector<std::uint32_t> rows;
    rows.reserve(canon.size());
    if (params.bootstrap) {
      for (std::size_t i = 0; i < canon.size(); ++i) {
        rows.push_back(canon[rng.below(canon.size())]);
      }
    } else {
      rows = canon;
    }
    trees[t] = grow_tree(data, params, std::move(rows), rng);
  });
  return Forest(params, std::move(trees));
}

bool classify(const Forest& forest, const FeatureVector& fv, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("classify: threshold must be in (0,1)");
  }
  return forest.predict_proba(fv) >= threshold;
}

namespace {

constexpr std::string_view kSchemaVersion = "dialex.forest.v1";

std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

double parse_hex_double(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + s.size()) throw std::runtime_error("forest load: bad number '" + s + "'");
  return v;
}

std::string joined_feature_names() {
  std::string out;
  for (int f = 0; f < kFeatureCount; ++f) {
    if (f) out += ',';
    out += kFeatureNames[f];
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}
  bool next(std::string& line) {
    if (pos_ >= text_.size()) return false;
    const auto nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) {
      line.assign(text_.substr(pos_));
      pos_ = text_.size();
    } else {
      line.assign(text_.substr(pos_, nl - pos_));
      pos_ = nl + 1;
    }
    return true;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string expect_kv(LineReader& reader, std::string_view key) {
  std::string line;
  if (!reader.next(line)) throw std::runtime_error("forest load: truncated document");
  const auto eq = line.find('=');
  if (eq == std::string::npos || std::string_view(line).substr(0, eq) != key) {
    throw std::runtime_error("forest load: expected '" + std::string(key) + "=' line");
  }
  return line.substr(eq + 1);
}

long long parse_int(const std::string& s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) throw std::runtime_error("forest load: bad integer '" + s + "'");
  return v;
}

}  // namespace

std::string save_forest(const Forest& forest) {
  const ForestParams& p = forest.params();
  std::string out;
  out += kSchemaVersion;
  out += '\n';
  out += "rng=";
  out += kRngName;
  out += '\n';
  out += "features=" + joined_feature_names() + '\n';
  out += "n_trees=" + std::to_string(p.n_trees) + '\n';
  out += "max_features=" + std::to_string(p.max_features) + '\n';
  out += "bootstrap=" + std::to_string(p.bootstrap ? 1 : 0) + '\n';
  out += "min_samples_split=" + std::to_string(p.min_samples_split) + '\n';
  out += "max_depth=" + std::to_string(p.max_depth) + '\n';
  out += "positive_class_weight=" + hex_double(p.positive_class_weight) + '\n';
  out += "seed=" + std::to_string(p.seed) + '\n';
  for (std::size_t t = 0; t < forest.trees().size(); ++t) {
    const Tree& tree = forest.trees()[t];
    out += "tree " + std::to_string(t) + ' ' + std::to_string(tree.nodes.size()) + '\n';
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf()) {
        out += "L " + std::to_string(node.n_neg) + ' ' + std::to_string(node.n_pos) + '\n';
      } else {
        out += "S " + std::to_string(node.feature) + ' ' + hex_double(node.threshold) + ' ' +
               std::to_string(node.left) + ' ' + std::to_string(node.right) + '\n';
      }
    }
  }
  out += "end\n";
  return out;
}

Forest load_forest(std::string_view bytes) {
  LineReader reader(bytes);
  std::string line;
  if (!reader.next(line) || line != kSchemaVersion) {
    throw std::runtime_error("forest load: unknown schema version");
  }
  if (expect_kv(reader, "rng") != kRngName) {
    throw std::runtime_error("forest load: unknown RNG identifier");
  }
  if (expect_kv(reader, "features") != joined_feature_names()) {
    throw std::runtime_error("forest load: feature order mismatch");
  }
  ForestParams params;
  params.n_trees = static_cast<int>(parse_int(expect_kv(reader, "n_trees")));
  params.max_features = static_cast<int>(parse_int(expect_kv(reader, "max_features")));
  params.bootstrap = parse_int(expect_kv(reader, "bootstrap")) != 0;
  params.min_samples_split = static_cast<int>(parse_int(expect_kv(reader, "min_samples_split")));
  params.max_depth = static_cast<int>(parse_int(expect_kv(reader, "max_depth")));
  params.positive_class_weight = parse_hex_double(expect_kv(reader, "positive_class_weight"));
  params.seed = static_cast<std::uint64_t>(parse_int(expect_kv(reader, "seed")));

  std::vector<Tree> trees;
  trees.reserve(static_cast<std::size_t>(std::max(params.n_trees, 0)));
  for (int t = 0; t < params.n_trees; ++t) {
    if (!reader.next(line)) throw std::runtime_error("forest load: truncated document");
    std::istringstream head(line);
    std::string tag;
    std::size_t index = 0, node_count = 0;
    if (!(head >> tag >> index >> node_count) || tag != "tree" ||
        index != static_cast<std::size_t>(t)) {
      throw std::runtime_error("forest load: malformed tree header");
    }
    Tree tree;
    tree.nodes.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) {
      if (!reader.next(line)) throw std::runtime_error("forest load: truncated document");
      std::istringstream ls(line);
      std::string kind;
      ls >> kind;
      TreeNode node;
      if (kind == "S") {
        std::string thr;
        if (!(ls >> node.feature >> thr >> node.left >> node.right)) {
          throw std::runtime_error("forest load: malformed split node");
        }
        node.threshold = parse_hex_double(thr);
        if (node.feature < 0 || node.feature >= kFeatureCount) {
          throw std::runtime_error("forest load: feature index out of range");
        }
      } else if (kind == "L") {
        if (!(ls >> node.n_neg >> node.n_pos)) {
          throw std::runtime_error("forest load: malformed leaf node");
        }
      } else {
        throw std::runtime_error("forest load: unknown node kind '" + kind + "'");
      }
      std::string rest;
      if (ls >> rest) throw std::runtime_error("forest load: trailing data on node line");
      tree.nodes.push_back(node);
    }
    trees.push_back(std::move(tree));
  }
  if (!reader.next(line) || line != "end") {
    throw std::runtime_error("forest load: missing end marker");
  }
  return Forest(params, std::move(trees));
}

}  // namespace dialex
