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

#include "dialex/bli_eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dialex/rng.hpp"

namespace dialex {

Metrics metrics_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn,
                            std::uint64_t tn) {
  Metrics m;
  m.tp = tp, m.fp = fp, m.fn = fn, m.tn = tn;
  m.precision = tp + fp > 0 ? double(tp) / double(tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? double(tp) / double(tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

namespace {

std::size_t train_size(std::size_t n, double fraction) {
  const auto ideal = static_cast<std::size_t>(std::llround(fraction * double(n)));
  return std::clamp<std::size_t>(ideal, 1, n - 1);
}

std::vector<std::uint32_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> idx(n);
  for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
  SplitRng rng(seed, 0);
  rng.shuffle(idx.begin(), idx.end());
  return idx;
}

}  // namespace

std::pair<std::vector<LabeledPair>, std::vector<LabeledPair>> split_dataset(
    std::span<const LabeledPair> data, const SplitSpec& spec) {
  if (data.size() < 2) throw std::invalid_argument("split_dataset: need at least 2 rows");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw std::invalid_argument("split_dataset: train_fraction must be in (0,1)");
  }

  std::vector<LabeledPair> train, test;
  if (!spec.stratified) {
    const auto idx = shuffled_indices(data.size(), spec.seed);
    const std::size_t n_train = train_size(data.size(), spec.train_fraction);
    train.reserve(n_train);
    test.reserve(data.size() - n_train);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      (i < n_train ? train : test).push_back(data[idx[i]]);
    }
    return {std::move(train), std::move(test)};
  }

  // Stratified: proportional split within each class, negatives first.
  std::vector<std::uint32_t> neg, pos;
  for (std::uint32_t i = 0; i < data.size(); ++i) (data[i].positive ? pos : neg).push_back(i);
  SplitRng rng(spec.seed, 0);
  rng.shuffle(neg.begin(), neg.end());
  rng.shuffle(pos.begin(), pos.end());
  const std::size_t total_train = train_size(data.size(), spec.train_fraction);
  std::size_t neg_train = neg.empty() ? 0
                                      : std::min(neg.size(), static_cast<std::size_t>(std::llround(
                                                                 spec.train_fraction *
                                                                 double(neg.size()))));
  std::size_t pos_train = total_train >= neg_train ? total_train - neg_train : 0;
  pos_train = std::min(pos_train, pos.size());
  neg_train = std::min(neg.size(), total_train - pos_train);
  for (std::size_t i = 0; i < neg.size(); ++i) {
    (i < neg_train ? train : test).push_back(data[neg[i]]);
  }
  for (std::size_t i = 0; i < pos.size(); ++i) {
    (i < pos_train ? train : test).push_back(data[pos[i]]);
  }
  if (train.empty() || test.empty()) {
    throw std::invalid_argument("split_dataset: stratified split left an empty side");
  }
  return {std::move(train), std::move(test)};
}

Metrics evaluate(const Forest& forest, std::span<const LabeledPair> test, double threshold) {
  if (test.empty()) throw std::invalid_argument("evaluate: empty test set");
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (const LabeledPair& pair : test) {
    const bool predicted = classify(forest, pair.features, threshold);
    if (predicted && pair.positive) {
      ++tp;
    } else if (predicted && !pair.positive) {
      ++fp;
    } else if (!predicted && pair.positive) {
      ++fn;
    } else {
      ++tn;
    }
  }
  return metrics_from_counts(tp, fp, fn, tn);
}

Metrics random_baseline(std::span<const LabeledPair> train, std::span<const LabeledPair> test,
                        std::uint64_t seed) {
  if (train.empty() || test.empty()) {
    throw std::invalid_argument("random_baseline: empty dataset");
  }
  std::uint64_t train_pos = 0;
  for (const LabeledPair& pair : train) train_pos += pair.positive ? 1 : 0;
  const double rate = double(train_pos) / double(train.size());
  SplitRng rng(seed, 1);
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (const LabeledPair& pair : test) {
    // 53-bit uniform unit draw
    const double u = double(rng.next() >> 11) * 0x1.0p-53;
    const bool predicted = u < rate;
    if (predicted && pair.positive) {
      ++tp;
    } else if (predicted && !pair.positive) {
      ++fp;
    } else if (!predicted && pair.positive) {
      ++fn;
    } else {
      ++tn;
    }
  }
  return metrics_from_counts(tp, fp, fn, tn);
}

CrossMatrix cross_dialect_matrix(
    const std::vector<std::pair<std::string, std::vector<LabeledPair>>>& datasets,
    std::span<const std::uint64_t> seeds, const ForestParams& base_params,
    double train_fraction, unsigned jobs) {
  if (datasets.empty()) throw std::invalid_argument("cross_dialect_matrix: no datasets");
  if (seeds.empty()) throw std::invalid_argument("cross_dialect_matrix: no seeds");
  const std::size_t n_data = datasets.size();

  CrossMatrix matrix;
  for (const auto& [name, rows] : datasets) {
    matrix.sources.push_back(name);
    matrix.targets.push_back(name);
  }
  matrix.sources.push_back("ALL");
  matrix.cells.assign(n_data + 1, std::vector<MeanMetrics>(n_data));

  for (const std::uint64_t seed : seeds) {
    std::vector<std::vector<LabeledPair>> trains, tests;
    trains.reserve(n_data);
    tests.reserve(n_data);
    for (const auto& [name, rows] : datasets) {
      try {
        auto [train, test] = split_dataset(rows, SplitSpec{train_fraction, seed, false});
        trains.push_back(std::move(train));
        tests.push_back(std::move(test));
      } catch (const std::exception& e) {
        throw std::runtime_error("cross_dialect_matrix: dataset '" + name + "': " + e.what());
      }
    }
    std::vector<LabeledPair> all_train;
    for (const auto& train : trains) all_train.insert(all_train.end(), train.begin(), train.end());

    ForestParams params = base_params;
    params.seed = seed;
    for (std::size_t src = 0; src <= n_data; ++src) {
      const auto& train = src < n_data ? trains[src] : all_train;
      const Forest forest = train_forest(train, params, jobs);
      for (std::size_t tgt = 0; tgt < n_data; ++tgt) {
        Metrics m;
        try {
          m = evaluate(forest, tests[tgt]);
        } catch (const std::exception& e) {
          throw std::runtime_error("cross_dialect_matrix: (" + matrix.sources[src] + " -> " +
                                   matrix.targets[tgt] + "): " + e.what());
        }
        matrix.cells[src][tgt].precision += m.precision / double(seeds.size());
        matrix.cells[src][tgt].recall += m.recall / double(seeds.size());
        matrix.cells[src][tgt].f1 += m.f1 / double(seeds.size());
      }
    }
  }
  return matrix;
}

std::vector<AblationPoint> ablation_curve(std::span<const LabeledPair> data,
                                          std::span<const double> fractions,
                                          std::span<const std::uint64_t> seeds,
                                          const ForestParams& base_params,
                                          const SplitSpec& split_spec, unsigned jobs) {
  if (fractions.empty()) throw std::invalid_argument("ablation_curve: no fractions");
  if (seeds.empty()) throw std::invalid_argument("ablation_curve: no seeds");
  for (const double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw std::invalid_argument("ablation_curve: fractions must lie in (0,1]");
    }
  }
  const auto [pool, test] = split_dataset(data, split_spec);

  std::vector<AblationPoint> curve;
  curve.reserve(fractions.size());
  for (const double fraction : fractions) {
    std::vector<double> f1s(seeds.size());
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const std::uint64_t seed = seeds[s];
      std::vector<LabeledPair> train;
      if (fraction >= 1.0) {
        train.assign(pool.begin(), pool.end());
      } else {
        const auto want = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::llround(fraction * double(pool.size()))), 1,
            pool.size());
        SplitRng rng(seed, 0);
        for (const std::uint32_t i : rng.sample_without_replacement(
                 static_cast<std::uint32_t>(pool.size()), static_cast<std::uint32_t>(want))) {
          train.push_back(pool[i]);
        }
      }
      ForestParams params = base_params;
      params.seed = seed;
      const Forest forest = train_forest(train, params, jobs);
      f1s[s] = evaluate(forest, test).f1;
    }
    AblationPoint point;
    point.fraction = fraction;
    for (const double f1 : f1s) point.mean_f1 += f1 / double(f1s.size());
    if (f1s.size() > 1) {
      double ss = 0.0;
      for (const double f1 : f1s) ss += (f1 - point.mean_f1) * (f1 - point.mean_f1);
      point.std_f1 = std::sqrt(ss / double(f1s.size() - 1));
    }
    curve.push_back(point);
  }
  return curve;
}

}  // namespace dialex
