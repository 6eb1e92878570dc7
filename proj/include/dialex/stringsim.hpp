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

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "dialex/text.hpp"

namespace dialex {

/// String-similarity features between a German lemma and a dialect candidate.
///
/// Similarity features (DICE2..TRISIM) score 1 on identical strings, distance
/// features (NED..PHONDIST) score 0; every value lies in [0,1]. The order
/// below is frozen: trained models record it and refuse to score with a
/// mismatching engine.
enum Feature : int {
  kDice2 = 0,
  kDice3,
  kXDice,
  kXXDice,
  kPrefix,
  kLcsr,
  kBiSim,
  kTriSim,
  kNed,
  kBiDist,
  kTriDist,
  kPhonDist,
  kFeatureCount,
};

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "DICE2",  "DICE3", "XDICE", "XXDICE", "PREFIX", "LCSR",
    "BISIM", "TRISIM", "NED",   "BIDIST", "TRIDIST", "PHONDIST",
};

using FeatureVector = std::array<double, kFeatureCount>;

enum class GramKind { bigram, trigram, xtrigram };

/// Ordered character n-grams of a string.
struct NgramSeq {
  int order = 0;
  std::vector<std::u32string> tokens;
};

/// Unpadded sliding-window n-grams; empty when the string is shorter than n.
/// Throws std::invalid_argument for n < 2.
NgramSeq ngrams(const Term& s, int n);

/// Extended trigrams: each trigram with its middle character replaced by '_'.
NgramSeq xgrams(const Term& s);

double dice(const Term& x, const Term& y, GramKind kind);
double xxdice(const Term& x, const Term& y);
double prefix_sim(const Term& x, const Term& y);
double lcsr(const Term& x, const Term& y);

/// BI-SIM / TRI-SIM (n = 2 or 3): LCS-style alignment over '^'-padded n-gram
/// tokens with fractional per-position token identity, normalized by the
/// longer word length.
double ngram_sim(const Term& x, const Term& y, int n);

int levenshtein(const Term& x, const Term& y);
int levenshtein(std::u32string_view a, std::u32string_view b);

/// Levenshtein with early abandoning: returns the exact distance when it is
/// <= limit, otherwise any value > limit.
int levenshtein_bounded(std::u32string_view a, std::u32string_view b, int limit);

double ned(const Term& x, const Term& y);

/// Bi-Dist / Tri-Dist (n = 2 or 3): edit distance over the padded n-gram
/// token sequences (substitution cost = 1 - token identity), normalized by
/// the longer word length.
double ngram_dist(const Term& x, const Term& y, int n);

/// All 12 features in the frozen kFeatureNames order.
FeatureVector feature_vector(const Term& x, const Term& y);

}  // namespace dialex
