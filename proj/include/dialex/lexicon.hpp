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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dialex/candidates.hpp"
#include "dialex/forest.hpp"

namespace dialex {

/// Gold label tags: the three-class scheme (translation / inflected /
/// unrelated) or plain binary 0/1.
enum class RawLabel { translation, inflected, unrelated, positive, negative };

/// Throws std::invalid_argument for unknown tags.
RawLabel parse_raw_label(std::string_view tag);

/// translation -> positive; unrelated -> negative; inflected variants are
/// negative unless inflected_positive is set.
bool label_map(RawLabel label, bool inflected_positive = false);

/// Induced dictionary: German lemma -> sorted unique dialect variants.
class Dictionary {
 public:
  Dictionary() = default;
  explicit Dictionary(std::string dialect_id) : dialect_id_(std::move(dialect_id)) {}

  /// Inserts a (lemma, variant) pair; returns false when it was a duplicate.
  bool add(const std::string& lemma, const std::string& variant);

  const std::vector<std::string>* find(const std::string& lemma) const;
  const std::map<std::string, std::vector<std::string>>& entries() const { return entries_; }
  const std::string& dialect_id() const { return dialect_id_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, std::vector<std::string>> entries_;
  std::string dialect_id_ = "other";
};

struct DictStats {
  std::uint64_t lemma_count = 0;
  std::uint64_t variant_count = 0;
  double variants_per_lemma = 0.0;  // 0 for an empty dictionary
};

DictStats dictionary_stats(const Dictionary& dict);

struct InduceOptions {
  int k = 10;
  double threshold = 0.5;
  std::string dialect_id = "other";
  unsigned jobs = 1;
};

/// Scores pre-filtered candidates and keeps the pairs the forest classifies
/// as translations. Lemmas with no positive candidate are absent.
Dictionary classify_candidates(std::span<const CandidateSet> candidate_sets,
                               const Forest& forest, const InduceOptions& opts = {});

/// The three-step pipeline: candidate generation, pair scoring, and
/// dictionary assembly.
Dictionary induce_dictionary(const Vocabulary& lemmas, const Vocabulary& dialect_vocab,
                             const Forest& forest, const InduceOptions& opts = {});

/// Candidate dump, one `lemma<TAB>candidate<TAB>distance` line per pair.
std::string candidates_tsv(std::span<const CandidateSet> candidate_sets);

/// One `lemma<TAB>variant` line per pair, sorted by (lemma, variant).
std::string export_tsv(const Dictionary& dict);

struct DictImport {
  Dictionary dict;
  std::uint64_t duplicates = 0;  // duplicate pairs dropped with a warning count
};

/// Parses dictionary TSV content; malformed lines raise DataError with the
/// offending line number. Terms are normalized like the feature engine.
DictImport import_tsv(std::string_view content, std::string dialect_id = "other");

}  // namespace dialex
