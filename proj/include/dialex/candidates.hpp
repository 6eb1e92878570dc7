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
#include <string>
#include <unordered_map>
#include <vector>

#include "dialex/text.hpp"

namespace dialex {

struct VocabEntry {
  Term term;
  std::uint64_t frequency = 0;
};

/// Frequency-ranked vocabulary: unique terms ordered by frequency descending,
/// ties broken lexicographically.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<VocabEntry> entries);

  const std::vector<VocabEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<VocabEntry> entries_;
};

/// Streaming frequency counter feeding extract_vocab. Tokens are normalized
/// (lowercase + NFC); empty tokens are impossible for whitespace-segmented
/// input.
class VocabBuilder {
 public:
  explicit VocabBuilder(NormalizeOptions opts = {}) : opts_(opts) {}
  void add(std::string_view token);
  /// cap == 0 keeps everything; otherwise the top-cap entries survive.
  Vocabulary build(std::size_t cap = 0) &&;

 private:
  NormalizeOptions opts_;
  std::unordered_map<std::string, std::uint64_t> counts_;
};

Vocabulary extract_vocab(const std::vector<std::string>& tokens, std::size_t cap = 0,
                         NormalizeOptions opts = {});

struct Candidate {
  Term term;
  int distance = 0;
};

/// Up to k lexical nearest neighbors of one lemma, sorted by
/// (distance ascending, term lexicographic ascending).
struct CandidateSet {
  Term lemma;
  std::vector<Candidate> candidates;
};

/// Exact Levenshtein k-NN over a fixed vocabulary. Internally prunes with the
/// length-difference lower bound and early-abandoned DP rows; output is
/// guaranteed identical to the naive all-pairs scan, tie-breaking included.
class NeighborIndex {
 public:
  explicit NeighborIndex(const Vocabulary& vocab);
  CandidateSet query(const Term& lemma, int k) const;

 private:
  const Vocabulary* vocab_;
  std::vector<std::uint32_t> by_length_;  // entry indices sorted by (length, term)
  std::vector<std::size_t> length_start_;  // by_length_ offset per term length
};

/// Throws std::invalid_argument for k < 1.
CandidateSet nearest_neighbors(const Term& lemma, const Vocabulary& vocab, int k);

/// One CandidateSet per lemma, in lemma order; identical to per-lemma
/// nearest_neighbors calls regardless of the worker count.
std::vector<CandidateSet> generate_candidates(const Vocabulary& lemmas,
                                              const Vocabulary& dialect_vocab, int k,
                                              unsigned jobs = 1);

}  // namespace dialex
