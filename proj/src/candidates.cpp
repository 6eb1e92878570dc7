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

#include "dialex/candidates.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "dialex/parallel.hpp"
#include "dialex/stringsim.hpp"

namespace dialex {

Vocabulary::Vocabulary(std::vector<VocabEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const VocabEntry& a, const VocabEntry& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.term.text() < b.term.text();
  });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].term == entries_[i - 1].term) {
      throw std::invalid_argument("vocabulary contains duplicate term: " +
                                  entries_[i].term.text());
    }
  }
}

void VocabBuilder::add(std::string_view token) {
  std::string norm = normalize(token, opts_);
  if (norm.empty()) return;
  ++counts_[std::move(norm)];
}

Vocabulary VocabBuilder::build(std::size_t cap) && {
  std::vector<std::pair<std::string, std::uint64_t>> sorted(counts_.begin(), counts_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (cap > 0 && sorted.size() > cap) sorted.resize(cap);
  std::vector<VocabEntry> entries;
  entries.reserve(sorted.size());
  for (auto& [text, freq] : sorted) {
    entries.push_back(VocabEntry{Term(text, NormalizeOptions{.lowercase = false}), freq});
  }
  return Vocabulary(std::move(entries));
}

Vocabulary extract_vocab(const std::vector<std::string>& tokens, std::size_t cap,
                         NormalizeOptions opts) {
  VocabBuilder builder(opts);
  for (const auto& tok : tokens) builder.add(tok);
  return std::move(builder).build(cap);
}

namespace {

// Worst-first ordering for the running top-k: larger distance first, then
// lexicographically larger term.
struct HeapEntry {
  int distance;
  std::uint32_t entry_index;
};

struct WorstFirst {
  const std::vector<VocabEntry>* entries;
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.distance != b.distance) return a.distance < b.distance;
    return (*entries)[a.entry_index].term.text() < (*entries)[b.entry_index].term.text();
  }
};

}  // namespace

NeighborIndex::NeighborIndex(const Vocabulary& vocab) : vocab_(&vocab) {
  const auto& entries = vocab.entries();
  by_length_.resize(entries.size());
  for (std::uint32_t i = 0; i < entries.size(); ++i) by_length_[i] = i;
  std::sort(by_length_.begin(), by_length_.end(), [&](std::uint32_t a, std::uint32_t b) {
    const std::size_t la = entries[a].term.length(), lb = entries[b].term.length();
    if (la != lb) return la < lb;
    return entries[a].term.text() < entries[b].term.text();
  });
  std::size_t max_len = 0;
  for (const auto& e : entries) max_len = std::max(max_len, e.term.length());
  length_start_.assign(max_len + 2, by_length_.size());
  for (std::size_t pos = by_length_.size(); pos-- > 0;) {
    length_start_[entries[by_length_[pos]].term.length()] = pos;
  }
  for (std::size_t l = max_len + 1; l-- > 0;) {
    length_start_[l] = std::min(length_start_[l], length_start_[l + 1]);
  }
}

CandidateSet NeighborIndex::query(const Term& lemma, int k) const {
  if (k < 1) throw std::invalid_argument("nearest_neighbors: k must be >= 1");
  const auto& entries = vocab_->entries();
  CandidateSet result;
  result.lemma = lemma;
  if (entries.empty()) return result;

  WorstFirst cmp{&entries};
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, WorstFirst> heap(cmp);
  const std::size_t want = static_cast<std::size_t>(k);
  const std::size_t lemma_len = lemma.length();
  const std::size_t max_len = length_start_.size() - 2;

  auto scan_bucket = [&](std::size_t len) {
    const std::size_t lb = len > lemma_len ? len - lemma_len : lemma_len - len;
    for (std::size_t pos = length_start_[len]; pos < length_start_[len + 1]; ++pos) {
      const std::uint32_t ei = by_length_[pos];
      const Term& cand = entries[ei].term;
      if (heap.size() < want) {
        heap.push(HeapEntry{levenshtein(lemma.codepoints(), cand.codepoints()), ei});
        continue;
      }
      const HeapEntry worst = heap.top();
      if (static_cast<int>(lb) > worst.distance) return;  // whole bucket out of reach
      const int d = levenshtein_bounded(lemma.codepoints(), cand.codepoints(), worst.distance);
      if (d > worst.distance) continue;
      if (d == worst.distance && cand.text() >= entries[worst.entry_index].term.text()) continue;
      heap.pop();
      heap.push(HeapEntry{d, ei});
    }
  };

  // Walk length buckets outward from the lemma length; the length-difference
  // lower bound makes farther buckets skippable once the heap is full.
  const std::size_t up_span = max_len > lemma_len ? max_len - lemma_len : 0;
  const std::size_t max_delta = std::max(lemma_len, up_span);
  for (std::size_t delta = 0; delta <= max_delta; ++delta) {
    if (lemma_len + delta <= max_len) scan_bucket(lemma_len + delta);
    if (delta > 0 && lemma_len >= delta && lemma_len - delta <= max_len) {
      scan_bucket(lemma_len - delta);
    }
    if (heap.size() >= want && static_cast<int>(delta) > heap.top().distance) break;
  }

  result.candidates.reserve(heap.size());
  while (!heap.empty()) {
    const HeapEntry e = heap.top();
    heap.pop();
    result.candidates.push_back(Candidate{entries[e.entry_index].term, e.distance});
  }
  std::sort(result.candidates.begin(), result.candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.distance != b.distance) return a.distance < b.distance;
              return a.term.text() < b.term.text();
            });
  return result;
}

CandidateSet nearest_neighbors(const Term& lemma, const Vocabulary& vocab, int k) {
  return NeighborIndex(vocab).query(lemma, k);
}

std::vector<CandidateSet> generate_candidates(const Vocabulary& lemmas,
                                              const Vocabulary& dialect_vocab, int k,
                                              unsigned jobs) {
  if (k < 1) throw std::invalid_argument("generate_candidates: k must be >= 1");
  NeighborIndex index(dialect_vocab);
  std::vector<CandidateSet> out(lemmas.size());
  parallel_for(lemmas.size(), jobs,
               [&](std::size_t i) { out[i] = index.query(lemmas.entries()[i].term, k); });
  return out;
}

}  // namespace dialex
