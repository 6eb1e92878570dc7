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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dialex/lexicon.hpp"

namespace dialex {

/// Lowercase + NFC, split on any non-letter/non-digit codepoint. No
/// stemming, no stopword removal.
std::vector<std::string> tokenize(std::string_view text);

struct Document {
  std::string id;
  std::string text;
};

struct ScoredDoc {
  std::string id;
  double score = 0.0;
};

/// Lucene-style BM25: idf(t) = ln(1 + (N - df + 0.5)/(df + 0.5)),
/// tf part = tf*(k1+1) / (tf + k1*(1 - b + b*dl/avgdl)).
struct Bm25Params {
  double k1 = 0.9;
  double b = 0.4;
};

class Index {
 public:
  /// Throws DataError on duplicate document ids.
  static Index build(const std::vector<Document>& docs);

  std::size_t doc_count() const { return doc_ids_.size(); }
  double avg_doc_length() const { return avg_doc_length_; }
  bool has_doc(const std::string& doc_id) const { return id_to_ordinal_.count(doc_id) > 0; }
  std::uint64_t doc_length(std::string_view doc_id) const;
  std::uint64_t doc_frequency(const std::string& term) const;

  /// Sum of per-token BM25 contributions; duplicate query tokens contribute
  /// once per occurrence. Throws for unknown doc ids.
  double bm25_score(std::span<const std::string> query_tokens, std::string_view doc_id,
                    const Bm25Params& params = {}) const;

  /// Top-k by score descending, ties by doc id ascending; zero-score
  /// documents are excluded. Throws for k < 1.
  std::vector<ScoredDoc> search(std::string_view query, std::size_t k,
                                const Bm25Params& params = {}) const;

  void save(const std::filesystem::path& dir, std::string_view header_comment = {}) const;
  static Index load(const std::filesystem::path& dir);

 private:
  std::uint32_t ordinal_of(std::string_view doc_id) const;

  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, std::uint32_t> id_to_ordinal_;
  std::vector<std::uint64_t> doc_lengths_;
  // term -> (doc ordinal, term frequency), ordinals ascending
  std::map<std::string, std::vector<std::pair<std::uint32_t, std::uint32_t>>> postings_;
  double avg_doc_length_ = 0.0;
};

/// Relevance judgments keyed by (query id, doc id).
class Qrels {
 public:
  /// Throws DataError on duplicate (query, doc) keys.
  void add(const std::string& query_id, const std::string& doc_id, int grade,
           std::size_t line = 0);
  const std::map<std::string, int>* for_query(const std::string& query_id) const;
  const std::map<std::string, std::map<std::string, int>>& judgments() const {
    return judgments_;
  }

 private:
  std::map<std::string, std::map<std::string, int>> judgments_;
};

double ndcg_at_k(std::span<const ScoredDoc> run, const Qrels& qrels,
                 const std::string& query_id, std::size_t k = 10);
double recall_at_k(std::span<const ScoredDoc> run, const Qrels& qrels,
                   const std::string& query_id, std::size_t k = 100);

struct ExpandedQuery {
  std::string text;
  bool augmented = false;
};

/// Appends dictionary variants of query tokens after the original text,
/// deduplicated and excluding variants equal to an existing token.
ExpandedQuery expand_query(std::string_view query, const Dictionary& dict);

struct Query {
  std::string id;
  std::string text;
};

struct QeRow {
  std::string name;
  double ndcg_base = 0.0, ndcg_qe = 0.0, ndcg_delta_pct = 0.0;
  double recall_base = 0.0, recall_qe = 0.0, recall_delta_pct = 0.0;
  double n_aug = 0.0, n_query = 0.0, pct_aug = 0.0;
};

struct QeDialectData {
  std::string name;
  std::vector<Document> docs;
  std::vector<Query> queries;
  Qrels qrels;
  Dictionary dict;
};

/// Per-dialect rows plus a final ALL row holding the macro-average of the
/// per-dialect columns. Metrics are averaged over every query in the query
/// set (queries without judged or retrieved documents contribute 0).
struct QeReport {
  std::vector<QeRow> rows;
  std::vector<std::string> warnings;  // per-query id mismatches
};

QeReport qe_experiment(std::span<const QeDialectData> data, std::size_t ndcg_k = 10,
                       std::size_t recall_k = 100, const Bm25Params& params = {});

// trec-format run and qrels files.
struct RunEntry {
  std::string query_id;
  std::vector<ScoredDoc> ranking;
};

std::string write_run_trec(std::span<const RunEntry> run, std::string_view tag);
std::vector<RunEntry> read_run_trec(std::string_view content);
Qrels read_qrels_trec(std::string_view content);

/// JSON-lines corpus: one object per line with fields `id` and `contents`.
std::vector<Document> read_documents_jsonl(std::string_view content);

/// `qid<TAB>text` per line.
std::vector<Query> read_queries_tsv(std::string_view content);

}  // namespace dialex
