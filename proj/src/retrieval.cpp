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

#include "dialex/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dialex/io.hpp"

namespace dialex {

std::vector<std::string> tokenize(std::string_view text) {
  const std::u32string cps = decode_utf8(nfc(lowercase(text)));
  std::vector<std::string> tokens;
  std::u32string current;
  for (const char32_t cp : cps) {
    if (is_word_char(cp)) {
      current.push_back(cp);
    } else if (!current.empty()) {
      tokens.push_back(encode_utf8(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(encode_utf8(current));
  return tokens;
}

Index Index::build(const std::vector<Document>& docs) {
  Index index;
  index.doc_ids_.reserve(docs.size());
  index.doc_lengths_.reserve(docs.size());
  std::uint64_t total_tokens = 0;
  for (const Document& doc : docs) {
    const auto ord = static_cast<std::uint32_t>(index.doc_ids_.size());
    if (!index.id_to_ordinal_.emplace(doc.id, ord).second) {
      throw DataError(0, "duplicate document id '" + doc.id + "'");
    }
    index.doc_ids_.push_back(doc.id);
    const auto tokens = tokenize(doc.text);
    index.doc_lengths_.push_back(tokens.size());
    total_tokens += tokens.size();

    std::map<std::string, std::uint32_t> tf;
    for (const auto& tok : tokens) ++tf[tok];
    for (const auto& [term, freq] : tf) {
      index.postings_[term].emplace_back(ord, freq);
    }
  }
  index.avg_doc_length_ =
      docs.empty() ? 0.0 : double(total_tokens) / double(docs.size());
  return index;
}

std::uint32_t Index::ordinal_of(std::string_view doc_id) const {
  const auto it = id_to_ordinal_.find(std::string(doc_id));
  if (it == id_to_ordinal_.end()) {
    throw std::invalid_argument("unknown document id '" + std::string(doc_id) + "'");
  }
  return it->second;
}

std::uint64_t Index::doc_length(std::string_view doc_id) const {
  return doc_lengths_[ordinal_of(doc_id)];
}

std::uint64_t Index::doc_frequency(const std::string& term) const {
  const auto it = postings_.find(term);
  return it == postings_.end() ? 0 : it->second.size();
}

namespace {

double idf(std::size_t doc_count, std::size_t df) {
  return std::log(1.0 + (double(doc_count) - double(df) + 0.5) / (double(df) + 0.5));
}

double tf_part(double tf, double dl, double avgdl, const Bm25Params& p) {
  const double norm = avgdl > 0.0 ? dl / avgdl : 0.0;
  return tf * (p.k1 + 1.0) / (tf + p.k1 * (1.0 - p.b + p.b * norm));
}

}  // namespace

double Index::bm25_score(std::span<const std::string> query_tokens, std::string_view doc_id,
                         const Bm25Params& params) const {
  const std::uint32_t ord = ordinal_of(doc_id);
  const double dl = double(doc_lengths_[ord]);
  double score = 0.0;
  for (const auto& token : query_tokens) {
    const auto it = postings_.find(token);
    if (it == postings_.end()) continue;
    const auto& plist = it->second;
    const auto pos = std::lower_bound(
        plist.begin(), plist.end(), ord,
        [](const std::pair<std::uint32_t, std::uint32_t>& e, std::uint32_t o) {
          return e.first < o;
        });
    if (pos == plist.end() || pos->first != ord) continue;
    score += idf(doc_count(), plist.size()) * tf_part(double(pos->second), dl, avg_doc_length_, params);
  }
  return score;
}

std::vector<ScoredDoc> Index::search(std::string_view query, std::size_t k,
                                     const Bm25Params& params) const {
  if (k < 1) throw std::invalid_argument("search: k must be >= 1");
  const auto tokens = tokenize(query);
  std::vector<double> scores(doc_ids_.size(), 0.0);
  std::vector<std::uint32_t> touched;
  for (const auto& token : tokens) {
    const auto it = postings_.find(token);
    if (it == postings_.end()) continue;
    const double term_idf = idf(doc_count(), it->second.size());
    for (const auto& [ord, tf] : it->second) {
      if (scores[ord] == 0.0) touched.push_back(ord);
      scores[ord] += term_idf * tf_part(double(tf), double(doc_lengths_[ord]), avg_doc_length_, params);
    }
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  std::vector<ScoredDoc> ranked;
  ranked.reserve(touched.size());
  for (const std::uint32_t ord : touched) {
    if (scores[ord] > 0.0) ranked.push_back(ScoredDoc{doc_ids_[ord], scores[ord]});
  }
  std::sort(ranked.begin(), ranked.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

void Qrels::add(const std::string& query_id, const std::string& doc_id, int grade,
                std::size_t line) {
  if (grade < 0) throw DataError(line, "negative relevance grade");
  auto& per_query = judgments_[query_id];
  if (!per_query.emplace(doc_id, grade).second) {
    throw DataError(line, "duplicate qrels key (" + query_id + ", " + doc_id + ")");
  }
}

const std::map<std::string, int>* Qrels::for_query(const std::string& query_id) const {
  const auto it = judgments_.find(query_id);
  return it == judgments_.end() ? nullptr : &it->second;
}

double ndcg_at_k(std::span<const ScoredDoc> run, const Qrels& qrels,
                 const std::string& query_id, std::size_t k) {
  if (k < 1) throw std::invalid_argument("ndcg_at_k: k must be >= 1");
  const auto* judged = qrels.for_query(query_id);
  if (judged == nullptr) return 0.0;
  std::vector<int> grades;
  grades.reserve(judged->size());
  for (const auto& [doc, grade] : *judged) {
    if (grade > 0) grades.push_back(grade);
  }
  if (grades.empty()) return 0.0;
  std::sort(grades.rbegin(), grades.rend());

  double dcg = 0.0;
  const std::size_t depth = std::min(k, run.size());
  for (std::size_t i = 0; i < depth; ++i) {
    const auto it = judged->find(run[i].id);
    if (it != judged->end() && it->second > 0) {
      dcg += double(it->second) / std::log2(double(i) + 2.0);
    }
  }
  double ideal = 0.0;
  for (std::size_t i = 0; i < std::min(k, grades.size()); ++i) {
    ideal += double(grades[i]) / std::log2(double(i) + 2.0);
  }
  return ideal > 0.0 ? dcg / ideal : 0.0;
}

double recall_at_k(std::span<const ScoredDoc> run, const Qrels& qrels,
                   const std::string& query_id, std::size_t k) {
  if (k < 1) throw std::invalid_argument("recall_at_k: k must be >= 1");
  const auto* judged = qrels.for_query(query_id);
  if (judged == nullptr) return 0.0;
  std::size_t relevant = 0;
  for (const auto& [doc, grade] : *judged) relevant += grade > 0 ? 1 : 0;
  if (relevant == 0) return 0.0;
  std::size_t hit = 0;
  const std::size_t depth = std::min(k, run.size());
  for (std::size_t i = 0; i < depth; ++i) {
    const auto it = judged->find(run[i].id);
    if (it != judged->end() && it->second > 0) ++hit;
  }
  return double(hit) / double(relevant);
}

ExpandedQuery expand_query(std::string_view query, const Dictionary& dict) {
  const auto tokens = tokenize(query);
  std::set<std::string> seen(tokens.begin(), tokens.end());
  std::vector<std::string> appended;
  for (const auto& token : tokens) {
    const auto* variants = dict.find(token);
    if (variants == nullptr) continue;
    for (const auto& variant : *variants) {
      if (seen.insert(variant).second) appended.push_back(variant);
    }
  }
  ExpandedQuery out;
  out.augmented = !appended.empty();
  out.text = std::string(query);
  for (const auto& variant : appended) {
    out.text += ' ';
    out.text += variant;
  }
  return out;
}

QeReport qe_experiment(std::span<const QeDialectData> data, std::size_t ndcg_k,
                       std::size_t recall_k, const Bm25Params& params) {
  QeReport report;
  const std::size_t depth = std::max(ndcg_k, recall_k);
  for (const QeDialectData& dialect : data) {
    const Index index = Index::build(dialect.docs);

    std::set<std::string> query_ids;
    for (const Query& q : dialect.queries) query_ids.insert(q.id);
    for (const auto& [qid, per_query] : dialect.qrels.judgments()) {
      if (!query_ids.count(qid)) {
        report.warnings.push_back(dialect.name + ": qrels query '" + qid +
                                  "' missing from the query set");
      }
      for (const auto& [doc, grade] : per_query) {
        if (!index.has_doc(doc)) {
          report.warnings.push_back(dialect.name + ": query '" + qid +
                                    "' judges unknown document '" + doc + "'");
        }
      }
    }

    QeRow row;
    row.name = dialect.name;
    row.n_query = double(dialect.queries.size());
    for (const Query& query : dialect.queries) {
      const auto base_run = index.search(query.text, depth, params);
      const ExpandedQuery expanded = expand_query(query.text, dialect.dict);
      const auto qe_run = expanded.augmented ? index.search(expanded.text, depth, params) : base_run;
      row.ndcg_base += ndcg_at_k(base_run, dialect.qrels, query.id, ndcg_k);
      row.ndcg_qe += ndcg_at_k(qe_run, dialect.qrels, query.id, ndcg_k);
      row.recall_base += recall_at_k(base_run, dialect.qrels, query.id, recall_k);
      row.recall_qe += recall_at_k(qe_run, dialect.qrels, query.id, recall_k);
      row.n_aug += expanded.augmented ? 1.0 : 0.0;
    }
    if (row.n_query > 0) {
      row.ndcg_base /= row.n_query;
      row.ndcg_qe /= row.n_query;
      row.recall_base /= row.n_query;
      row.recall_qe /= row.n_query;
      row.pct_aug = row.n_aug / row.n_query;
    }
    row.ndcg_delta_pct = row.ndcg_base > 0.0 ? (row.ndcg_qe - row.ndcg_base) / row.ndcg_base : 0.0;
    row.recall_delta_pct =
        row.recall_base > 0.0 ? (row.recall_qe - row.recall_base) / row.recall_base : 0.0;
    report.rows.push_back(row);
  }

  // The ALL row is the macro-average of the per-dialect rows, including the
  // count and percentage columns.
  QeRow all;
  all.name = "ALL";
  const double n = double(report.rows.size());
  if (n > 0) {
    for (const QeRow& row : report.rows) {
      all.ndcg_base += row.ndcg_base / n;
      all.ndcg_qe += row.ndcg_qe / n;
      all.ndcg_delta_pct += row.ndcg_delta_pct / n;
      all.recall_base += row.recall_base / n;
      all.recall_qe += row.recall_qe / n;
      all.recall_delta_pct += row.recall_delta_pct / n;
      all.n_aug += row.n_aug / n;
      all.n_query += row.n_query / n;
      all.pct_aug += row.pct_aug / n;
    }
  }
  report.rows.push_back(all);
  return report;
}

std::string write_run_trec(std::span<const RunEntry> run, std::string_view tag) {
  std::string out;
  char buf[64];
  for (const RunEntry& entry : run) {
    for (std::size_t i = 0; i < entry.ranking.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.6f", entry.ranking[i].score);
      out += entry.query_id;
      out += " Q0 ";
      out += entry.ranking[i].id;
      out += ' ';
      out += std::to_string(i + 1);
      out += ' ';
      out += buf;
      out += ' ';
      out += tag;
      out += '\n';
    }
  }
  return out;
}

namespace {

std::vector<std::string> split_whitespace(std::string_view line) {
  std::vector<std::string> fields;
  std::istringstream ss{std::string(line)};
  std::string field;
  while (ss >> field) fields.push_back(field);
  return fields;
}

}  // namespace

std::vector<RunEntry> read_run_trec(std::string_view content) {
  std::map<std::string, std::vector<std::pair<long long, ScoredDoc>>> by_query;
  for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_whitespace(line);
    if (fields.size() != 6) {
      throw DataError(line_no, "expected 'qid Q0 docid rank score tag'");
    }
    try {
      const long long rank = std::stoll(fields[3]);
      const double score = std::stod(fields[4]);
      by_query[fields[0]].emplace_back(rank, ScoredDoc{fields[2], score});
    } catch (const std::exception&) {
      throw DataError(line_no, "bad rank or score field");
    }
  });
  std::vector<RunEntry> run;
  run.reserve(by_query.size());
  for (auto& [qid, entries] : by_query) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    RunEntry entry;
    entry.query_id = qid;
    for (auto& [rank, doc] : entries) entry.ranking.push_back(std::move(doc));
    run.push_back(std::move(entry));
  }
  return run;
}

Qrels read_qrels_trec(std::string_view content) {
  Qrels qrels;
  for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_whitespace(line);
    if (fields.size() != 4) {
      throw DataError(line_no, "expected 'qid 0 docid rel'");
    }
    int grade = 0;
    try {
      grade = std::stoi(fields[3]);
    } catch (const std::exception&) {
      throw DataError(line_no, "bad relevance grade '" + fields[3] + "'");
    }
    qrels.add(fields[0], fields[2], grade, line_no);
  });
  return qrels;
}

std::vector<Document> read_documents_jsonl(std::string_view content) {
  std::vector<Document> docs;
  for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(line_no, std::string("bad JSON: ") + e.what());
    }
    if (!parsed.is_object() || !parsed.contains("id") || !parsed.contains("contents") ||
        !parsed["id"].is_string() || !parsed["contents"].is_string()) {
      throw DataError(line_no, "expected object with string fields 'id' and 'contents'");
    }
    docs.push_back(Document{parsed["id"].get<std::string>(), parsed["contents"].get<std::string>()});
  });
  return docs;
}

std::vector<Query> read_queries_tsv(std::string_view content) {
  std::vector<Query> queries;
  std::set<std::string> seen;
  for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_tabs(line);
    if (fields.size() != 2) {
      throw DataError(line_no, "expected 'qid<TAB>text'");
    }
    if (!seen.insert(std::string(fields[0])).second) {
      throw DataError(line_no, "duplicate query id '" + std::string(fields[0]) + "'");
    }
    queries.push_back(Query{std::string(fields[0]), std::string(fields[1])});
  });
  return queries;
}

void Index::save(const std::filesystem::path& dir, std::string_view header_comment) const {
  std::filesystem::create_directories(dir);
  std::string meta;
  if (!header_comment.empty()) meta += std::string(header_comment);
  meta += "format\tdialex.index.v1\n";
  meta += "doc_count\t" + std::to_string(doc_count()) + '\n';
  std::uint64_t total = 0;
  for (const std::uint64_t len : doc_lengths_) total += len;
  meta += "total_tokens\t" + std::to_string(total) + '\n';
  atomic_write_file(dir / "meta.tsv", meta);

  std::string docs;
  for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
    docs += doc_ids_[i];
    docs += '\t';
    docs += std::to_string(doc_lengths_[i]);
    docs += '\n';
  }
  atomic_write_file(dir / "docs.tsv", docs);

  std::string postings;
  for (const auto& [term, plist] : postings_) {
    postings += term;
    for (const auto& [ord, tf] : plist) {
      postings += '\t';
      postings += std::to_string(ord);
      postings += ':';
      postings += std::to_string(tf);
    }
    postings += '\n';
  }
  atomic_write_file(dir / "postings.tsv", postings);
}

Index Index::load(const std::filesystem::path& dir) {
  Index index;
  const std::string meta = read_file(dir / "meta.tsv");
  std::uint64_t doc_count_meta = 0, total_tokens = 0;
  bool format_seen = false;
  for_each_line(meta, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_tabs(line);
    if (fields.size() != 2) throw DataError(line_no, "bad meta line");
    if (fields[0] == "format") {
      if (fields[1] != "dialex.index.v1") throw DataError(line_no, "unknown index format");
      format_seen = true;
    } else if (fields[0] == "doc_count") {
      doc_count_meta = std::stoull(std::string(fields[1]));
    } else if (fields[0] == "total_tokens") {
      total_tokens = std::stoull(std::string(fields[1]));
    }
  });
  if (!format_seen) throw DataError(0, "index meta.tsv missing format line");

  const std::string docs = read_file(dir / "docs.tsv");
  for_each_line(docs, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_tabs(line);
    if (fields.size() != 2) throw DataError(line_no, "bad docs line");
    const auto ord = static_cast<std::uint32_t>(index.doc_ids_.size());
    if (!index.id_to_ordinal_.emplace(std::string(fields[0]), ord).second) {
      throw DataError(line_no, "duplicate document id '" + std::string(fields[0]) + "'");
    }
    index.doc_ids_.emplace_back(fields[0]);
    index.doc_lengths_.push_back(std::stoull(std::string(fields[1])));
  });
  if (index.doc_ids_.size() != doc_count_meta) {
    throw DataError(0, "index doc count mismatch between meta.tsv and docs.tsv");
  }

  const std::string postings = read_file(dir / "postings.tsv");
  for_each_line(postings, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_tabs(line);
    if (fields.size() < 2) throw DataError(line_no, "bad postings line");
    auto& plist = index.postings_[std::string(fields[0])];
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto colon = fields[i].find(':');
      if (colon == std::string_view::npos) throw DataError(line_no, "bad posting entry");
      const auto ord = static_cast<std::uint32_t>(std::stoul(std::string(fields[i].substr(0, colon))));
      const auto tf = static_cast<std::uint32_t>(std::stoul(std::string(fields[i].substr(colon + 1))));
      if (ord >= index.doc_ids_.size()) throw DataError(line_no, "posting ordinal out of range");
      plist.emplace_back(ord, tf);
    }
  });
  index.avg_doc_length_ =
      index.doc_ids_.empty() ? 0.0 : double(total_tokens) / double(index.doc_ids_.size());
  return index;
}

}  // namespace dialex
