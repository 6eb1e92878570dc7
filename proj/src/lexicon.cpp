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

#include "dialex/lexicon.hpp"

#include <algorithm>

#include "dialex/io.hpp"
#include "dialex/parallel.hpp"

namespace dialex {

RawLabel parse_raw_label(std::string_view tag) {
  if (tag == "translation") return RawLabel::translation;
  if (tag == "inflected") return RawLabel::inflected;
  if (tag == "unrelated") return RawLabel::unrelated;
  if (tag == "1") return RawLabel::positive;
  if (tag == "0") return RawLabel::negative;
  throw std::invalid_argument("unknown label tag '" + std::string(tag) + "'");
}

bool label_map(RawLabel label, bool inflected_positive) {
  switch (label) {
    case RawLabel::translation:
    case RawLabel::positive:
      return true;
    case RawLabel::inflected:
      return inflected_positive;
    case RawLabel::unrelated:
    case RawLabel::negative:
      return false;
  }
  throw std::invalid_argument("unknown label value");
}

bool Dictionary::add(const std::string& lemma, const std::string& variant) {
  auto& variants = entries_[lemma];
  const auto it = std::lower_bound(variants.begin(), variants.end(), variant);
  if (it != variants.end() && *it == variant) return false;
  variants.insert(it, variant);
  return true;
}

const std::vector<std::string>* Dictionary::find(const std::string& lemma) const {
  const auto it = entries_.find(lemma);
  return it == entries_.end() ? nullptr : &it->second;
}

DictStats dictionary_stats(const Dictionary& dict) {
  DictStats stats;
  stats.lemma_count = dict.entries().size();
  for (const auto& [lemma, variants] : dict.entries()) {
    stats.variant_count += variants.size();
  }
  stats.variants_per_lemma =
      stats.lemma_count == 0 ? 0.0 : double(stats.variant_count) / double(stats.lemma_count);
  return stats;
}

Dictionary classify_candidates(std::span<const CandidateSet> candidate_sets,
                               const Forest& forest, const InduceOptions& opts) {
  if (forest.feature_order().size() != kFeatureNames.size()) {
    throw std::invalid_argument("classify_candidates: forest feature order mismatch");
  }
  std::vector<std::vector<const Candidate*>> accepted(candidate_sets.size());
  parallel_for(candidate_sets.size(), opts.jobs, [&](std::size_t i) {
    const CandidateSet& cs = candidate_sets[i];
    for (const Candidate& cand : cs.candidates) {
      const FeatureVector fv = feature_vector(cs.lemma, cand.term);
      if (classify(forest, fv, opts.threshold)) accepted[i].push_back(&cand);
    }
  });

  Dictionary dict(opts.dialect_id);
  for (std::size_t i = 0; i < candidate_sets.size(); ++i) {
    for (const Candidate* cand : accepted[i]) {
      dict.add(candidate_sets[i].lemma.text(), cand->term.text());
    }
  }
  return dict;
}

Dictionary induce_dictionary(const Vocabulary& lemmas, const Vocabulary& dialect_vocab,
                             const Forest& forest, const InduceOptions& opts) {
  const auto candidate_sets = generate_candidates(lemmas, dialect_vocab, opts.k, opts.jobs);
  return classify_candidates(candidate_sets, forest, opts);
}

std::string candidates_tsv(std::span<const CandidateSet> candidate_sets) {
  std::string out;
  for (const CandidateSet& cs : candidate_sets) {
    for (const Candidate& cand : cs.candidates) {
      out += cs.lemma.text();
      out += '\t';
      out += cand.term.text();
      out += '\t';
      out += std::to_string(cand.distance);
      out += '\n';
    }
  }
  return out;
}

std::string export_tsv(const Dictionary& dict) {
  std::string out;
  for (const auto& [lemma, variants] : dict.entries()) {
    for (const auto& variant : variants) {
      out += lemma;
      out += '\t';
      out += variant;
      out += '\n';
    }
  }
  return out;
}

DictImport import_tsv(std::string_view content, std::string dialect_id) {
  DictImport result;
  result.dict = Dictionary(std::move(dialect_id));
  for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_tabs(line);
    if (fields.size() != 2) {
      throw DataError(line_no, "expected 'lemma<TAB>variant', got " +
                                   std::to_string(fields.size()) + " fields");
    }
    try {
      const Term lemma(fields[0]);
      const Term variant(fields[1]);
      if (!result.dict.add(lemma.text(), variant.text())) ++result.duplicates;
    } catch (const std::invalid_argument& e) {
      throw DataError(line_no, e.what());
    }
  });
  return result;
}

}  // namespace dialex
