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

#include "dialex/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dialex/lexicon.hpp"

namespace dialex {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw UsageError("cannot read file: " + path.string());
  return std::move(buf).str();
}

void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write file: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw UsageError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

void for_each_line(std::string_view content,
                   const std::function<void(std::size_t, std::string_view)>& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    if (pos == content.size()) break;
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!line.empty() && line.front() != '#') fn(line_no, line);
    pos = nl + 1;
  }
}

namespace {

std::uint64_t parse_u64_field(std::string_view field, std::size_t line_no,
                              std::string_view what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DataError(line_no, "bad " + std::string(what) + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

Vocabulary read_vocabulary_tsv(std::string_view content, std::size_t cap,
                               NormalizeOptions opts) {
  std::vector<VocabEntry> entries;
  for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_tabs(line);
    if (fields.size() != 2) {
      throw DataError(line_no, "expected 'term<TAB>frequency', got " +
                                   std::to_string(fields.size()) + " fields");
    }
    const std::uint64_t freq = parse_u64_field(fields[1], line_no, "frequency");
    try {
      entries.push_back(VocabEntry{Term(fields[0], opts), freq});
    } catch (const std::invalid_argument& e) {
      throw DataError(line_no, e.what());
    }
  });
  try {
    Vocabulary vocab(std::move(entries));
    if (cap > 0 && vocab.size() > cap) {
      auto trimmed = vocab.entries();
      trimmed.resize(cap);
      return Vocabulary(std::move(trimmed));
    }
    return vocab;
  } catch (const std::invalid_argument& e) {
    throw DataError(0, e.what());
  }
}

Vocabulary read_corpus_tokens(std::string_view content, std::size_t cap, NormalizeOptions opts) {
  VocabBuilder builder(opts);
  std::size_t start = 0;
  const auto flush = [&](std::size_t end) {
    if (end > start) builder.add(content.substr(start, end - start));
  };
  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      flush(i);
      start = i + 1;
    }
  }
  flush(content.size());
  return std::move(builder).build(cap);
}

std::string write_vocabulary_tsv(const Vocabulary& vocab) {
  std::string out;
  for (const auto& entry : vocab.entries()) {
    out += entry.term.text();
    out += '\t';
    out += std::to_string(entry.frequency);
    out += '\n';
  }
  return out;
}

std::vector<LabeledPair> read_labeled_pairs_tsv(std::string_view content, NormalizeOptions norm,
                                                LabelOptions labels) {
  std::vector<LabeledPair> pairs;
  for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw DataError(line_no, "expected 'german<TAB>dialect<TAB>label', got " +
                                   std::to_string(fields.size()) + " fields");
    }
    try {
      LabeledPair pair;
      pair.german = Term(fields[0], norm);
      pair.dialect = Term(fields[1], norm);
      pair.positive = label_map(parse_raw_label(fields[2]), labels.inflected_positive);
      pair.features = feature_vector(pair.german, pair.dialect);
      pairs.push_back(std::move(pair));
    } catch (const std::invalid_argument& e) {
      throw DataError(line_no, e.what());
    }
  });
  return pairs;
}

}  // namespace dialex
