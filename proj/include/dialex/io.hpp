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
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dialex/candidates.hpp"
#include "dialex/forest.hpp"
#include "dialex/text.hpp"

namespace dialex {

/// Malformed file content; carries the 1-based line number.
class DataError : public std::runtime_error {
 public:
  DataError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

/// Missing/unreadable files or bad configuration (CLI exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);  // throws UsageError

/// Writes via a temp file + atomic rename; partial outputs never survive.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

/// Splits one line on tabs (no quoting, no escapes).
std::vector<std::string_view> split_tabs(std::string_view line);

/// Iterates non-empty lines, skipping '#' comment lines, calling
/// fn(line_number, line). Line numbers are 1-based over the raw content.
void for_each_line(std::string_view content,
                   const std::function<void(std::size_t, std::string_view)>& fn);

/// `term<TAB>frequency` per line.
Vocabulary read_vocabulary_tsv(std::string_view content, std::size_t cap = 0,
                               NormalizeOptions opts = {});

/// Whitespace-segmented corpus -> frequency-ranked vocabulary.
Vocabulary read_corpus_tokens(std::string_view content, std::size_t cap = 0,
                              NormalizeOptions opts = {});

std::string write_vocabulary_tsv(const Vocabulary& vocab);

struct LabelOptions {
  bool inflected_positive = false;
};

/// `german<TAB>dialect<TAB>label` with label in {0,1} or the three-class
/// scheme; computes feature vectors on load.
std::vector<LabeledPair> read_labeled_pairs_tsv(std::string_view content,
                                                NormalizeOptions norm = {}, LabelOptions labels = {});

}  // namespace dialex
