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

#include <stdexcept>
#include <string>
#include <string_view>

namespace dialex {

// UTF-8 <-> UTF-32. Invalid byte sequences decode to U+FFFD.
std::u32string decode_utf8(std::string_view utf8);
std::string encode_utf8(std::u32string_view cps);

// Canonical composition (NFC) of a UTF-8 string.
std::string nfc(std::string_view utf8);

// Per-codepoint simple lowercase mapping (locale independent).
std::string lowercase(std::string_view utf8);

bool is_word_char(char32_t cp);   // Unicode letter or decimal digit
bool is_whitespace(char32_t cp);

struct NormalizeOptions {
  bool lowercase = true;
};

/// Applies the engine-wide term normalization: optional lowercasing
/// followed by NFC composition.
std::string normalize(std::string_view utf8, const NormalizeOptions& opts = {});

/// A single normalized token. Invariants: non-empty after normalization and
/// free of whitespace. Construction throws std::invalid_argument otherwise.
class Term {
 public:
  Term() = default;
  explicit Term(std::string_view raw, const NormalizeOptions& opts = {});

  const std::string& text() const { return text_; }
  const std::u32string& codepoints() const { return cps_; }
  std::size_t length() const { return cps_.size(); }

  friend bool operator==(const Term& a, const Term& b) { return a.text_ == b.text_; }
  friend auto operator<=>(const Term& a, const Term& b) { return a.text_ <=> b.text_; }

 private:
  std::string text_;    // normalized UTF-8
  std::u32string cps_;  // decoded codepoints of text_
};

}  // namespace dialex
