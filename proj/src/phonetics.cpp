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

#include "dialex/phonetics.hpp"

#include <algorithm>

#include "dialex/stringsim.hpp"

namespace dialex {

namespace {

// The encodable alphabet, after case folding. Umlauts behave as vowels.
bool in_alphabet(char32_t c) {
  return (c >= U'a' && c <= U'z') || c == U'ä' || c == U'ö' || c == U'ü' ||
         c == U'ß';
}

bool is_vowel(char32_t c) {
  switch (c) {
    case U'a':
    case U'e':
    case U'i':
    case U'j':
    case U'o':
    case U'u':
    case U'y':
    case U'ä':
    case U'ö':
    case U'ü':
      return true;
    default:
      return false;
  }
}

bool one_of(char32_t c, std::u32string_view set) {
  return set.find(c) != std::u32string_view::npos;
}

void collapse_adjacent(std::string& code) {
  code.erase(std::unique(code.begin(), code.end()), code.end());
}

}  // namespace

std::string cologne_encode(std::u32string_view word) {
  // Context rules see only the letter-only, case-folded form.
  const std::u32string folded = decode_utf8(lowercase(encode_utf8(word)));
  std::u32string letters;
  letters.reserve(folded.size());
  for (char32_t c : folded) {
    if (in_alphabet(c)) letters.push_back(c);
  }

  std::string raw;
  raw.reserve(letters.size() + 2);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const char32_t c = letters[i];
    const char32_t prev = i > 0 ? letters[i - 1] : 0;
    const char32_t next = i + 1 < letters.size() ? letters[i + 1] : 0;
    if (is_vowel(c)) {
      raw += '0';
    } else if (c == U'b') {
      raw += '1';
    } else if (c == U'p') {
      raw += next == U'h' ? '3' : '1';
    } else if (c == U'd' || c == U't') {
      raw += one_of(next, U"csz") ? '8' : '2';
    } else if (c == U'f' || c == U'v' || c == U'w') {
      raw += '3';
    } else if (c == U'g' || c == U'k' || c == U'q') {
      raw += '4';
    } else if (c == U'c') {
      if (i == 0) {
        raw += one_of(next, U"ahkloqrux") ? '4' : '8';
      } else if (prev == U's' || prev == U'z') {
        raw += '8';
      } else {
        raw += one_of(next, U"ahkoqux") ? '4' : '8';
      }
    } else if (c == U'x') {
      if (one_of(prev, U"ckq")) {
        raw += '8';
      } else {
        raw += "48";
      }
    } else if (c == U'l') {
      raw += '5';
    } else if (c == U'm' || c == U'n') {
      raw += '6';
    } else if (c == U'r') {
      raw += '7';
    } else if (c == U's' || c == U'z' || c == U'ß') {
      raw += '8';
    }
    // 'h' carries no code
  }

  collapse_adjacent(raw);
  std::string code;
  code.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (i == 0 || raw[i] != '0') code += raw[i];
  }
  // Zero removal can rejoin equal digits; collapse once more so the code
  // never carries adjacent duplicates.
  collapse_adjacent(code);
  return code;
}

std::string cologne_encode(const Term& word) { return cologne_encode(word.codepoints()); }

std::string cologne_encode(std::string_view utf8) { return cologne_encode(decode_utf8(utf8)); }

double phonetic_dist(const Term& x, const Term& y) {
  const std::string cx = cologne_encode(x);
  const std::string cy = cologne_encode(y);
  if (cx.empty() && cy.empty()) return 0.0;
  const std::u32string ux(cx.begin(), cx.end());
  const std::u32string uy(cy.begin(), cy.end());
  return double(levenshtein(ux, uy)) / double(std::max(ux.size(), uy.size()));
}

}  // namespace dialex
