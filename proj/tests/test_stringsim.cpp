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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "dialex/io.hpp"
#include "dialex/rng.hpp"
#include "dialex/stringsim.hpp"
#include "oracles.hpp"

using namespace dialex;

namespace {

Term T(std::string_view s) { return Term(s); }

std::u32string toks_joined(const NgramSeq& seq) {
  std::u32string out;
  for (const auto& t : seq.tokens) {
    if (!out.empty()) out += U' ';
    out += t;
  }
  return out;
}

// Random terms over a mixed pool: ASCII letters, German letters, Cyrillic,
// Greek, CJK. No whitespace, no combining marks.
std::string random_term(SplitRng& rng, std::size_t max_len = 12) {
  static const std::u32string pool =
      U"abcdefghijklmnopqrstuvwxyzäöüßéèàñçабвгдежзαβγδε日本語한0123456789-'";
  const std::size_t len = 1 + rng.below(max_len);
  std::u32string cps;
  for (std::size_t i = 0; i < len; ++i) cps.push_back(pool[rng.below(pool.size())]);
  return encode_utf8(cps);
}

}  // namespace

TEST_CASE("term normalization") {
  CHECK(Term("Haus").text() == "haus");
  CHECK(Term("Haus", NormalizeOptions{.lowercase = false}).text() == "Haus");
  // combining diaeresis composes to the precomposed umlaut
  CHECK(Term("über").text() == "über");
  CHECK(Term("STRASSE").text() == "strasse");
  CHECK(Term("ß").text() == "ß");
  CHECK_THROWS_AS(Term(""), std::invalid_argument);
  CHECK_THROWS_AS(Term("two words"), std::invalid_argument);
  CHECK_THROWS_AS(Term("tab\there"), std::invalid_argument);
}

TEST_CASE("ngrams") {
  CHECK(toks_joined(ngrams(T("haus"), 2)) == U"ha au us");
  CHECK(ngrams(T("ab"), 3).tokens.empty());
  CHECK(toks_joined(ngrams(T("nacht"), 3)) == U"nac ach cht");
  CHECK(ngrams(T("haus"), 2).order == 2);
  CHECK_THROWS_AS(ngrams(T("haus"), 1), std::invalid_argument);
}

TEST_CASE("xgrams") {
  CHECK(toks_joined(xgrams(T("nacht"))) == U"n_c a_h c_t");
  CHECK(xgrams(T("ab")).tokens.empty());
  CHECK(toks_joined(xgrams(T("aaa"))) == U"a_a");
}

TEST_CASE("dice") {
  CHECK(dice(T("colour"), T("color"), GramKind::bigram) == doctest::Approx(2.0 * 3 / 9).epsilon(1e-12));
  CHECK(dice(T("haus"), T("haus"), GramKind::trigram) == 1.0);
  CHECK(dice(T("nacht"), T("nocht"), GramKind::xtrigram) == doctest::Approx(2.0 * 2 / 6));
  // gram set empty on one side, different strings
  CHECK(dice(T("ab"), T("abc"), GramKind::trigram) == 0.0);
  CHECK(dice(T("a"), T("a"), GramKind::trigram) == 1.0);
}

TEST_CASE("xxdice") {
  CHECK(xxdice(T("abcd"), T("zabcd")) == doctest::Approx(2.0 * 1.5 / 7));
  CHECK(xxdice(T("haus"), T("haus")) == 1.0);
  CHECK(xxdice(T("ab"), T("cd")) == 0.0);
  // last-occurrence convention: in "abab" the shared bigram ab sits at 2, in "ab" at 0
  CHECK(xxdice(T("abab"), T("ab")) == doctest::Approx(2.0 * (1.0 / 5) / 4));
}

TEST_CASE("prefix_sim") {
  CHECK(prefix_sim(T("haus"), T("haut")) == doctest::Approx(0.75));
  CHECK(prefix_sim(T("haus"), T("haus")) == 1.0);
  CHECK(prefix_sim(T("ab"), T("xy")) == 0.0);
}

TEST_CASE("lcsr") {
  CHECK(lcsr(T("colour"), T("color")) == doctest::Approx(5.0 / 6));
  CHECK(lcsr(T("haus"), T("haus")) == 1.0);
  CHECK(lcsr(T("abc"), T("xyz")) == 0.0);
}

TEST_CASE("ngram_sim") {
  CHECK(ngram_sim(T("ab"), T("ac"), 2) == doctest::Approx(0.75));
  CHECK(ngram_sim(T("haus"), T("haus"), 2) == 1.0);
  CHECK(ngram_sim(T("haus"), T("haus"), 3) == 1.0);
  CHECK(ngram_sim(T("a"), T("b"), 2) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ngram_sim(T("a"), T("b"), 4), std::invalid_argument);
}

TEST_CASE("levenshtein") {
  CHECK(levenshtein(T("kitten"), T("sitting")) == 3);
  CHECK(levenshtein(T("haus"), T("haus")) == 0);
  CHECK(levenshtein(std::u32string_view(U""), std::u32string_view(U"abc")) == 3);
}

TEST_CASE("levenshtein_bounded agrees with exact when within the limit") {
  SplitRng rng(11, 0);
  for (int i = 0; i < 500; ++i) {
    const std::u32string a = decode_utf8(random_term(rng, 10));
    const std::u32string b = decode_utf8(random_term(rng, 10));
    const int exact = levenshtein(a, b);
    const int limit = int(rng.below(8));
    const int bounded = levenshtein_bounded(a, b, limit);
    if (exact <= limit) {
      CHECK(bounded == exact);
    } else {
      CHECK(bounded > limit);
    }
  }
}

TEST_CASE("ned") {
  CHECK(ned(T("kitten"), T("sitting")) == doctest::Approx(3.0 / 7));
  CHECK(ned(T("haus"), T("haus")) == 0.0);
  CHECK(ned(T("a"), T("b")) == 1.0);
}

TEST_CASE("ngram_dist") {
  CHECK(ngram_dist(T("ab"), T("ac"), 2) == doctest::Approx(0.25));
  CHECK(ngram_dist(T("haus"), T("haus"), 2) == 0.0);
  CHECK(ngram_dist(T("haus"), T("haus"), 3) == 0.0);
  CHECK_THROWS_AS(ngram_dist(T("a"), T("b"), 5), std::invalid_argument);
}

TEST_CASE("feature_vector fixed order and identity") {
  const FeatureVector identity = feature_vector(T("müller"), T("müller"));
  for (int f = 0; f < 8; ++f) CHECK(identity[f] == 1.0);
  for (int f = 8; f < 12; ++f) CHECK(identity[f] == 0.0);

  const FeatureVector fv = feature_vector(T("colour"), T("color"));
  CHECK(fv[kDice2] == doctest::Approx(2.0 / 3).epsilon(1e-9));
  CHECK(fv[kLcsr] == doctest::Approx(5.0 / 6).epsilon(1e-9));

  // Fully disjoint equal-length pair: set/prefix/LCSR similarities are 0 and
  // NED is 1. BISIM/TRISIM keep the boundary-padding contribution of the
  // n-gram construction (matching ngram_sim("a","b",2) = 0.5 above).
  const FeatureVector disjoint = feature_vector(T("ab"), T("xy"));
  CHECK(disjoint[kDice2] == 0.0);
  CHECK(disjoint[kDice3] == 0.0);
  CHECK(disjoint[kXDice] == 0.0);
  CHECK(disjoint[kXXDice] == 0.0);
  CHECK(disjoint[kPrefix] == 0.0);
  CHECK(disjoint[kLcsr] == 0.0);
  CHECK(disjoint[kNed] == 1.0);
  CHECK(disjoint[kBiSim] == doctest::Approx(0.25));
  CHECK(disjoint[kTriSim] == doctest::Approx(0.5));
}

TEST_CASE("golden feature fixture: engine and oracle agree with frozen values") {
  const std::string content = read_file(std::string(DIALEX_TEST_DATA_DIR) + "/golden_features.tsv");
  std::size_t rows = 0;
  for_each_line(content, [&](std::size_t, std::string_view line) {
    const auto fields = split_tabs(line);
    REQUIRE(fields.size() == 14);
    const std::string german(fields[0]);
    const std::string dialect(fields[1]);
    const FeatureVector engine = feature_vector(Term(german), Term(dialect));
    const auto reference = oracle::features(german, dialect);
    for (int f = 0; f < kFeatureCount; ++f) {
      const double frozen = std::stod(std::string(fields[2 + f]));
      CHECK(std::abs(engine[f] - frozen) <= 1e-9);
      CHECK(std::abs(reference[f] - frozen) <= 1e-9);
    }
    ++rows;
  });
  CHECK(rows >= 20);
}

TEST_CASE("fuzz: range, symmetry, identity, dominance") {
  SplitRng rng(42, 0);
  for (int i = 0; i < 2000; ++i) {
    const Term x(random_term(rng));
    const Term y(random_term(rng));
    const FeatureVector fv = feature_vector(x, y);
    const FeatureVector rev = feature_vector(y, x);
    for (int f = 0; f < kFeatureCount; ++f) {
      CHECK(fv[f] >= 0.0);
      CHECK(fv[f] <= 1.0);
      CHECK(fv[f] == doctest::Approx(rev[f]).epsilon(1e-12));
    }
    CHECK(fv[kLcsr] >= fv[kPrefix]);

    const FeatureVector self = feature_vector(x, x);
    for (int f = 0; f < 8; ++f) CHECK(self[f] == 1.0);
    for (int f = 8; f < 12; ++f) CHECK(self[f] == 0.0);
  }
}

TEST_CASE("levenshtein metric axioms, exhaustive over 3-letter alphabet up to length 4") {
  std::vector<std::u32string> words{U""};
  const std::u32string alphabet = U"abc";
  std::vector<std::u32string> frontier{U""};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::u32string> next;
    for (const auto& w : frontier) {
      for (const char32_t c : alphabet) {
        next.push_back(w + c);
      }
    }
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  REQUIRE(words.size() == 121);

  std::vector<std::vector<int>> d(words.size(), std::vector<int>(words.size()));
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      d[i][j] = levenshtein(words[i], words[j]);
    }
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      CHECK(d[i][j] >= 0);
      CHECK((d[i][j] == 0) == (words[i] == words[j]));
      CHECK(d[i][j] == d[j][i]);
    }
  }
  bool triangle_ok = true;
  for (std::size_t i = 0; i < words.size() && triangle_ok; ++i) {
    for (std::size_t j = 0; j < words.size() && triangle_ok; ++j) {
      for (std::size_t l = 0; l < words.size(); ++l) {
        if (d[i][l] > d[i][j] + d[j][l]) {
          triangle_ok = false;
          break;
        }
      }
    }
  }
  CHECK(triangle_ok);
}

TEST_CASE("DP matches exponential recursion") {
  // exhaustive over {a,b} up to length 4
  std::vector<std::u32string> words{U""};
  std::vector<std::u32string> frontier{U""};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::u32string> next;
    for (const auto& w : frontier) {
      next.push_back(w + U'a');
      next.push_back(w + U'b');
    }
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  for (const auto& a : words) {
    for (const auto& b : words) {
      CHECK(levenshtein(a, b) == oracle::levenshtein_exponential(a, b));
    }
  }

  // random 3-letter pairs up to length 6
  SplitRng rng(7, 0);
  const std::u32string alphabet = U"abc";
  for (int i = 0; i < 300; ++i) {
    std::u32string a, b;
    const std::size_t la = rng.below(7), lb = rng.below(7);
    for (std::size_t j = 0; j < la; ++j) a.push_back(alphabet[rng.below(3)]);
    for (std::size_t j = 0; j < lb; ++j) b.push_back(alphabet[rng.below(3)]);
    CHECK(levenshtein(a, b) == oracle::levenshtein_exponential(a, b));
    if (!a.empty() && !b.empty()) {
      const Term ta(encode_utf8(a)), tb(encode_utf8(b));
      const double expected =
          double(oracle::lcs_exponential(a, b)) / double(std::max(a.size(), b.size()));
      CHECK(lcsr(ta, tb) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}
