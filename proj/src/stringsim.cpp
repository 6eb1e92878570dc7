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

#include "dialex/stringsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dialex/phonetics.hpp"

namespace dialex {

namespace {

// Grams of order <= 3 are packed into one uint64 (21 bits per codepoint) so
// set operations run on flat sorted vectors instead of heap-allocated strings.
constexpr int kCpBits = 21;
constexpr char32_t kPad = U'^';
constexpr char32_t kGap = U'_';

uint64_t pack2(char32_t a, char32_t b) { return (uint64_t(a) << kCpBits) | uint64_t(b); }

uint64_t pack3(char32_t a, char32_t b, char32_t c) {
  return (uint64_t(a) << (2 * kCpBits)) | (uint64_t(b) << kCpBits) | uint64_t(c);
}

std::vector<uint64_t> packed_grams(std::u32string_view s, GramKind kind) {
  std::vector<uint64_t> out;
  const std::size_t len = s.size();
  switch (kind) {
    case GramKind::bigram:
      if (len >= 2) {
        out.reserve(len - 1);
        for (std::size_t i = 0; i + 2 <= len; ++i) out.push_back(pack2(s[i], s[i + 1]));
      }
      break;
    case GramKind::trigram:
      if (len >= 3) {
        out.reserve(len - 2);
        for (std::size_t i = 0; i + 3 <= len; ++i) out.push_back(pack3(s[i], s[i + 1], s[i + 2]));
      }
      break;
    case GramKind::xtrigram:
      if (len >= 3) {
        out.reserve(len - 2);
        for (std::size_t i = 0; i + 3 <= len; ++i) out.push_back(pack3(s[i], kGap, s[i + 2]));
      }
      break;
  }
  return out;
}

std::vector<uint64_t> to_set(std::vector<uint64_t> grams) {
  std::sort(grams.begin(), grams.end());
  grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
  return grams;
}

std::size_t intersection_size(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  std::size_t count = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++count, ++i, ++j;
    }
  }
  return count;
}

// Padded token i of the BI-SIM/TRI-SIM construction: the window ending at
// character i, with '^' filling positions before the word start. A word of
// length L yields exactly L tokens.
uint64_t padded_token(std::u32string_view s, std::size_t i, int n) {
  char32_t c0 = (n == 3) ? (i >= 2 ? s[i - 2] : kPad) : 0;
  char32_t c1 = i >= 1 ? s[i - 1] : kPad;
  char32_t c2 = s[i];
  return n == 3 ? pack3(c0, c1, c2) : pack2(c1, c2);
}

double token_identity(uint64_t a, uint64_t b, int n) {
  constexpr uint64_t mask = (uint64_t(1) << kCpBits) - 1;
  int eq = 0;
  for (int p = 0; p < n; ++p) {
    if (((a >> (p * kCpBits)) & mask) == ((b >> (p * kCpBits)) & mask)) ++eq;
  }
  return double(eq) / n;
}

}  // namespace

NgramSeq ngrams(const Term& s, int n) {
  if (n < 2) throw std::invalid_argument("ngrams: order must be >= 2");
  NgramSeq seq;
  seq.order = n;
  const std::u32string& cps = s.codepoints();
  if (cps.size() >= static_cast<std::size_t>(n)) {
    seq.tokens.reserve(cps.size() - n + 1);
    for (std::size_t i = 0; i + n <= cps.size(); ++i) {
      seq.tokens.emplace_back(cps.substr(i, n));
    }
  }
  return seq;
}

NgramSeq xgrams(const Term& s) {
  NgramSeq seq = ngrams(s, 3);
  for (auto& tok : seq.tokens) tok[1] = kGap;
  return seq;
}

double dice(const Term& x, const Term& y, GramKind kind) {
  if (x == y) return 1.0;
  const auto gx = to_set(packed_grams(x.codepoints(), kind));
  const auto gy = to_set(packed_grams(y.codepoints(), kind));
  if (gx.empty() || gy.empty()) return 0.0;
  return 2.0 * double(intersection_size(gx, gy)) / double(gx.size() + gy.size());
}

double xxdice(const Term& x, const Term& y) {
  if (x == y) return 1.0;
  const auto& cx = x.codepoints();
  const auto& cy = y.codepoints();
  if (cx.size() < 2 || cy.size() < 2) return 0.0;

  // Last-occurrence start index of each bigram type.
  auto last_pos = [](std::u32string_view s) {
    std::vector<std::pair<uint64_t, std::size_t>> v;
    v.reserve(s.size() - 1);
    for (std::size_t i = 0; i + 2 <= s.size(); ++i) v.emplace_back(pack2(s[i], s[i + 1]), i);
    std::stable_sort(v.begin(), v.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    // keep the largest position per gram
    std::vector<std::pair<uint64_t, std::size_t>> out;
    for (const auto& [g, p] : v) {
      if (!out.empty() && out.back().first == g) {
        out.back().second = std::max(out.back().second, p);
      } else {
        out.emplace_back(g, p);
      }
    }
    return out;
  };

  const auto px = last_pos(cx);
  const auto py = last_pos(cy);
  double weight_sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < px.size() && j < py.size()) {
    if (px[i].first < py[j].first) {
      ++i;
    } else if (py[j].first < px[i].first) {
      ++j;
    } else {
      const double d = double(px[i].second) - double(py[j].second);
      weight_sum += 1.0 / (1.0 + d * d);
      ++i, ++j;
    }
  }
  if (weight_sum == 0.0) return 0.0;
  const double denom = double((cx.size() - 1) + (cy.size() - 1));
  return 2.0 * weight_sum / denom;
}

double prefix_sim(const Term& x, const Term& y) {
  if (x == y) return 1.0;
  const auto& cx = x.codepoints();
  const auto& cy = y.codepoints();
  std::size_t common = 0;
  while (common < cx.size() && common < cy.size() && cx[common] == cy[common]) ++common;
  return double(common) / double(std::max(cx.size(), cy.size()));
}

namespace {

std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

double lcsr(const Term& x, const Term& y) {
  if (x == y) return 1.0;
  const auto& cx = x.codepoints();
  const auto& cy = y.codepoints();
  return double(lcs_length(cx, cy)) / double(std::max(cx.size(), cy.size()));
}

double ngram_sim(const Term& x, const Term& y, int n) {
  if (n != 2 && n != 3) throw std::invalid_argument("ngram_sim: n must be 2 or 3");
  if (x == y) return 1.0;
  const auto& a = x.codepoints();
  const auto& b = y.codepoints();
  if (a.empty() || b.empty()) return 0.0;

  std::vector<uint64_t> ta(a.size()), tb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ta[i] = padded_token(a, i, n);
  for (std::size_t j = 0; j < b.size(); ++j) tb[j] = padded_token(b, j, n);

  std::vector<double> prev(tb.size() + 1, 0.0), cur(tb.size() + 1, 0.0);
  for (std::size_t i = 1; i <= ta.size(); ++i) {
    for (std::size_t j = 1; j <= tb.size(); ++j) {
      const double match = prev[j - 1] + token_identity(ta[i - 1], tb[j - 1], n);
      cur[j] = std::max({match, prev[j], cur[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[tb.size()] / double(std::max(a.size(), b.size()));
}

int levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = int(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = int(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

int levenshtein(const Term& x, const Term& y) {
  return levenshtein(x.codepoints(), y.codepoints());
}

int levenshtein_bounded(std::u32string_view a, std::u32string_view b, int limit) {
  if (a.size() > b.size()) std::swap(a, b);
  const int m = int(a.size()), n = int(b.size());
  limit = std::min(limit, n);  // distance never exceeds the longer length
  if (limit < 0) return 0;
  if (n - m > limit) return limit + 1;

  const int big = limit + 1;
  std::vector<int> prev(n + 1, big), cur(n + 1, big);
  for (int j = 0; j <= limit; ++j) prev[j] = j;
  for (int i = 1; i <= m; ++i) {
    std::fill(cur.begin(), cur.end(), big);
    const int lo = std::max(1, i - limit);
    const int hi = std::min(n, i + limit);
    if (lo == 1) cur[0] = std::min(i, big);
    int row_min = cur[0];
    for (int j = lo; j <= hi; ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({big, sub, prev[j] + 1, cur[j - 1] + 1});
      row_min = std::min(row_min, cur[j]);
    }
    if (row_min >= big) return big;
    std::swap(prev, cur);
  }
  return prev[n];
}

double ned(const Term& x, const Term& y) {
  const std::size_t longest = std::max(x.length(), y.length());
  if (longest == 0) return 0.0;
  return double(levenshtein(x, y)) / double(longest);
}

double ngram_dist(const Term& x, const Term& y, int n) {
  if (n != 2 && n != 3) throw std::invalid_argument("ngram_dist: n must be 2 or 3");
  if (x == y) return 0.0;
  const auto& a = x.codepoints();
  const auto& b = y.codepoints();
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  if (a.empty() || b.empty()) return 1.0;

  std::vector<uint64_t> ta(a.size()), tb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ta[i] = padded_token(a, i, n);
  for (std::size_t j = 0; j < b.size(); ++j) tb[j] = padded_token(b, j, n);

  std::vector<double> prev(tb.size() + 1), cur(tb.size() + 1);
  for (std::size_t j = 0; j <= tb.size(); ++j) prev[j] = double(j);
  for (std::size_t i = 1; i <= ta.size(); ++i) {
    cur[0] = double(i);
    for (std::size_t j = 1; j <= tb.size(); ++j) {
      const double sub = prev[j - 1] + 1.0 - token_identity(ta[i - 1], tb[j - 1], n);
      cur[j] = std::min({sub, prev[j] + 1.0, cur[j - 1] + 1.0});
    }
    std::swap(prev, cur);
  }
  return prev[tb.size()] / double(longest);
}

FeatureVector feature_vector(const Term& x, const Term& y) {
  FeatureVector fv;
  fv[kDice2] = dice(x, y, GramKind::bigram);
  fv[kDice3] = dice(x, y, GramKind::trigram);
  fv[kXDice] = dice(x, y, GramKind::xtrigram);
  fv[kXXDice] = xxdice(x, y);
  fv[kPrefix] = prefix_sim(x, y);
  fv[kLcsr] = lcsr(x, y);
  fv[kBiSim] = ngram_sim(x, y, 2);
  fv[kTriSim] = ngram_sim(x, y, 3);
  fv[kNed] = ned(x, y);
  fv[kBiDist] = ngram_dist(x, y, 2);
  fv[kTriDist] = ngram_dist(x, y, 3);
  fv[kPhonDist] = phonetic_dist(x, y);
  return fv;
}

}  // namespace dialex
