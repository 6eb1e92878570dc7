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

#include <string>
#include <string_view>

#include "dialex/text.hpp"

namespace dialex {

/// Cologne phonetics (Koelner Phonetik) digit encoding of German words.
///
/// Rule table (applied to the case-folded, letter-only form of the input;
/// characters outside this alphabet are skipped and do not break adjacency):
///
///   A, E, I, J, O, U, Y, AE(Ä), OE(Ö), UE(Ü)      -> 0
///   B                                             -> 1
///   P                                             -> 1   (-> 3 before H)
///   D, T                                          -> 2   (-> 8 before C, S, Z)
///   F, V, W                                       -> 3
///   G, K, Q                                       -> 4
///   C  word-initially before A,H,K,L,O,Q,R,U,X    -> 4
///   C  non-initially before A,H,K,O,Q,U,X
///      unless the previous letter is S or Z       -> 4
///   C  otherwise                                  -> 8
///   X                                             -> 48  (-> 8 after C, K, Q)
///   L                                             -> 5
///   M, N                                          -> 6
///   R                                             -> 7
///   S, Z, ß                                       -> 8
///   H                                             -> no code
///
/// The raw digit string is post-processed: adjacent duplicate digits are
/// collapsed, every non-leading '0' is removed, and duplicates created by the
/// removal are collapsed again so the result never contains two adjacent
/// equal digits. A string with no encodable letter yields the empty code.
std::string cologne_encode(std::u32string_view word);
std::string cologne_encode(const Term& word);
std::string cologne_encode(std::string_view utf8);

/// Length-normalized Levenshtein distance between the phonetic codes of two
/// terms. 0 when both codes are empty or equal, 1 when exactly one is empty.
double phonetic_dist(const Term& x, const Term& y);

}  // namespace dialex
