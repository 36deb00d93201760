// SPDX-License-Identifier: Apache-2.0
#include "trendkit/porter.hpp"

#include <array>
#include <cstddef>

namespace trendkit {
namespace {

bool is_vowel_letter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// A letter is a consonant if it is not a,e,i,o,u and not a y preceded by
// a consonant. Digits count as consonants.
bool is_consonant(const std::string& w, std::size_t i) {
  const char c = w[i];
  if (is_vowel_letter(c)) return false;
  if (c == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
  return true;
}

// Porter's measure m of w[0..len): the number of VC sequences in the
// [C](VC)^m[V] decomposition.
int measure(const std::string& w, std::size_t len) {
  std::size_t i = 0;
  while (i < len && is_consonant(w, i)) ++i;
  int m = 0;
  while (i < len) {
    while (i < len && !is_consonant(w, i)) ++i;
    if (i >= len) break;
    ++m;
    while (i < len && is_consonant(w, i)) ++i;
  }
  return m;
}

bool contains_vowel(const std::string& w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    if (!is_consonant(w, i)) return true;
  return false;
}

bool ends_double_consonant(const std::string& w) {
  const std::size_t n = w.size();
  if (n < 2) return false;
  if (w[n - 1] != w[n - 2]) return false;
  return is_consonant(w, n - 1);
}

// *o: the last three letters of w[0..len) are consonant-vowel-consonant
// and the final consonant is not w, x or y.
bool ends_cvc(const std::string& w, std::size_t len) {
  if (len < 3) return false;
  if (!is_consonant(w, len - 3)) return false;
  if (is_consonant(w, len - 2)) return false;
  if (!is_consonant(w, len - 1)) return false;
  const char c = w[len - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool has_suffix(const std::string& w, std::string_view s) {
  return w.size() >= s.size() &&
         w.compare(w.size() - s.size(), s.size(), s) == 0;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Applies the longest matching rule of the table, guarded by m(stem) > min_m.
// Returns true if a suffix matched (whether or not the condition passed):
// per the original algorithm a matched-but-failed rule still ends the step.
bool apply_rules(std::string& w, const Rule* rules, std::size_t n_rules,
                 int min_m) {
  const Rule* best = nullptr;
  for (std::size_t i = 0; i < n_rules; ++i) {
    const Rule& r = rules[i];
    if (has_suffix(w, r.suffix) &&
        (best == nullptr || r.suffix.size() > best->suffix.size())) {
      best = &r;
    }
  }
  if (best == nullptr) return false;
  const std::size_t stem_len = w.size() - best->suffix.size();
  if (measure(w, stem_len) > min_m) {
    w.resize(stem_len);
    w.append(best->replacement);
  }
  return true;
}

void step_1a(std::string& w) {
  if (has_suffix(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (has_suffix(w, "ies")) {
    w.resize(w.size() - 2);
  } else if (has_suffix(w, "ss")) {
    // unchanged
  } else if (has_suffix(w, "s")) {
    w.resize(w.size() - 1);
  }
}

void step_1b(std::string& w) {
  if (has_suffix(w, "eed")) {
    if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
    return;
  }
  bool stripped = false;
  if (has_suffix(w, "ed") && contains_vowel(w, w.size() - 2)) {
    w.resize(w.size() - 2);
    stripped = true;
  } else if (has_suffix(w, "ing") && contains_vowel(w, w.size() - 3)) {
    w.resize(w.size() - 3);
    stripped = true;
  }
  if (!stripped) return;
  if (has_suffix(w, "at") || has_suffix(w, "bl") || has_suffix(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w)) {
    const char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.pop_back();
  } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
    w.push_back('e');
  }
}

void step_1c(std::string& w) {
  if (has_suffix(w, "y") && contains_vowel(w, w.size() - 1)) {
    w.back() = 'i';
  }
}

constexpr Rule kStep2[] = {
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
    {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
    {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
    {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
    {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
    {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
    {"iviti", "ive"},   {"biliti", "ble"},
};

constexpr Rule kStep3[] = {
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
    {"ical", "ic"},  {"ful", ""},   {"ness", ""},
};

constexpr Rule kStep4[] = {
    {"al", ""},    {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
    {"able", ""},  {"ible", ""}, {"ant", ""},  {"ement", ""},
    {"ment", ""},  {"ent", ""},  {"ou", ""},   {"ism", ""}, {"ate", ""},
    {"iti", ""},   {"ous", ""},  {"ive", ""},  {"ize", ""},
};

void step_4(std::string& w) {
  // "ion" needs an extra guard (*S or *T on the stem), so the longest-match
  // scan has to consider it alongside the plain deletions.
  const Rule* best = nullptr;
  for (const Rule& r : kStep4) {
    if (has_suffix(w, r.suffix) &&
        (best == nullptr || r.suffix.size() > best->suffix.size())) {
      best = &r;
    }
  }
  bool ion = has_suffix(w, "ion");
  if (ion && best != nullptr && best->suffix.size() > 3) ion = false;
  if (ion) {
    const std::size_t stem_len = w.size() - 3;
    if (stem_len > 0 && (w[stem_len - 1] == 's' || w[stem_len - 1] == 't') &&
        measure(w, stem_len) > 1) {
      w.resize(stem_len);
    }
    return;
  }
  if (best == nullptr) return;
  const std::size_t stem_len = w.size() - best->suffix.size();
  if (measure(w, stem_len) > 1) w.resize(stem_len);
}

void step_5a(std::string& w) {
  if (!has_suffix(w, "e")) return;
  const std::size_t stem_len = w.size() - 1;
  const int m = measure(w, stem_len);
  if (m > 1 || (m == 1 && !ends_cvc(w, stem_len))) {
    w.pop_back();
  }
}

void step_5b(std::string& w) {
  if (w.back() == 'l' && ends_double_consonant(w) &&
      measure(w, w.size()) > 1) {
    w.pop_back();
  }
}

}  // namespace

std::string porter_stem(std::string_view token) {
  std::string w(token);
  if (w.size() <= 2) return w;
  step_1a(w);
  step_1b(w);
  step_1c(w);
  apply_rules(w, kStep2, std::size(kStep2), 0);
  apply_rules(w, kStep3, std::size(kStep3), 0);
  step_4(w);
  step_5a(w);
  step_5b(w);
  return w;
}

}  // namespace trendkit
