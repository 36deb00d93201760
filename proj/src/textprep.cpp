// SPDX-License-Identifier: Apache-2.0
#include "trendkit/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "trendkit/errors.hpp"
#include "trendkit/porter.hpp"

namespace trendkit {

std::vector<RecordField> feature_set_members(FeatureSetId id) {
  using F = RecordField;
  switch (id) {
    case FeatureSetId::Set1:
      return {F::Title, F::Abstract, F::Keywords};
    case FeatureSetId::Set2:
      return {F::Title, F::Categories};
    case FeatureSetId::Set3:
      return {F::Abstract, F::Keywords};
    case FeatureSetId::Set4:
      return {F::Title, F::Keywords};
  }
  return {};
}

std::string_view to_string(FeatureSetId id) {
  switch (id) {
    case FeatureSetId::Set1:
      return "set1";
    case FeatureSetId::Set2:
      return "set2";
    case FeatureSetId::Set3:
      return "set3";
    case FeatureSetId::Set4:
      return "set4";
  }
  return "set?";
}

std::optional<FeatureSetId> parse_feature_set(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "set1" || lower == "1") return FeatureSetId::Set1;
  if (lower == "set2" || lower == "2") return FeatureSetId::Set2;
  if (lower == "set3" || lower == "3") return FeatureSetId::Set3;
  if (lower == "set4" || lower == "4") return FeatureSetId::Set4;
  return std::nullopt;
}

std::vector<std::string> load_word_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open word list: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) words.push_back(line);
  }
  return words;
}

std::unordered_map<std::string, std::string> load_lemma_map(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lemma map: " + path);
  std::unordered_map<std::string, std::string> map;
  std::string form, lemma;
  while (in >> form >> lemma) map[form] = lemma;
  return map;
}

std::unordered_set<std::string> domain_stems_from_verbs(
    const std::vector<std::string>& verb_forms) {
  std::unordered_set<std::string> stems;
  // "hydrolog" covers hydrologic/hydrological; "hydrologi" is the Porter
  // stem of "hydrology" itself.
  stems.insert("hydrolog");
  stems.insert("hydrologi");
  for (const auto& v : verb_forms) stems.insert(porter_stem(v));
  return stems;
}

const PrepLists& PrepLists::defaults() {
  static const PrepLists lists = [] {
    const std::string dir = TRENDKIT_DATA_DIR;
    PrepLists l;
    for (auto& w : load_word_list(dir + "/stopwords_en.txt"))
      l.stopwords.insert(std::move(w));
    l.domain_stems = domain_stems_from_verbs(load_word_list(dir + "/verbs_en.txt"));
    l.lemmas = load_lemma_map(dir + "/lemmas_en.txt");
    return l;
  }();
  return lists;
}

namespace {

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i])
      return false;
  }
  return true;
}

// Removes <...> spans and whitespace-delimited chunks that look like URLs.
// Anything else passes through; the tokenizer treats leftover punctuation
// as separators anyway.
std::string strip_markup_and_urls(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '<') {
      const std::size_t close = text.find('>', i + 1);
      if (close != std::string_view::npos && close - i <= 256) {
        i = close + 1;
        out.push_back(' ');
        continue;
      }
    }
    if (!std::isspace(static_cast<unsigned char>(c)) &&
        (i == 0 || std::isspace(static_cast<unsigned char>(text[i - 1])))) {
      const std::string_view rest = text.substr(i);
      if (starts_with_ci(rest, "http://") || starts_with_ci(rest, "https://") ||
          starts_with_ci(rest, "www.")) {
        while (i < text.size() &&
               !std::isspace(static_cast<unsigned char>(text[i])))
          ++i;
        out.push_back(' ');
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

bool is_lower_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::vector<std::string> preprocess(std::string_view text,
                                    const PrepLists& lists) {
  std::string cleaned = strip_markup_and_urls(text);
  for (char& c : cleaned)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  std::vector<std::string> stems;
  std::size_t i = 0;
  const std::size_t n = cleaned.size();
  while (i < n) {
    while (i < n && !is_lower_alnum(cleaned[i])) ++i;
    std::size_t start = i;
    while (i < n && is_lower_alnum(cleaned[i])) ++i;
    if (i == start) break;
    std::string_view tok(cleaned.data() + start, i - start);
    // Tokens must start with a letter; purely numeric runs fail this too.
    if (tok.size() < 3 || tok[0] < 'a' || all_digits(tok)) continue;
    std::string token(tok);
    if (lists.stopwords.count(token)) continue;
    if (auto it = lists.lemmas.find(token); it != lists.lemmas.end())
      token = it->second;
    std::string stem = porter_stem(token);
    if (stem.size() < 3) continue;
    if (lists.stopwords.count(stem)) continue;
    if (lists.domain_stems.count(stem)) continue;
    stems.push_back(std::move(stem));
  }
  return stems;
}

std::optional<TokenDoc> build_doc(const CleanRecord& rec, FeatureSetId set,
                                  const PrepLists& lists) {
  std::string text;
  for (RecordField f : feature_set_members(set)) {
    const auto append_joined = [&text](const std::vector<std::string>& vals) {
      for (const auto& v : vals) {
        text += v;
        text += ' ';
      }
    };
    switch (f) {
      case RecordField::Title:
        text += rec.title;
        text += ' ';
        break;
      case RecordField::Abstract:
        text += rec.abstract;
        text += ' ';
        break;
      case RecordField::Keywords:
        append_joined(rec.keywords);
        break;
      case RecordField::Categories:
        append_joined(rec.categories);
        break;
    }
  }
  TokenDoc doc{rec.id, preprocess(text, lists), rec.pub_year};
  if (doc.tokens.empty()) return std::nullopt;
  return doc;
}

}  // namespace trendkit
