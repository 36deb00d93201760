// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "trendkit/bib.hpp"

namespace trendkit {

enum class FeatureSetId { Set1, Set2, Set3, Set4 };

enum class RecordField { Title, Abstract, Keywords, Categories };

/// Member fields of a feature set, in concatenation order
/// (Title, Abstract, Keywords, Categories).
///   Set1 = Title + Abstract + Keywords
///   Set2 = Title + Categories
///   Set3 = Abstract + Keywords
///   Set4 = Title + Keywords
std::vector<RecordField> feature_set_members(FeatureSetId id);

std::string_view to_string(FeatureSetId id);                       // "set1".."set4"
std::optional<FeatureSetId> parse_feature_set(std::string_view s);

/// A preprocessed document: ordered lower-case stems plus the metadata the
/// trend stage needs.
struct TokenDoc {
  std::string doc_id;
  std::vector<std::string> tokens;
  int pub_year = 0;
};

/// Stopword / domain-stem / lemma tables driving the preprocessing chain.
struct PrepLists {
  std::unordered_set<std::string> stopwords;
  std::unordered_set<std::string> domain_stems;
  std::unordered_map<std::string, std::string> lemmas;

  /// Shipped defaults: the English stopword file, the irregular-form lemma
  /// map, and a domain list built from the Porter stems of the shipped
  /// common-verb lexicon plus "hydrolog".
  static const PrepLists& defaults();
};

/// One word per line, UTF-8; blank lines ignored.
std::vector<std::string> load_word_list(const std::string& path);

/// "form lemma" pairs, one per line.
std::unordered_map<std::string, std::string> load_lemma_map(
    const std::string& path);

/// Porter stems of the given verb forms, plus the "hydrolog" stem.
std::unordered_set<std::string> domain_stems_from_verbs(
    const std::vector<std::string>& verb_forms);

/// Full preprocessing chain: strip markup/URLs, lower-case, tokenize on
/// non-alphanumeric boundaries, drop short/numeric tokens and stopwords,
/// lemmatize irregular forms, Porter-stem, then drop stems that are in the
/// domain list, in the stopword list, or shorter than three characters.
std::vector<std::string> preprocess(std::string_view text,
                                    const PrepLists& lists);

/// Concatenates the set's member fields of `rec` (multi-value fields joined
/// by spaces) and preprocesses the result. Returns nullopt when no token
/// survives; the caller decides whether to drop the document.
std::optional<TokenDoc> build_doc(const CleanRecord& rec, FeatureSetId set,
                                  const PrepLists& lists);

}  // namespace trendkit
