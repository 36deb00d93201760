// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trendkit {

enum class DocType {
  Article,
  ProceedingsPaper,
  Review,
  BookChapter,
  Letter,
  Editorial,
  Other,
};

/// Case-insensitive mapping of export document-type strings. Accepts both
/// "Proceedings Paper" and "Proceeding Paper", underscored forms, and
/// compound WOS values like "Article; Early Access" (first mappable part
/// wins). Unknown strings map to Other.
DocType parse_doc_type(std::string_view s);
std::string_view to_string(DocType t);

/// One bibliographic item as parsed from an export file. Fields the export
/// left empty are absent rather than defaulted.
struct BibRecord {
  std::string id;  // accession number, DOI, or content hash; never empty
  DocType doc_type = DocType::Other;
  std::optional<std::string> title;
  std::optional<std::string> abstract;
  std::optional<std::vector<std::string>> author_keywords;
  std::optional<std::vector<std::string>> keywords_plus;
  std::optional<std::vector<std::string>> categories;
  std::optional<int> pub_year;
  std::optional<std::string> early_access_date;

  bool operator==(const BibRecord&) const = default;
};

/// A record that survived type filtering and repair: every field present,
/// doc_type restricted to Article / ProceedingsPaper.
struct CleanRecord {
  std::string id;
  DocType doc_type = DocType::Article;
  std::string title;
  std::string abstract;
  std::vector<std::string> keywords;
  std::vector<std::string> categories;
  int pub_year = 0;

  bool operator==(const CleanRecord&) const = default;
};

}  // namespace trendkit
