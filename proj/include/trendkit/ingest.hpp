// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "trendkit/bib.hpp"

namespace trendkit {

enum class ExportFormat { WosTabDelimited, JsonLines };

/// A data line that could not be turned into a record. Skipped lines are
/// collected and reported, never silently dropped.
struct SkippedLine {
  int line_no = 0;
  std::string reason;
};

struct ParseResult {
  std::vector<BibRecord> records;
  std::vector<SkippedLine> skipped;
};

/// Parses an export stream. For WosTabDelimited the first line must be a
/// tab-separated header containing at least the tags
/// UT DT TI AB DE ID WC PY EA (throws UnsupportedHeaderError otherwise).
/// Record identity: UT accession number, DOI (DI) fallback, else a content
/// hash of (title, pub_year). Duplicate ids within the batch keep the first
/// occurrence and report the rest.
ParseResult parse_export(std::istream& in, ExportFormat format);
ParseResult parse_export(std::string_view bytes, ExportFormat format);

/// Keeps exactly the records with doc_type Article or ProceedingsPaper,
/// preserving order.
std::vector<BibRecord> filter_types(const std::vector<BibRecord>& records);

struct RepairSummary {
  int input = 0;
  int survived = 0;
  int dropped = 0;
  int years_filled_from_early_access = 0;
  // Field name -> number of dropped records still missing it.
  std::map<std::string, int> missing_counts;
};

struct RepairResult {
  std::vector<CleanRecord> records;
  RepairSummary summary;
};

/// The record-repair rules:
///  (a) keywords := case-folded union of author_keywords and keywords_plus,
///      duplicates removed, first-occurrence order;
///  (b) a missing pub_year is taken from the early-access date when present;
///  (c) records still missing title, abstract, keywords, categories or
///      pub_year are dropped and counted.
RepairResult repair(const std::vector<BibRecord>& records);

struct DedupeResult {
  std::vector<CleanRecord> records;
  int removed_existing = 0;  // id was in existing_ids
  int removed_intra = 0;     // id repeated within the batch
};

/// Removes records whose id is in existing_ids, then intra-batch duplicates
/// keeping the first occurrence.
DedupeResult dedupe(const std::vector<CleanRecord>& new_records,
                    const std::unordered_set<std::string>& existing_ids);

/// Year component of a date-ish string: the first four-digit run in
/// [1900, 2100]. Handles "2021-11-03" as well as WOS's "NOV 2021".
std::optional<int> year_of_date(std::string_view date);

// JsonLines serialization. BibRecord keys: id, doc_type, title, abstract,
// author_keywords, keywords_plus, categories, pub_year, early_access_date;
// absent fields are omitted. CleanRecord keys (canonical order, lower-case):
// id, doc_type, title, abstract, keywords, categories, pub_year.
std::string to_json_line(const BibRecord& rec);
std::string to_json_line(const CleanRecord& rec);

void write_bib_jsonl(std::ostream& out, const std::vector<BibRecord>& recs);
void write_clean_jsonl(std::ostream& out, const std::vector<CleanRecord>& recs);

std::vector<CleanRecord> read_clean_jsonl(std::istream& in);
std::vector<CleanRecord> read_clean_jsonl_file(const std::string& path);
void write_clean_jsonl_file(const std::string& path,
                            const std::vector<CleanRecord>& recs);

}  // namespace trendkit
