// SPDX-License-Identifier: Apache-2.0
#include "trendkit/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "trendkit/errors.hpp"
#include "trendkit/rng.hpp"

namespace trendkit {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<DocType> map_simple_doc_type(const std::string& lower) {
  static const std::unordered_map<std::string, DocType> kMap = {
      {"article", DocType::Article},
      {"proceedings paper", DocType::ProceedingsPaper},
      {"proceeding paper", DocType::ProceedingsPaper},
      {"proceedingspaper", DocType::ProceedingsPaper},
      {"proceedings_paper", DocType::ProceedingsPaper},
      {"review", DocType::Review},
      {"book chapter", DocType::BookChapter},
      {"bookchapter", DocType::BookChapter},
      {"book_chapter", DocType::BookChapter},
      {"letter", DocType::Letter},
      {"editorial", DocType::Editorial},
      {"editorial material", DocType::Editorial},
      {"editorialmaterial", DocType::Editorial},
      {"other", DocType::Other},
  };
  auto it = kMap.find(lower);
  if (it == kMap.end()) return std::nullopt;
  return it->second;
}

}  // namespace

DocType parse_doc_type(std::string_view s) {
  const std::string lower = trim(to_lower(s));
  if (auto t = map_simple_doc_type(lower)) return *t;
  // Compound WOS values ("Article; Early Access"): first mappable part wins.
  std::size_t pos = 0;
  while (pos <= lower.size()) {
    const std::size_t semi = lower.find(';', pos);
    const std::string part =
        trim(lower.substr(pos, semi == std::string::npos ? std::string::npos
                                                         : semi - pos));
    if (auto t = map_simple_doc_type(part); t && *t != DocType::Other)
      return *t;
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  return DocType::Other;
}

std::string_view to_string(DocType t) {
  switch (t) {
    case DocType::Article:
      return "Article";
    case DocType::ProceedingsPaper:
      return "ProceedingsPaper";
    case DocType::Review:
      return "Review";
    case DocType::BookChapter:
      return "BookChapter";
    case DocType::Letter:
      return "Letter";
    case DocType::Editorial:
      return "Editorial";
    case DocType::Other:
      return "Other";
  }
  return "Other";
}

std::optional<int> year_of_date(std::string_view date) {
  for (std::size_t i = 0; i + 4 <= date.size(); ++i) {
    if (i > 0 && std::isdigit(static_cast<unsigned char>(date[i - 1])))
      continue;
    bool four = true;
    for (std::size_t j = 0; j < 4; ++j) {
      if (!std::isdigit(static_cast<unsigned char>(date[i + j]))) {
        four = false;
        break;
      }
    }
    if (!four) continue;
    if (i + 4 < date.size() &&
        std::isdigit(static_cast<unsigned char>(date[i + 4])))
      continue;
    const int year = (date[i] - '0') * 1000 + (date[i + 1] - '0') * 100 +
                     (date[i + 2] - '0') * 10 + (date[i + 3] - '0');
    if (year >= 1900 && year <= 2100) return year;
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> split_multi_value(std::string_view cell) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= cell.size()) {
    const std::size_t semi = cell.find(';', pos);
    const std::string item =
        trim(cell.substr(pos, semi == std::string_view::npos
                                  ? std::string_view::npos
                                  : semi - pos));
    if (!item.empty()) out.push_back(item);
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return out;
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      cells.emplace_back(line.substr(pos));
      break;
    }
    cells.emplace_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return cells;
}

std::optional<int> parse_year_cell(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  int year = 0;
  try {
    std::size_t used = 0;
    year = std::stoi(cell, &used);
    if (used != cell.size()) return std::nullopt;
  } catch (...) {
    return std::nullopt;
  }
  if (year < 1900 || year > 2100) return std::nullopt;
  return year;
}

std::string content_hash_id(const BibRecord& rec) {
  std::string key = rec.title.value_or("");
  key.push_back('\x1f');
  key += rec.pub_year ? std::to_string(*rec.pub_year) : "";
  char buf[24];
  std::snprintf(buf, sizeof(buf), "h:%016llx",
                static_cast<unsigned long long>(SeededRng::fnv1a64(key)));
  return buf;
}

ParseResult parse_wos(std::istream& in) {
  ParseResult result;
  std::string line;
  if (!std::getline(in, line)) {
    throw UnsupportedHeaderError("empty input: no header line");
  }
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
      static_cast<unsigned char>(line[1]) == 0xBB &&
      static_cast<unsigned char>(line[2]) == 0xBF) {
    line.erase(0, 3);
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header = split_tabs(line);
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[trim(header[i])] = i;
  for (const char* tag : {"UT", "DT", "TI", "AB", "DE", "ID", "WC", "PY", "EA"}) {
    if (!col.count(tag)) {
      throw UnsupportedHeaderError(std::string("required field tag missing "
                                               "from header: ") + tag);
    }
  }

  std::unordered_set<std::string> seen_ids;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_tabs(line);
    if (cells.size() > header.size()) {
      result.skipped.push_back(
          {line_no, "stray tabs: " + std::to_string(cells.size()) +
                        " cells for " + std::to_string(header.size()) +
                        " columns"});
      continue;
    }
    const auto cell = [&](const char* tag) -> std::string {
      const auto it = col.find(tag);
      if (it == col.end() || it->second >= cells.size()) return "";
      return trim(cells[it->second]);
    };

    BibRecord rec;
    rec.doc_type = parse_doc_type(cell("DT"));
    if (const std::string v = cell("TI"); !v.empty()) rec.title = v;
    if (const std::string v = cell("AB"); !v.empty()) rec.abstract = v;
    if (auto vs = split_multi_value(cell("DE")); !vs.empty())
      rec.author_keywords = std::move(vs);
    if (auto vs = split_multi_value(cell("ID")); !vs.empty())
      rec.keywords_plus = std::move(vs);
    if (auto vs = split_multi_value(cell("WC")); !vs.empty())
      rec.categories = std::move(vs);
    rec.pub_year = parse_year_cell(cell("PY"));
    if (const std::string v = cell("EA"); !v.empty())
      rec.early_access_date = v;

    rec.id = cell("UT");
    if (rec.id.empty()) rec.id = cell("DI");
    if (rec.id.empty()) rec.id = content_hash_id(rec);

    if (!seen_ids.insert(rec.id).second) {
      result.skipped.push_back({line_no, "duplicate id: " + rec.id});
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

std::optional<std::vector<std::string>> json_string_array(
    const nlohmann::json& obj, const char* key, bool& bad) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) {
    bad = true;
    return std::nullopt;
  }
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) {
      bad = true;
      return std::nullopt;
    }
    out.push_back(v.get<std::string>());
  }
  if (out.empty()) return std::nullopt;
  return out;
}

ParseResult parse_jsonl(std::istream& in) {
  ParseResult result;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      result.skipped.push_back({line_no, "invalid json"});
      continue;
    }
    if (!obj.is_object()) {
      result.skipped.push_back({line_no, "not a json object"});
      continue;
    }
    BibRecord rec;
    if (const auto it = obj.find("id"); it != obj.end() && it->is_string())
      rec.id = it->get<std::string>();
    if (rec.id.empty()) {
      result.skipped.push_back({line_no, "missing id"});
      continue;
    }
    bool bad = false;
    if (const auto it = obj.find("doc_type"); it != obj.end()) {
      if (it->is_string())
        rec.doc_type = parse_doc_type(it->get<std::string>());
      else
        bad = true;
    }
    const auto opt_string = [&](const char* key) -> std::optional<std::string> {
      const auto it = obj.find(key);
      if (it == obj.end() || it->is_null()) return std::nullopt;
      if (!it->is_string()) {
        bad = true;
        return std::nullopt;
      }
      std::string s = it->get<std::string>();
      if (s.empty()) return std::nullopt;
      return s;
    };
    rec.title = opt_string("title");
    rec.abstract = opt_string("abstract");
    rec.author_keywords = json_string_array(obj, "author_keywords", bad);
    rec.keywords_plus = json_string_array(obj, "keywords_plus", bad);
    rec.categories = json_string_array(obj, "categories", bad);
    if (const auto it = obj.find("pub_year"); it != obj.end() && !it->is_null()) {
      if (it->is_number_integer()) {
        const int y = it->get<int>();
        if (y >= 1900 && y <= 2100) rec.pub_year = y;
      } else {
        bad = true;
      }
    }
    rec.early_access_date = opt_string("early_access_date");
    if (bad) {
      result.skipped.push_back({line_no, "field with unexpected type"});
      continue;
    }
    if (!seen_ids.insert(rec.id).second) {
      result.skipped.push_back({line_no, "duplicate id: " + rec.id});
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace

ParseResult parse_export(std::istream& in, ExportFormat format) {
  return format == ExportFormat::WosTabDelimited ? parse_wos(in)
                                                 : parse_jsonl(in);
}

ParseResult parse_export(std::string_view bytes, ExportFormat format) {
  std::istringstream in{std::string(bytes)};
  return parse_export(in, format);
}

std::vector<BibRecord> filter_types(const std::vector<BibRecord>& records) {
  std::vector<BibRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (r.doc_type == DocType::Article ||
        r.doc_type == DocType::ProceedingsPaper) {
      out.push_back(r);
    }
  }
  return out;
}

RepairResult repair(const std::vector<BibRecord>& records) {
  RepairResult result;
  result.summary.input = static_cast<int>(records.size());
  for (const auto& rec : records) {
    CleanRecord clean;
    clean.id = rec.id;
    clean.doc_type = rec.doc_type;
    clean.title = trim(rec.title.value_or(""));
    clean.abstract = trim(rec.abstract.value_or(""));
    if (rec.categories) clean.categories = *rec.categories;

    // (a) case-folded union, author keywords first, first occurrence wins
    std::unordered_set<std::string> seen;
    const auto add_keywords = [&](const std::optional<std::vector<std::string>>& src) {
      if (!src) return;
      for (const auto& kw : *src) {
        std::string folded = trim(to_lower(kw));
        if (folded.empty() || !seen.insert(folded).second) continue;
        clean.keywords.push_back(std::move(folded));
      }
    };
    add_keywords(rec.author_keywords);
    add_keywords(rec.keywords_plus);

    // (b) fill pub_year from the early access date
    std::optional<int> year = rec.pub_year;
    if (!year && rec.early_access_date) {
      year = year_of_date(*rec.early_access_date);
      if (year) ++result.summary.years_filled_from_early_access;
    }

    // (c) drop what still cannot be completed
    bool ok = true;
    const auto require = [&](bool present, const char* field) {
      if (!present) {
        ++result.summary.missing_counts[field];
        ok = false;
      }
    };
    require(!clean.title.empty(), "title");
    require(!clean.abstract.empty(), "abstract");
    require(!clean.keywords.empty(), "keywords");
    require(!clean.categories.empty(), "categories");
    require(year.has_value(), "pub_year");
    if (!ok) {
      ++result.summary.dropped;
      continue;
    }
    clean.pub_year = *year;
    result.records.push_back(std::move(clean));
  }
  result.summary.survived = static_cast<int>(result.records.size());
  return result;
}

DedupeResult dedupe(const std::vector<CleanRecord>& new_records,
                    const std::unordered_set<std::string>& existing_ids) {
  DedupeResult result;
  std::unordered_set<std::string> seen;
  for (const auto& rec : new_records) {
    if (existing_ids.count(rec.id)) {
      ++result.removed_existing;
      continue;
    }
    if (!seen.insert(rec.id).second) {
      ++result.removed_intra;
      continue;
    }
    result.records.push_back(rec);
  }
  return result;
}

std::string to_json_line(const BibRecord& rec) {
  nlohmann::ordered_json obj;
  obj["id"] = rec.id;
  obj["doc_type"] = to_string(rec.doc_type);
  if (rec.title) obj["title"] = *rec.title;
  if (rec.abstract) obj["abstract"] = *rec.abstract;
  if (rec.author_keywords) obj["author_keywords"] = *rec.author_keywords;
  if (rec.keywords_plus) obj["keywords_plus"] = *rec.keywords_plus;
  if (rec.categories) obj["categories"] = *rec.categories;
  if (rec.pub_year) obj["pub_year"] = *rec.pub_year;
  if (rec.early_access_date) obj["early_access_date"] = *rec.early_access_date;
  return obj.dump();
}

std::string to_json_line(const CleanRecord& rec) {
  nlohmann::ordered_json obj;
  obj["id"] = rec.id;
  obj["doc_type"] = to_string(rec.doc_type);
  obj["title"] = rec.title;
  obj["abstract"] = rec.abstract;
  obj["keywords"] = rec.keywords;
  obj["categories"] = rec.categories;
  obj["pub_year"] = rec.pub_year;
  return obj.dump();
}

void write_bib_jsonl(std::ostream& out, const std::vector<BibRecord>& recs) {
  for (const auto& r : recs) out << to_json_line(r) << '\n';
}

void write_clean_jsonl(std::ostream& out,
                       const std::vector<CleanRecord>& recs) {
  for (const auto& r : recs) out << to_json_line(r) << '\n';
}

std::vector<CleanRecord> read_clean_jsonl(std::istream& in) {
  std::vector<CleanRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error("corpus line " + std::to_string(line_no) +
                  ": invalid json: " + e.what());
    }
    CleanRecord rec;
    try {
      rec.id = obj.at("id").get<std::string>();
      rec.doc_type = parse_doc_type(obj.at("doc_type").get<std::string>());
      rec.title = obj.at("title").get<std::string>();
      rec.abstract = obj.at("abstract").get<std::string>();
      rec.keywords = obj.at("keywords").get<std::vector<std::string>>();
      rec.categories = obj.at("categories").get<std::vector<std::string>>();
      rec.pub_year = obj.at("pub_year").get<int>();
    } catch (const nlohmann::json::exception& e) {
      throw Error("corpus line " + std::to_string(line_no) +
                  ": missing or mistyped field: " + e.what());
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<CleanRecord> read_clean_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file: " + path);
  return read_clean_jsonl(in);
}

void write_clean_jsonl_file(const std::string& path,
                            const std::vector<CleanRecord>& recs) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write corpus file: " + path);
  write_clean_jsonl(out, recs);
}

}  // namespace trendkit
