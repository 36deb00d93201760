// SPDX-License-Identifier: Apache-2.0
#include "trendkit/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "trendkit/errors.hpp"

namespace trendkit {

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string format_cv(double cv) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", cv);
  return buf;
}

}  // namespace

std::string coherence_csv(const std::vector<CoherenceCell>& cells) {
  std::ostringstream out;
  out << "set,model,k,cv,error\n";
  for (const auto& cell : cells) {
    out << to_string(cell.set) << ',' << to_string(cell.model) << ',' << cell.k
        << ',';
    if (!cell.failed()) out << format_cv(cell.cv);
    out << ',' << csv_escape(cell.error) << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

std::vector<CoherenceCell> read_coherence_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      (line != "set,model,k,cv,error" && line != "set,model,k,cv,error\r")) {
    throw Error("coherence csv: unexpected header");
  }
  std::vector<CoherenceCell> cells;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 5) continue;
    CoherenceCell cell;
    const auto set = parse_feature_set(fields[0]);
    const auto model = parse_model_kind(fields[1]);
    if (!set || !model) continue;
    cell.set = *set;
    cell.model = *model;
    cell.k = std::stoi(fields[2]);
    cell.error = fields[4];
    if (!fields[3].empty()) cell.cv = std::stod(fields[3]);
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::string sweep_topics_json(const std::vector<CoherenceCell>& cells) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& cell : cells) {
    nlohmann::ordered_json entry;
    entry["set"] = std::string(to_string(cell.set));
    entry["model"] = std::string(to_string(cell.model));
    entry["k"] = cell.k;
    if (cell.failed()) {
      entry["error"] = cell.error;
    } else {
      entry["cv"] = cell.cv;
      nlohmann::ordered_json topics = nlohmann::ordered_json::array();
      for (std::size_t t = 0; t < cell.topics.size(); ++t) {
        nlohmann::ordered_json topic;
        topic["score"] = t < cell.per_topic.size() ? cell.per_topic[t] : 0.0;
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const auto& [term, weight] : cell.topics[t])
          terms.push_back({{"term", term}, {"weight", weight}});
        topic["terms"] = std::move(terms);
        topics.push_back(std::move(topic));
      }
      entry["topics"] = std::move(topics);
    }
    arr.push_back(std::move(entry));
  }
  return arr.dump(2) + "\n";
}

std::string trends_csv(const std::vector<TrendSeries>& series) {
  std::ostringstream out;
  out << "topic,year,count\n";
  for (const auto& s : series)
    for (const auto& [year, count] : s.counts_by_year)
      out << csv_escape(s.label) << ',' << year << ',' << count << '\n';
  return out.str();
}

std::string shares_csv(const std::vector<TrendSeries>& series) {
  std::ostringstream out;
  out << "topic,percent\n";
  for (const auto& s : series)
    out << csv_escape(s.label) << ',' << format_percent(s.share_percent)
        << '\n';
  return out.str();
}

std::string render_report(const ReportInputs& inputs) {
  std::ostringstream md;
  md << "# Topic trend report\n\n";
  if (!inputs.corpus_path.empty())
    md << "Corpus: `" << inputs.corpus_path << "` (" << inputs.corpus_size
       << " documents)\n\n";
  if (inputs.year_start || inputs.year_end) {
    md << "Year window: "
       << (inputs.year_start ? std::to_string(*inputs.year_start) : "open")
       << " to "
       << (inputs.year_end ? std::to_string(*inputs.year_end) : "open")
       << "\n\n";
  }

  if (!inputs.sweep.empty()) {
    md << "## Coherence sweep\n\n";
    md << "| set | model | k | C_V |\n|---|---|---|---|\n";
    for (const auto& cell : inputs.sweep) {
      md << "| " << to_string(cell.set) << " | " << to_string(cell.model)
         << " | " << cell.k << " | ";
      if (cell.failed())
        md << "failed: " << cell.error;
      else {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", cell.cv);
        md << buf;
      }
      md << " |\n";
    }
    md << '\n';
  }

  if (inputs.best) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", inputs.best->cv);
    md << "Best cell: **" << to_string(inputs.best->model) << "** on **"
       << to_string(inputs.best->set) << "** with k=" << inputs.best->k
       << " (C_V " << buf << ")\n\n";
  }

  if (!inputs.topics.empty()) {
    md << "## Topics";
    if (!inputs.model_description.empty())
      md << " (" << inputs.model_description << ")";
    md << "\n\n";
    for (std::size_t t = 0; t < inputs.topics.size(); ++t) {
      md << "- **"
         << (t < inputs.topic_labels.size() ? inputs.topic_labels[t]
                                            : "topic-" + std::to_string(t))
         << "**: ";
      for (std::size_t i = 0; i < inputs.topics[t].size(); ++i) {
        if (i) md << ", ";
        md << inputs.topics[t][i].first;
      }
      md << '\n';
    }
    md << '\n';
  }

  if (!inputs.series.empty()) {
    std::set<int> years;
    for (const auto& s : inputs.series)
      for (const auto& [year, _] : s.counts_by_year) years.insert(year);

    md << "## Documents per topic and year\n\n| topic |";
    for (int y : years) md << ' ' << y << " |";
    md << " total | share |\n|---|";
    for (std::size_t i = 0; i < years.size(); ++i) md << "---|";
    md << "---|---|\n";
    for (const auto& s : inputs.series) {
      md << "| " << s.label << " |";
      for (int y : years) {
        const auto it = s.counts_by_year.find(y);
        md << ' ' << (it == s.counts_by_year.end() ? 0 : it->second) << " |";
      }
      md << ' ' << s.total << " | " << format_percent(s.share_percent)
         << "% |\n";
    }
    md << '\n';
  }
  return md.str();
}

}  // namespace trendkit
