// SPDX-License-Identifier: Apache-2.0
#include "trendkit/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>

#include "trendkit/errors.hpp"
#include "trendkit/rng.hpp"

namespace trendkit {

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (const auto& term : terms) {
    for (unsigned char c : term) {
      h ^= c;
      h *= 0x100000001B3ull;
    }
    h ^= 0x1F;  // term separator
    h *= 0x100000001B3ull;
  }
  return h;
}

std::size_t DocTermMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& row : rows) n += row.size();
  return n;
}

Vocabulary build_vocab(const std::vector<TokenDoc>& docs, int min_df,
                       double max_df_ratio) {
  if (min_df < 1) throw InvalidConfigError("min_df must be >= 1");
  if (max_df_ratio <= 0.0 || max_df_ratio > 1.0)
    throw InvalidConfigError("max_df_ratio must be in (0, 1]");

  std::unordered_map<std::string, int> df;
  std::unordered_map<std::string, long long> tf;
  for (const auto& doc : docs) {
    std::unordered_map<std::string, int> local;
    for (const auto& tok : doc.tokens) {
      ++local[tok];
      ++tf[tok];
    }
    for (const auto& [term, _] : local) ++df[term];
  }

  const double max_df = max_df_ratio * static_cast<double>(docs.size());
  std::vector<std::string> kept;
  for (const auto& [term, d] : df) {
    if (d >= min_df && static_cast<double>(d) <= max_df) kept.push_back(term);
  }
  if (kept.empty()) throw EmptyVocabularyError("no term passed the df filter");

  std::sort(kept.begin(), kept.end(), [&](const auto& a, const auto& b) {
    const long long ta = tf.at(a), tb = tf.at(b);
    if (ta != tb) return ta > tb;
    return a < b;
  });

  Vocabulary vocab;
  vocab.terms = std::move(kept);
  vocab.df.resize(vocab.terms.size());
  for (int i = 0; i < vocab.size(); ++i) {
    vocab.index[vocab.terms[i]] = i;
    vocab.df[i] = df.at(vocab.terms[i]);
  }
  return vocab;
}

CountMatrixResult count_matrix(const std::vector<TokenDoc>& docs,
                               const Vocabulary& vocab) {
  if (vocab.size() == 0) throw EmptyVocabularyError("empty vocabulary");
  CountMatrixResult result;
  result.matrix.term_count = vocab.size();
  result.matrix.weighting = Weighting::Count;
  for (const auto& doc : docs) {
    std::map<int, double> counts;
    for (const auto& tok : doc.tokens) {
      const auto it = vocab.index.find(tok);
      if (it != vocab.index.end()) counts[it->second] += 1.0;
    }
    if (counts.empty()) {
      result.dropped_doc_ids.push_back(doc.doc_id);
      continue;
    }
    result.matrix.rows.emplace_back(counts.begin(), counts.end());
    result.matrix.doc_ids.push_back(doc.doc_id);
  }
  result.matrix.doc_count = static_cast<int>(result.matrix.rows.size());
  return result;
}

double idf_weight(int n_docs, int df) {
  return 1.0 + std::log((1.0 + n_docs) / (1.0 + df));
}

TfIdfResult tfidf(const DocTermMatrix& counts) {
  if (counts.weighting != Weighting::Count)
    throw InvalidConfigError("tfidf expects a Count matrix");

  std::vector<int> df(counts.term_count, 0);
  for (const auto& row : counts.rows)
    for (const auto& [col, _] : row) ++df[col];

  TfIdfResult result;
  result.idf.resize(counts.term_count);
  for (int t = 0; t < counts.term_count; ++t)
    result.idf[t] = idf_weight(counts.doc_count, df[t]);

  result.matrix = counts;
  result.matrix.weighting = Weighting::TfIdf;
  for (auto& row : result.matrix.rows) {
    double norm_sq = 0.0;
    for (auto& [col, val] : row) {
      val *= result.idf[col];
      norm_sq += val * val;
    }
    if (norm_sq > 0.0) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& [col, val] : row) val *= inv;
    }
  }
  return result;
}

std::vector<std::pair<int, double>> vectorize_new_doc(
    const TokenDoc& doc, const Vocabulary& vocab,
    const std::vector<double>& idf) {
  std::map<int, double> counts;
  for (const auto& tok : doc.tokens) {
    const auto it = vocab.index.find(tok);
    if (it != vocab.index.end()) counts[it->second] += 1.0;
  }
  std::vector<std::pair<int, double>> row(counts.begin(), counts.end());
  double norm_sq = 0.0;
  for (auto& [col, val] : row) {
    if (!idf.empty()) val *= idf[col];
    norm_sq += val * val;
  }
  if (norm_sq > 0.0 && !idf.empty()) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& [col, val] : row) val *= inv;
  }
  return row;
}

void write_triplets(std::ostream& out, const DocTermMatrix& m) {
  out << m.doc_count << ' ' << m.term_count << ' ' << m.nnz() << '\n';
  char buf[64];
  for (int d = 0; d < m.doc_count; ++d) {
    for (const auto& [col, val] : m.rows[d]) {
      std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", d, col, val);
      out << buf;
    }
  }
}

DocTermMatrix read_triplets(std::istream& in) {
  DocTermMatrix m;
  std::size_t nnz = 0;
  if (!(in >> m.doc_count >> m.term_count >> nnz))
    throw Error("triplet file: bad header");
  m.rows.resize(m.doc_count);
  for (std::size_t i = 0; i < nnz; ++i) {
    int row = 0, col = 0;
    double val = 0.0;
    if (!(in >> row >> col >> val)) throw Error("triplet file: truncated");
    if (row < 0 || row >= m.doc_count || col < 0 || col >= m.term_count)
      throw Error("triplet file: index out of range");
    m.rows[row].emplace_back(col, val);
  }
  for (auto& row : m.rows)
    std::sort(row.begin(), row.end());
  m.doc_ids.resize(m.doc_count);
  return m;
}

void write_vocab(std::ostream& out, const Vocabulary& vocab) {
  for (int i = 0; i < vocab.size(); ++i)
    out << i << ' ' << vocab.terms[i] << ' ' << vocab.df[i] << '\n';
}

Vocabulary read_vocab(std::istream& in) {
  Vocabulary vocab;
  int index = 0, df = 0;
  std::string term;
  while (in >> index >> term >> df) {
    if (index != static_cast<int>(vocab.terms.size()))
      throw Error("vocabulary file: indices must be dense and ordered");
    vocab.terms.push_back(term);
    vocab.df.push_back(df);
  }
  for (int i = 0; i < vocab.size(); ++i) vocab.index[vocab.terms[i]] = i;
  return vocab;
}

}  // namespace trendkit
