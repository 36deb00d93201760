// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "trendkit/textprep.hpp"

namespace trendkit {

/// Dense 0..V-1 term indexing, ordered by descending total corpus frequency
/// with lexicographic tie-breaking.
struct Vocabulary {
  std::vector<std::string> terms;               // index -> term
  std::unordered_map<std::string, int> index;   // term -> index
  std::vector<int> df;                          // document frequency per term

  int size() const { return static_cast<int>(terms.size()); }

  /// Order-sensitive FNV-1a over the term list; used to detect
  /// model/corpus mismatches.
  std::uint64_t hash() const;
};

enum class Weighting { Count, TfIdf };

/// Sparse nonnegative documents x terms matrix. Row entries are
/// (column, value) pairs sorted by column; only nonzeros are stored.
struct DocTermMatrix {
  int doc_count = 0;
  int term_count = 0;
  Weighting weighting = Weighting::Count;
  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<std::string> doc_ids;

  std::size_t nnz() const;
};

/// Keeps terms with min_df <= df <= max_df_ratio * D.
/// Throws EmptyVocabularyError when nothing survives.
Vocabulary build_vocab(const std::vector<TokenDoc>& docs, int min_df,
                       double max_df_ratio);

struct CountMatrixResult {
  DocTermMatrix matrix;
  std::vector<std::string> dropped_doc_ids;  // docs with no in-vocab tokens
};

/// Raw occurrence counts; out-of-vocabulary tokens are ignored and
/// documents whose rows end up empty are dropped with a report.
CountMatrixResult count_matrix(const std::vector<TokenDoc>& docs,
                               const Vocabulary& vocab);

/// Smoothed idf factor: 1 + ln((1 + n_docs) / (1 + df)).
double idf_weight(int n_docs, int df);

/// tf * idf with smoothed idf, then each row scaled to unit Euclidean norm.
/// Also returns the idf vector used, so new documents can be folded in with
/// the same weighting.
struct TfIdfResult {
  DocTermMatrix matrix;
  std::vector<double> idf;
};
TfIdfResult tfidf(const DocTermMatrix& counts);

/// Weights one new document's tokens against a fixed vocabulary and idf
/// vector (L2-normalized). Unknown tokens are ignored.
std::vector<std::pair<int, double>> vectorize_new_doc(
    const TokenDoc& doc, const Vocabulary& vocab,
    const std::vector<double>& idf);

// Sparse triplet persistence: header "D V NNZ", then "row col value" lines.
void write_triplets(std::ostream& out, const DocTermMatrix& m);
DocTermMatrix read_triplets(std::istream& in);

// Vocabulary persistence: "index term df" lines.
void write_vocab(std::ostream& out, const Vocabulary& vocab);
Vocabulary read_vocab(std::istream& in);

}  // namespace trendkit
