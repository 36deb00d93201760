// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace trendkit {

/// Base class for all trendkit error conditions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Export header is missing required field tags.
class UnsupportedHeaderError : public Error {
 public:
  using Error::Error;
};

/// Vocabulary pruning left no terms.
class EmptyVocabularyError : public Error {
 public:
  using Error::Error;
};

/// A model configuration violates its invariants.
class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

/// NMF input matrix contains negative entries.
class NegativeInputError : public Error {
 public:
  using Error::Error;
};

/// Requested SVD rank exceeds min(rows, cols).
class RankTooLargeError : public Error {
 public:
  using Error::Error;
};

/// A coherence topic has fewer than two terms.
class TopicTooSmallError : public Error {
 public:
  using Error::Error;
};

/// No documents (or no windows) to evaluate against.
class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

/// Every sweep cell failed; nothing to select.
class AllCellsFailedError : public Error {
 public:
  using Error::Error;
};

/// A persisted model does not match the corpus it is applied to.
class VocabMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace trendkit
