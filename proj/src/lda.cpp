// SPDX-License-Identifier: Apache-2.0
#include "trendkit/lda.hpp"

#include <algorithm>
#include <cmath>

#include "trendkit/errors.hpp"
#include "trendkit/rng.hpp"

namespace trendkit {

namespace {

void check_config(const LdaConfig& cfg, const DocTermMatrix& counts) {
  if (cfg.topics < 1) throw InvalidConfigError("lda: topics must be >= 1");
  if (cfg.beta <= 0.0) throw InvalidConfigError("lda: beta must be positive");
  if (cfg.alpha < 0.0)
    throw InvalidConfigError("lda: alpha must be positive (or 0 for 50/K)");
  if (cfg.iterations < 1)
    throw InvalidConfigError("lda: iterations must be >= 1");
  if (cfg.burn_in < 0 || cfg.burn_in >= cfg.iterations)
    throw InvalidConfigError("lda: burn_in must be in [0, iterations)");
  if (counts.doc_count == 0 || counts.term_count == 0)
    throw InvalidConfigError("lda: empty matrix");
  if (counts.weighting != Weighting::Count)
    throw InvalidConfigError("lda: needs a Count matrix");
}

// Corpus log likelihood from a single count state, smoothed by the priors.
double state_loglik(const DocTermMatrix& counts, const std::vector<int>& n_dk,
                    const std::vector<int>& n_kw, const std::vector<int>& n_k,
                    const std::vector<int>& doc_len, int K, double alpha,
                    double beta) {
  const int V = counts.term_count;
  double ll = 0.0;
  for (int d = 0; d < counts.doc_count; ++d) {
    const double denom_d = doc_len[d] + K * alpha;
    for (const auto& [w, c] : counts.rows[d]) {
      double p = 0.0;
      for (int k = 0; k < K; ++k) {
        const double theta = (n_dk[d * K + k] + alpha) / denom_d;
        const double phi = (n_kw[k * V + w] + beta) / (n_k[k] + V * beta);
        p += theta * phi;
      }
      ll += c * std::log(p);
    }
  }
  return ll;
}

}  // namespace

LdaModel fit_lda(const DocTermMatrix& counts, const LdaConfig& cfg) {
  check_config(cfg, counts);
  const int K = cfg.topics;
  const int D = counts.doc_count;
  const int V = counts.term_count;
  const double alpha = cfg.resolved_alpha();
  const double beta = cfg.beta;

  // Expand the sparse rows into a token stream (column order within a doc).
  std::vector<int> token_word;
  std::vector<int> doc_offsets(D + 1, 0);
  for (int d = 0; d < D; ++d) {
    for (const auto& [col, val] : counts.rows[d]) {
      const int c = static_cast<int>(val);
      if (static_cast<double>(c) != val || c < 0)
        throw InvalidConfigError("lda: matrix entries must be whole counts");
      for (int i = 0; i < c; ++i) token_word.push_back(col);
    }
    doc_offsets[d + 1] = static_cast<int>(token_word.size());
  }
  const int total_tokens = static_cast<int>(token_word.size());
  std::vector<int> doc_len(D);
  for (int d = 0; d < D; ++d) doc_len[d] = doc_offsets[d + 1] - doc_offsets[d];

  SeededRng rng(cfg.seed);
  std::vector<int> z(total_tokens);
  std::vector<int> n_dk(static_cast<std::size_t>(D) * K, 0);
  std::vector<int> n_kw(static_cast<std::size_t>(K) * V, 0);
  std::vector<int> n_k(K, 0);
  for (int d = 0; d < D; ++d) {
    for (int i = doc_offsets[d]; i < doc_offsets[d + 1]; ++i) {
      const int k = static_cast<int>(rng.next_below(K));
      z[i] = k;
      ++n_dk[d * K + k];
      ++n_kw[static_cast<std::size_t>(k) * V + token_word[i]];
      ++n_k[k];
    }
  }

  LdaModel model;
  model.config = cfg;
  model.doc_count = D;
  model.term_count = V;

  std::vector<double> mean_dk(static_cast<std::size_t>(D) * K, 0.0);
  std::vector<double> mean_kw(static_cast<std::size_t>(K) * V, 0.0);
  std::vector<double> probs(K);
  int samples = 0;

  for (int sweep = 1; sweep <= cfg.iterations; ++sweep) {
    for (int d = 0; d < D; ++d) {
      int* dk = n_dk.data() + static_cast<std::size_t>(d) * K;
      for (int i = doc_offsets[d]; i < doc_offsets[d + 1]; ++i) {
        const int w = token_word[i];
        const int old_k = z[i];
        int* kw_base = n_kw.data() + w;
        --dk[old_k];
        --n_kw[static_cast<std::size_t>(old_k) * V + w];
        --n_k[old_k];

        double total = 0.0;
        for (int k = 0; k < K; ++k) {
          total += (dk[k] + alpha) *
                   (kw_base[static_cast<std::size_t>(k) * V] + beta) /
                   (n_k[k] + V * beta);
          probs[k] = total;
        }
        const double u = rng.next_double() * total;
        int new_k = 0;
        while (new_k < K - 1 && probs[new_k] < u) ++new_k;

        z[i] = new_k;
        ++dk[new_k];
        ++n_kw[static_cast<std::size_t>(new_k) * V + w];
        ++n_k[new_k];
      }
    }

    if (cfg.validate_counts) {
      for (int d = 0; d < D; ++d) {
        int sum = 0;
        for (int k = 0; k < K; ++k) sum += n_dk[d * K + k];
        if (sum != doc_len[d])
          throw Error("lda: count conservation violated for doc " +
                      std::to_string(d) + " at sweep " + std::to_string(sweep));
      }
      int sum_k = 0;
      for (int k = 0; k < K; ++k) sum_k += n_k[k];
      if (sum_k != total_tokens)
        throw Error("lda: topic totals diverged at sweep " +
                    std::to_string(sweep));
    }

    if (cfg.track_loglik) {
      model.loglik_trace.push_back(state_loglik(counts, n_dk, n_kw, n_k,
                                                doc_len, K, alpha, beta));
    }

    if (sweep > cfg.burn_in) {
      ++samples;
      for (std::size_t i = 0; i < mean_dk.size(); ++i) mean_dk[i] += n_dk[i];
      for (std::size_t i = 0; i < mean_kw.size(); ++i) mean_kw[i] += n_kw[i];
    }
  }

  const double inv_samples = 1.0 / static_cast<double>(samples);
  for (auto& v : mean_dk) v *= inv_samples;
  for (auto& v : mean_kw) v *= inv_samples;

  model.theta.resize(mean_dk.size());
  for (int d = 0; d < D; ++d) {
    const double denom = doc_len[d] + K * alpha;
    for (int k = 0; k < K; ++k)
      model.theta[d * K + k] = (mean_dk[d * K + k] + alpha) / denom;
  }
  model.phi.resize(mean_kw.size());
  for (int k = 0; k < K; ++k) {
    double mean_nk = 0.0;
    for (int v = 0; v < V; ++v) mean_nk += mean_kw[static_cast<std::size_t>(k) * V + v];
    const double denom = mean_nk + V * beta;
    for (int v = 0; v < V; ++v)
      model.phi[static_cast<std::size_t>(k) * V + v] =
          (mean_kw[static_cast<std::size_t>(k) * V + v] + beta) / denom;
  }
  model.assignments = std::move(z);
  model.doc_offsets = std::move(doc_offsets);
  return model;
}

std::vector<std::pair<int, double>> lda_top_terms(const LdaModel& model,
                                                  int topic, int n) {
  const int V = model.term_count;
  std::vector<std::pair<int, double>> entries(V);
  for (int v = 0; v < V; ++v) entries[v] = {v, model.phi_at(topic, v)};
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (n < static_cast<int>(entries.size())) entries.resize(n);
  return entries;
}

double log_likelihood(const LdaModel& model, const DocTermMatrix& counts) {
  const int K = model.config.topics;
  double ll = 0.0;
  for (int d = 0; d < counts.doc_count; ++d) {
    for (const auto& [w, c] : counts.rows[d]) {
      double p = 0.0;
      for (int k = 0; k < K; ++k) p += model.theta_at(d, k) * model.phi_at(k, w);
      ll += c * std::log(p);
    }
  }
  return ll;
}

}  // namespace trendkit
