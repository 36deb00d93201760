// SPDX-License-Identifier: Apache-2.0
#include "trendkit/nmf.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "trendkit/errors.hpp"
#include "trendkit/rng.hpp"

namespace trendkit {

namespace {

// C = A' A for row-major A (rows x cols), giving cols x cols.
std::vector<double> gram(const std::vector<double>& a, int rows, int cols) {
  std::vector<double> g(static_cast<std::size_t>(cols) * cols, 0.0);
  for (int i = 0; i < rows; ++i) {
    const double* row = a.data() + static_cast<std::size_t>(i) * cols;
    for (int c = 0; c < cols; ++c) {
      const double v = row[c];
      if (v == 0.0) continue;
      for (int c2 = c; c2 < cols; ++c2) g[c * cols + c2] += v * row[c2];
    }
  }
  for (int c = 0; c < cols; ++c)
    for (int c2 = 0; c2 < c; ++c2) g[c * cols + c2] = g[c2 * cols + c];
  return g;
}

// H' gram: G = H H' for row-major H (r x n), giving r x r.
std::vector<double> gram_rows(const std::vector<double>& h, int r, int n) {
  std::vector<double> g(static_cast<std::size_t>(r) * r, 0.0);
  for (int c = 0; c < r; ++c) {
    const double* rc = h.data() + static_cast<std::size_t>(c) * n;
    for (int c2 = c; c2 < r; ++c2) {
      const double* rc2 = h.data() + static_cast<std::size_t>(c2) * n;
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += rc[j] * rc2[j];
      g[c * r + c2] = s;
      g[c2 * r + c] = s;
    }
  }
  return g;
}

double objective(const DocTermMatrix& x, const std::vector<double>& w,
                 const std::vector<double>& h, int r, double sum_x2) {
  const int n = x.term_count;
  // 0.5 (||X||^2 - 2 <X, WH> + <W'W, HH'>)
  double ip = 0.0;
  for (int d = 0; d < x.doc_count; ++d) {
    const double* wd = w.data() + static_cast<std::size_t>(d) * r;
    for (const auto& [t, val] : x.rows[d]) {
      double wh = 0.0;
      for (int c = 0; c < r; ++c) wh += wd[c] * h[static_cast<std::size_t>(c) * n + t];
      ip += val * wh;
    }
  }
  const std::vector<double> wtw = gram(w, x.doc_count, r);
  const std::vector<double> hht = gram_rows(h, r, n);
  double wh_norm2 = 0.0;
  for (std::size_t i = 0; i < wtw.size(); ++i) wh_norm2 += wtw[i] * hht[i];
  double f = 0.5 * (sum_x2 - 2.0 * ip + wh_norm2);
  return f > 0.0 ? f : 0.0;  // clamp fp cancellation noise at the optimum
}

}  // namespace

NmfModel fit_nmf(const DocTermMatrix& x, const NmfConfig& cfg) {
  const int m = x.doc_count;
  const int n = x.term_count;
  const int r = cfg.rank;
  if (r < 1) throw InvalidConfigError("nmf: rank must be >= 1");
  if (cfg.max_iter < 1) throw InvalidConfigError("nmf: max_iter must be >= 1");
  if (cfg.tol < 0.0) throw InvalidConfigError("nmf: tol must be >= 0");
  if (cfg.epsilon <= 0.0) throw InvalidConfigError("nmf: epsilon must be > 0");
  if (m == 0 || n == 0) throw InvalidConfigError("nmf: empty matrix");

  double sum_x = 0.0, sum_x2 = 0.0;
  for (const auto& row : x.rows) {
    for (const auto& [t, val] : row) {
      if (val < 0.0) throw NegativeInputError("nmf: negative matrix entry");
      sum_x += val;
      sum_x2 += val * val;
    }
  }

  NmfModel model;
  model.config = cfg;
  model.doc_count = m;
  model.term_count = n;

  const std::size_t w_size = static_cast<std::size_t>(m) * r;
  const std::size_t h_size = static_cast<std::size_t>(r) * n;
  if (cfg.init_w && cfg.init_h) {
    if (cfg.init_w->size() != w_size || cfg.init_h->size() != h_size)
      throw InvalidConfigError("nmf: init factor shape mismatch");
    model.w = *cfg.init_w;
    model.h = *cfg.init_h;
    for (double v : model.w)
      if (v < 0.0) throw NegativeInputError("nmf: negative init W");
    for (double v : model.h)
      if (v < 0.0) throw NegativeInputError("nmf: negative init H");
  } else if (cfg.init_w || cfg.init_h) {
    throw InvalidConfigError("nmf: init_w and init_h must be given together");
  } else {
    const double mean = sum_x / (static_cast<double>(m) * n);
    const double scale = std::sqrt(mean / r);
    SeededRng rng(cfg.seed);
    model.w.resize(w_size);
    model.h.resize(h_size);
    for (auto& v : model.w) v = rng.next_double() * scale;
    for (auto& v : model.h) v = rng.next_double() * scale;
  }

  std::vector<double>& w = model.w;
  std::vector<double>& h = model.h;
  std::vector<double> wtx(h_size), xht(w_size);
  const double eps = cfg.epsilon;

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    // H <- H .* (W'X) ./ (W'WH + eps)
    std::fill(wtx.begin(), wtx.end(), 0.0);
    for (int d = 0; d < m; ++d) {
      const double* wd = w.data() + static_cast<std::size_t>(d) * r;
      for (const auto& [t, val] : x.rows[d])
        for (int c = 0; c < r; ++c)
          wtx[static_cast<std::size_t>(c) * n + t] += wd[c] * val;
    }
    {
      const std::vector<double> wtw = gram(w, m, r);
      for (int c = 0; c < r; ++c) {
        double* hc = h.data() + static_cast<std::size_t>(c) * n;
        for (int j = 0; j < n; ++j) {
          double denom = 0.0;
          for (int c2 = 0; c2 < r; ++c2)
            denom += wtw[c * r + c2] * h[static_cast<std::size_t>(c2) * n + j];
          hc[j] *= wtx[static_cast<std::size_t>(c) * n + j] / (denom + eps);
        }
      }
    }

    // W <- W .* (XH') ./ (WHH' + eps)
    std::fill(xht.begin(), xht.end(), 0.0);
    for (int d = 0; d < m; ++d) {
      double* xd = xht.data() + static_cast<std::size_t>(d) * r;
      for (const auto& [t, val] : x.rows[d])
        for (int c = 0; c < r; ++c)
          xd[c] += val * h[static_cast<std::size_t>(c) * n + t];
    }
    {
      const std::vector<double> hht = gram_rows(h, r, n);
      for (int d = 0; d < m; ++d) {
        double* wd = w.data() + static_cast<std::size_t>(d) * r;
        for (int c = 0; c < r; ++c) {
          double denom = 0.0;
          for (int c2 = 0; c2 < r; ++c2) denom += wd[c2] * hht[c2 * r + c];
          wd[c] *= xht[static_cast<std::size_t>(d) * r + c] / (denom + eps);
        }
      }
    }

#ifndef NDEBUG
    for (double v : h) assert(v >= 0.0);
    for (double v : w) assert(v >= 0.0);
#endif

    const double f = objective(x, w, h, r, sum_x2);
    const bool converged =
        !model.objective_trace.empty() && cfg.tol > 0.0 &&
        std::abs(model.objective_trace.back() - f) <=
            cfg.tol * std::max(model.objective_trace.back(), 1e-300);
    model.objective_trace.push_back(f);
    if (converged) break;
  }
  model.iterations_run = static_cast<int>(model.objective_trace.size());
  return model;
}

std::vector<std::pair<int, double>> nmf_topic_terms(const NmfModel& model,
                                                    int component, int n) {
  const int terms = model.term_count;
  std::vector<std::pair<int, double>> entries(terms);
  for (int t = 0; t < terms; ++t) entries[t] = {t, model.h_at(component, t)};
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (n < static_cast<int>(entries.size())) entries.resize(n);
  return entries;
}

namespace {

DocTopicMix normalize_mix(std::vector<double> row) {
  DocTopicMix mix;
  double sum = 0.0;
  for (double v : row) sum += v;
  if (sum <= 0.0) {
    mix.flagged_uniform = true;
    std::fill(row.begin(), row.end(), 1.0 / static_cast<double>(row.size()));
  } else {
    for (double& v : row) v /= sum;
  }
  mix.proportions = std::move(row);
  return mix;
}

}  // namespace

DocTopicMix nmf_doc_topics(const NmfModel& model, int doc_row) {
  const int r = model.config.rank;
  std::vector<double> row(model.w.begin() + static_cast<std::size_t>(doc_row) * r,
                          model.w.begin() + static_cast<std::size_t>(doc_row + 1) * r);
  return normalize_mix(std::move(row));
}

DocTopicMix nmf_fold_in(const NmfModel& model,
                        const std::vector<std::pair<int, double>>& doc_row,
                        int iterations) {
  const int r = model.config.rank;
  const int n = model.term_count;
  const double eps = model.config.epsilon;

  double sum = 0.0;
  for (const auto& [t, val] : doc_row) sum += val;
  if (sum <= 0.0) return normalize_mix(std::vector<double>(r, 0.0));

  std::vector<double> xht(r, 0.0);
  for (const auto& [t, val] : doc_row)
    for (int c = 0; c < r; ++c)
      xht[c] += val * model.h[static_cast<std::size_t>(c) * n + t];
  const std::vector<double> hht = gram_rows(model.h, r, n);

  std::vector<double> wrow(r, std::sqrt(sum / (static_cast<double>(n) * r)));
  for (int it = 0; it < iterations; ++it) {
    for (int c = 0; c < r; ++c) {
      double denom = 0.0;
      for (int c2 = 0; c2 < r; ++c2) denom += wrow[c2] * hht[c2 * r + c];
      wrow[c] *= xht[c] / (denom + eps);
    }
  }
  return normalize_mix(std::move(wrow));
}

}  // namespace trendkit
