// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "trendkit/errors.hpp"
#include "trendkit/linalg.hpp"
#include "trendkit/nmf.hpp"

using namespace trendkit;

namespace {

DocTermMatrix dense(const std::vector<std::vector<double>>& rows) {
  DocTermMatrix m;
  m.doc_count = static_cast<int>(rows.size());
  m.term_count = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (std::size_t d = 0; d < rows.size(); ++d) {
    std::vector<std::pair<int, double>> row;
    for (int t = 0; t < m.term_count; ++t)
      if (rows[d][t] != 0.0) row.emplace_back(t, rows[d][t]);
    m.rows.push_back(std::move(row));
    m.doc_ids.push_back("d" + std::to_string(d));
  }
  return m;
}

// Independent of the fit path: dense reconstruction error.
double brute_objective(const DocTermMatrix& x, const NmfModel& model) {
  double f = 0.0;
  for (int d = 0; d < x.doc_count; ++d) {
    std::vector<double> dense_row(x.term_count, 0.0);
    for (const auto& [t, val] : x.rows[d]) dense_row[t] = val;
    for (int t = 0; t < x.term_count; ++t) {
      double wh = 0.0;
      for (int c = 0; c < model.config.rank; ++c)
        wh += model.w_at(d, c) * model.h_at(c, t);
      const double diff = dense_row[t] - wh;
      f += diff * diff;
    }
  }
  return 0.5 * f;
}

DocTermMatrix random_nonneg(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::vector<double>> data(rows, std::vector<double>(cols));
  for (auto& row : data)
    for (auto& v : row)
      v = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return dense(data);
}

}  // namespace

TEST_CASE("zero matrix collapses to zero factors after one iteration") {
  NmfConfig cfg;
  cfg.rank = 1;
  cfg.max_iter = 5;
  cfg.tol = 0.0;
  const NmfModel model = fit_nmf(dense({{0, 0}, {0, 0}}), cfg);
  REQUIRE(!model.objective_trace.empty());
  CHECK(model.objective_trace[0] == doctest::Approx(0.0).epsilon(1e-30));
}

TEST_CASE("rank-1 matrix is recovered to the svd oracle's zero error") {
  // Oracle: [[1,2],[2,4]] has rank 1, so the best rank-1 Frobenius error
  // is exactly 0 (second singular value vanishes).
  DenseMat a(2, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = 2;
  a.at(1, 0) = 2;
  a.at(1, 1) = 4;
  const SvdResult svd = jacobi_svd(a);
  REQUIRE(svd.sigma.size() == 2);
  CHECK(svd.sigma[1] == doctest::Approx(0.0).epsilon(1e-12));

  NmfConfig cfg;
  cfg.rank = 1;
  cfg.max_iter = 500;
  cfg.tol = 0.0;
  cfg.seed = 1;
  const NmfModel model = fit_nmf(dense({{1, 2}, {2, 4}}), cfg);
  CHECK(model.objective_trace.back() <= 1e-6);
  CHECK(brute_objective(dense({{1, 2}, {2, 4}}), model) <= 1e-6);
}

TEST_CASE("exact factorization given as init is a fixed point") {
  // X = WH with strictly positive factors.
  const std::vector<double> w = {1, 2, 3, 4};        // 2x2
  const std::vector<double> h = {0.5, 1, 0.2, 2, 0.3, 0.7};  // 2x3
  std::vector<std::vector<double>> x(2, std::vector<double>(3, 0.0));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int c = 0; c < 2; ++c) x[i][j] += w[i * 2 + c] * h[c * 3 + j];

  NmfConfig cfg;
  cfg.rank = 2;
  cfg.max_iter = 20;
  cfg.tol = 0.0;
  cfg.init_w = w;
  cfg.init_h = h;
  const NmfModel model = fit_nmf(dense(x), cfg);
  for (std::size_t i = 1; i < model.objective_trace.size(); ++i) {
    CHECK(std::abs(model.objective_trace[i] - model.objective_trace[i - 1]) <=
          1e-12);
  }
}

TEST_CASE("objective is non-increasing on random matrices") {
  for (std::uint64_t seed = 101; seed <= 105; ++seed) {
    const DocTermMatrix x = random_nonneg(30, 20, seed);
    NmfConfig cfg;
    cfg.rank = 4;
    cfg.max_iter = 100;
    cfg.tol = 0.0;
    cfg.seed = seed;
    const NmfModel model = fit_nmf(x, cfg);
    REQUIRE(model.iterations_run == 100);
    for (std::size_t i = 1; i < model.objective_trace.size(); ++i) {
      CHECK(model.objective_trace[i] <=
            model.objective_trace[i - 1] * (1.0 + 1e-10));
    }
    // Internal objective agrees with a brute-force reconstruction.
    CHECK(model.objective_trace.back() ==
          doctest::Approx(brute_objective(x, model)).epsilon(1e-9));
    for (double v : model.w) CHECK(v >= 0.0);
    for (double v : model.h) CHECK(v >= 0.0);
  }
}

TEST_CASE("rescaling factors leaves the product and objective unchanged") {
  const DocTermMatrix x = random_nonneg(12, 8, 7);
  NmfConfig cfg;
  cfg.rank = 3;
  cfg.max_iter = 50;
  cfg.seed = 7;
  cfg.tol = 0.0;
  const NmfModel model = fit_nmf(x, cfg);

  const std::vector<double> scale = {2.0, 0.5, 3.0};
  NmfModel rescaled = model;
  for (int d = 0; d < model.doc_count; ++d)
    for (int c = 0; c < 3; ++c) rescaled.w[d * 3 + c] *= scale[c];
  for (int c = 0; c < 3; ++c)
    for (int t = 0; t < model.term_count; ++t)
      rescaled.h[c * model.term_count + t] /= scale[c];

  CHECK(brute_objective(x, rescaled) ==
        doctest::Approx(brute_objective(x, model)).epsilon(1e-12));
}

TEST_CASE("fixed seed gives bit-identical factors") {
  const DocTermMatrix x = random_nonneg(10, 6, 3);
  NmfConfig cfg;
  cfg.rank = 2;
  cfg.max_iter = 40;
  cfg.seed = 99;
  const NmfModel a = fit_nmf(x, cfg);
  const NmfModel b = fit_nmf(x, cfg);
  CHECK(a.w == b.w);
  CHECK(a.h == b.h);
}

TEST_CASE("negative input is rejected") {
  NmfConfig cfg;
  cfg.rank = 1;
  CHECK_THROWS_AS(fit_nmf(dense({{1, -2}}), cfg), NegativeInputError);
  cfg.rank = 0;
  CHECK_THROWS_AS(fit_nmf(dense({{1}}), cfg), InvalidConfigError);
}

TEST_CASE("topic terms rank component loadings with index ties") {
  NmfModel model;
  model.config.rank = 1;
  model.doc_count = 1;
  model.term_count = 3;
  model.w = {1.0};
  model.h = {0.0, 3.0, 1.0};
  auto top = nmf_topic_terms(model, 0, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0].first == 1);
  CHECK(top[1].first == 2);

  model.h = {0.0, 0.0, 0.0};
  top = nmf_topic_terms(model, 0, 3);
  REQUIRE(top.size() == 3);
  CHECK(top[0].first == 0);
  CHECK(top[0].second == 0.0);
  CHECK(top[1].first == 1);
  CHECK(top[2].first == 2);
}

TEST_CASE("doc topic mixes normalize with a uniform fallback") {
  NmfModel model;
  model.config.rank = 2;
  model.doc_count = 2;
  model.term_count = 1;
  model.w = {1.0, 3.0, 0.0, 0.0};
  model.h = {1.0, 1.0};

  const DocTopicMix mix = nmf_doc_topics(model, 0);
  CHECK(!mix.flagged_uniform);
  CHECK(mix.proportions[0] == doctest::Approx(0.25));
  CHECK(mix.proportions[1] == doctest::Approx(0.75));

  const DocTopicMix zero = nmf_doc_topics(model, 1);
  CHECK(zero.flagged_uniform);
  CHECK(zero.proportions[0] == doctest::Approx(0.5));

  double sum = 0.0;
  for (double v : mix.proportions) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fold-in recovers the component of a planted document") {
  // Docs 0-4 live on terms {0,1}, docs 5-9 on terms {2,3}.
  std::vector<std::vector<double>> rows;
  std::mt19937_64 gen(5);
  for (int d = 0; d < 10; ++d) {
    std::vector<double> row(4, 0.0);
    const int base = d < 5 ? 0 : 2;
    row[base] = 1.0 + static_cast<double>(gen() % 5);
    row[base + 1] = 1.0 + static_cast<double>(gen() % 5);
    rows.push_back(std::move(row));
  }
  NmfConfig cfg;
  cfg.rank = 2;
  cfg.max_iter = 200;
  cfg.tol = 0.0;
  cfg.seed = 11;
  const NmfModel model = fit_nmf(dense(rows), cfg);

  const DocTopicMix train0 = nmf_doc_topics(model, 0);
  const DocTopicMix fold0 = nmf_fold_in(model, {{0, 2.0}, {1, 3.0}});
  CHECK(!fold0.flagged_uniform);
  const auto argmax = [](const std::vector<double>& v) {
    return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
  };
  CHECK(argmax(fold0.proportions) == argmax(train0.proportions));

  const DocTopicMix train5 = nmf_doc_topics(model, 5);
  const DocTopicMix fold5 = nmf_fold_in(model, {{2, 1.0}, {3, 2.0}});
  CHECK(argmax(fold5.proportions) == argmax(train5.proportions));
  CHECK(argmax(fold5.proportions) != argmax(fold0.proportions));

  const DocTopicMix empty = nmf_fold_in(model, {});
  CHECK(empty.flagged_uniform);
}
