// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "trendkit/errors.hpp"
#include "trendkit/lda.hpp"
#include "trendkit/rng.hpp"

using namespace trendkit;

namespace {

DocTermMatrix dense_counts(const std::vector<std::vector<double>>& rows) {
  DocTermMatrix m;
  m.doc_count = static_cast<int>(rows.size());
  m.term_count = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  m.weighting = Weighting::Count;
  for (std::size_t d = 0; d < rows.size(); ++d) {
    std::vector<std::pair<int, double>> row;
    for (int t = 0; t < m.term_count; ++t)
      if (rows[d][t] != 0.0) row.emplace_back(t, rows[d][t]);
    m.rows.push_back(std::move(row));
    m.doc_ids.push_back("d" + std::to_string(d));
  }
  return m;
}

// Two long documents over disjoint vocabularies {a,b} and {c,d}.
DocTermMatrix planted_corpus() {
  return dense_counts({{100, 100, 0, 0}, {0, 0, 100, 100}});
}

LdaConfig planted_config(std::uint64_t seed) {
  LdaConfig cfg;
  cfg.topics = 2;
  cfg.iterations = 500;
  cfg.burn_in = 250;
  cfg.seed = seed;
  return cfg;
}

void check_rows_stochastic(const LdaModel& model) {
  const int k = model.config.topics;
  for (int d = 0; d < model.doc_count; ++d) {
    double sum = 0.0;
    for (int t = 0; t < k; ++t) {
      sum += model.theta_at(d, t);
      CHECK(model.theta_at(d, t) > 0.0);
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
  for (int t = 0; t < k; ++t) {
    double sum = 0.0;
    for (int v = 0; v < model.term_count; ++v) {
      sum += model.phi_at(t, v);
      CHECK(model.phi_at(t, v) > 0.0);
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

}  // namespace

TEST_CASE("single topic forces degenerate theta and phi") {
  LdaConfig cfg;
  cfg.topics = 1;
  cfg.iterations = 10;
  cfg.burn_in = 5;
  const LdaModel model = fit_lda(dense_counts({{3}}), cfg);
  CHECK(model.theta_at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(model.phi_at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("invalid configurations are rejected") {
  const DocTermMatrix counts = dense_counts({{1}});
  LdaConfig cfg;
  cfg.topics = 0;
  CHECK_THROWS_AS(fit_lda(counts, cfg), InvalidConfigError);
  cfg.topics = 2;
  cfg.burn_in = cfg.iterations;
  CHECK_THROWS_AS(fit_lda(counts, cfg), InvalidConfigError);
  cfg = LdaConfig{};
  CHECK_THROWS_AS(fit_lda(dense_counts({}), cfg), InvalidConfigError);

  DocTermMatrix weighted = dense_counts({{1, 2}});
  weighted.weighting = Weighting::TfIdf;
  CHECK_THROWS_AS(fit_lda(weighted, cfg), InvalidConfigError);

  CHECK_THROWS_AS(fit_lda(dense_counts({{1.5}}), cfg), InvalidConfigError);
}

TEST_CASE("planted disjoint topics separate in at least 4 of 5 seeds") {
  const DocTermMatrix counts = planted_corpus();
  int separated = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    LdaConfig cfg = planted_config(seed);
    cfg.validate_counts = true;  // count conservation asserted every sweep
    const LdaModel model = fit_lda(counts, cfg);
    check_rows_stochastic(model);
    int arg0 = model.theta_at(0, 0) > model.theta_at(0, 1) ? 0 : 1;
    int arg1 = model.theta_at(1, 0) > model.theta_at(1, 1) ? 0 : 1;
    if (arg0 != arg1) ++separated;
  }
  CHECK(separated >= 4);
}

TEST_CASE("fixed seed reproduces bit-identical results") {
  const DocTermMatrix counts = planted_corpus();
  const LdaConfig cfg = planted_config(42);
  const LdaModel a = fit_lda(counts, cfg);
  const LdaModel b = fit_lda(counts, cfg);
  CHECK(a.theta == b.theta);
  CHECK(a.phi == b.phi);
  CHECK(a.assignments == b.assignments);
}

TEST_CASE("log likelihood of degenerate and uniform models") {
  LdaModel model;
  model.config.topics = 1;
  model.doc_count = 1;
  model.term_count = 1;
  model.theta = {1.0};
  model.phi = {1.0};
  CHECK(log_likelihood(model, dense_counts({{1}})) == doctest::Approx(0.0));

  LdaModel uniform;
  uniform.config.topics = 1;
  uniform.doc_count = 1;
  uniform.term_count = 2;
  uniform.theta = {1.0};
  uniform.phi = {0.5, 0.5};
  CHECK(log_likelihood(uniform, dense_counts({{1, 1}})) ==
        doctest::Approx(2.0 * std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("fitting beats random parameters on the planted corpus") {
  const DocTermMatrix counts = planted_corpus();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const LdaModel fitted = fit_lda(counts, planted_config(seed));

    // Random stochastic parameter matrices as the pre-fit baseline.
    SeededRng rng(seed * 1000 + 7);
    LdaModel random_model;
    random_model.config.topics = 2;
    random_model.doc_count = 2;
    random_model.term_count = 4;
    random_model.theta.resize(4);
    random_model.phi.resize(8);
    for (int d = 0; d < 2; ++d) {
      double sum = 0.0;
      for (int k = 0; k < 2; ++k) {
        random_model.theta[d * 2 + k] = rng.next_double() + 1e-3;
        sum += random_model.theta[d * 2 + k];
      }
      for (int k = 0; k < 2; ++k) random_model.theta[d * 2 + k] /= sum;
    }
    for (int k = 0; k < 2; ++k) {
      double sum = 0.0;
      for (int v = 0; v < 4; ++v) {
        random_model.phi[k * 4 + v] = rng.next_double() + 1e-3;
        sum += random_model.phi[k * 4 + v];
      }
      for (int v = 0; v < 4; ++v) random_model.phi[k * 4 + v] /= sum;
    }

    CHECK(log_likelihood(fitted, counts) >
          log_likelihood(random_model, counts));
  }
}

TEST_CASE("smoothed loglik running mean is non-decreasing after sweep 20") {
  const DocTermMatrix counts = planted_corpus();
  int passing = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    LdaConfig cfg = planted_config(seed);
    cfg.iterations = 120;
    cfg.burn_in = 60;
    cfg.track_loglik = true;
    const LdaModel model = fit_lda(counts, cfg);
    REQUIRE(model.loglik_trace.size() == 120);

    std::vector<double> means;
    for (std::size_t t = 9; t < model.loglik_trace.size(); ++t) {
      double m = 0.0;
      for (std::size_t i = t - 9; i <= t; ++i) m += model.loglik_trace[i];
      means.push_back(m / 10.0);
    }
    bool ok = true;
    // means[i] covers sweeps [i+1, i+10]; start checking at sweep 20.
    for (std::size_t i = 10; i + 1 < means.size(); ++i) {
      if (means[i + 1] < means[i] - std::abs(means[i]) * 1e-12) {
        ok = false;
        break;
      }
    }
    if (ok) ++passing;
  }
  CHECK(passing >= 4);
}

TEST_CASE("top terms rank by phi with index tie-break") {
  LdaModel model;
  model.config.topics = 1;
  model.doc_count = 1;
  model.term_count = 3;
  model.theta = {1.0};
  model.phi = {0.5, 0.3, 0.2};
  auto top = lda_top_terms(model, 0, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0].first == 0);
  CHECK(top[1].first == 1);

  // n > V returns everything.
  CHECK(lda_top_terms(model, 0, 10).size() == 3);

  model.phi = {0.5, 0.5, 0.0};
  top = lda_top_terms(model, 0, 2);
  CHECK(top[0].first == 0);
  CHECK(top[1].first == 1);
}
