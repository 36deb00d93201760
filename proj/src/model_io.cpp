// SPDX-License-Identifier: Apache-2.0
#include "trendkit/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "trendkit/errors.hpp"

namespace trendkit {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Lda:
      return "lda";
    case ModelKind::Nmf:
      return "nmf";
    case ModelKind::Lsa:
      return "lsa";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view s) {
  std::string lower(s);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "lda") return ModelKind::Lda;
  if (lower == "nmf") return ModelKind::Nmf;
  if (lower == "lsa") return ModelKind::Lsa;
  return std::nullopt;
}

std::vector<std::pair<std::string, double>> topic_top_terms(
    const FittedModel& model, int topic, int n) {
  std::vector<std::pair<int, double>> ranked;
  if (const auto* lda = std::get_if<LdaModel>(&model.model)) {
    ranked = lda_top_terms(*lda, topic, n);
  } else if (const auto* nmf = std::get_if<NmfModel>(&model.model)) {
    ranked = nmf_topic_terms(*nmf, topic, n);
  } else if (const auto* lsa = std::get_if<LsaModel>(&model.model)) {
    ranked = lsa_topic_terms(*lsa, topic, n);
  }
  std::vector<std::pair<std::string, double>> out;
  out.reserve(ranked.size());
  for (const auto& [index, weight] : ranked)
    out.emplace_back(model.vocab.terms[index], weight);
  return out;
}

namespace {

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string model_to_json(const FittedModel& model) {
  nlohmann::ordered_json obj;
  obj["schema"] = "trendkit-model-v1";
  obj["model"] = std::string(to_string(model.kind));
  obj["feature_set"] = std::string(to_string(model.feature_set));
  obj["weighting"] = model.weighting == Weighting::Count ? "count" : "tfidf";
  obj["seed"] = model.seed;
  obj["k"] = model.topic_count;
  obj["min_df"] = model.fit_min_df;
  obj["max_df_ratio"] = model.fit_max_df_ratio;
  obj["vocab"] = {
      {"terms", model.vocab.terms},
      {"df", model.vocab.df},
      {"hash", hash_hex(model.vocab.hash())},
  };
  if (!model.idf.empty()) obj["vocab"]["idf"] = model.idf;
  obj["doc_ids"] = model.doc_ids;

  if (const auto* lda = std::get_if<LdaModel>(&model.model)) {
    obj["lda"] = {
        {"alpha", lda->config.resolved_alpha()},
        {"beta", lda->config.beta},
        {"iterations", lda->config.iterations},
        {"burn_in", lda->config.burn_in},
        {"doc_count", lda->doc_count},
        {"term_count", lda->term_count},
        {"theta", lda->theta},
        {"phi", lda->phi},
    };
  } else if (const auto* nmf = std::get_if<NmfModel>(&model.model)) {
    obj["nmf"] = {
        {"rank", nmf->config.rank},
        {"max_iter", nmf->config.max_iter},
        {"tol", nmf->config.tol},
        {"epsilon", nmf->config.epsilon},
        {"doc_count", nmf->doc_count},
        {"term_count", nmf->term_count},
        {"w", nmf->w},
        {"h", nmf->h},
        {"objective_trace", nmf->objective_trace},
        {"iterations_run", nmf->iterations_run},
    };
  } else if (const auto* lsa = std::get_if<LsaModel>(&model.model)) {
    obj["lsa"] = {
        {"k", lsa->k},
        {"doc_count", lsa->doc_count},
        {"term_count", lsa->term_count},
        {"u", lsa->u},
        {"sigma", lsa->sigma},
        {"vt", lsa->vt},
    };
  }
  return obj.dump(2);
}

FittedModel model_from_json(const std::string& text) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model file: invalid json: ") + e.what());
  }
  FittedModel model;
  try {
    if (obj.at("schema").get<std::string>() != "trendkit-model-v1")
      throw Error("model file: unknown schema");
    const auto kind = parse_model_kind(obj.at("model").get<std::string>());
    if (!kind) throw Error("model file: unknown model kind");
    model.kind = *kind;
    const auto set = parse_feature_set(obj.at("feature_set").get<std::string>());
    if (!set) throw Error("model file: unknown feature set");
    model.feature_set = *set;
    model.weighting = obj.at("weighting").get<std::string>() == "count"
                          ? Weighting::Count
                          : Weighting::TfIdf;
    model.seed = obj.at("seed").get<std::uint64_t>();
    model.topic_count = obj.at("k").get<int>();
    model.fit_min_df = obj.at("min_df").get<int>();
    model.fit_max_df_ratio = obj.at("max_df_ratio").get<double>();

    const auto& vocab = obj.at("vocab");
    model.vocab.terms = vocab.at("terms").get<std::vector<std::string>>();
    model.vocab.df = vocab.at("df").get<std::vector<int>>();
    for (int i = 0; i < model.vocab.size(); ++i)
      model.vocab.index[model.vocab.terms[i]] = i;
    if (vocab.contains("idf"))
      model.idf = vocab.at("idf").get<std::vector<double>>();
    if (hash_hex(model.vocab.hash()) != vocab.at("hash").get<std::string>())
      throw Error("model file: vocabulary hash mismatch (corrupt file)");
    model.doc_ids = obj.at("doc_ids").get<std::vector<std::string>>();

    const auto expect_size = [](const std::vector<double>& v, std::size_t n,
                                const char* what) {
      if (v.size() != n)
        throw Error(std::string("model file: ") + what +
                    " has the wrong element count");
    };

    if (model.kind == ModelKind::Lda) {
      const auto& src = obj.at("lda");
      LdaModel lda;
      lda.config.topics = model.topic_count;
      lda.config.alpha = src.at("alpha").get<double>();
      lda.config.beta = src.at("beta").get<double>();
      lda.config.iterations = src.at("iterations").get<int>();
      lda.config.burn_in = src.at("burn_in").get<int>();
      lda.config.seed = model.seed;
      lda.doc_count = src.at("doc_count").get<int>();
      lda.term_count = src.at("term_count").get<int>();
      lda.theta = src.at("theta").get<std::vector<double>>();
      lda.phi = src.at("phi").get<std::vector<double>>();
      expect_size(lda.theta,
                  static_cast<std::size_t>(lda.doc_count) * model.topic_count,
                  "theta");
      expect_size(lda.phi,
                  static_cast<std::size_t>(model.topic_count) * lda.term_count,
                  "phi");
      model.model = std::move(lda);
    } else if (model.kind == ModelKind::Nmf) {
      const auto& src = obj.at("nmf");
      NmfModel nmf;
      nmf.config.rank = src.at("rank").get<int>();
      nmf.config.max_iter = src.at("max_iter").get<int>();
      nmf.config.tol = src.at("tol").get<double>();
      nmf.config.epsilon = src.at("epsilon").get<double>();
      nmf.config.seed = model.seed;
      nmf.doc_count = src.at("doc_count").get<int>();
      nmf.term_count = src.at("term_count").get<int>();
      nmf.w = src.at("w").get<std::vector<double>>();
      nmf.h = src.at("h").get<std::vector<double>>();
      nmf.objective_trace = src.at("objective_trace").get<std::vector<double>>();
      nmf.iterations_run = src.at("iterations_run").get<int>();
      expect_size(nmf.w,
                  static_cast<std::size_t>(nmf.doc_count) * nmf.config.rank,
                  "w");
      expect_size(nmf.h,
                  static_cast<std::size_t>(nmf.config.rank) * nmf.term_count,
                  "h");
      model.model = std::move(nmf);
    } else {
      const auto& src = obj.at("lsa");
      LsaModel lsa;
      lsa.k = src.at("k").get<int>();
      lsa.seed = model.seed;
      lsa.doc_count = src.at("doc_count").get<int>();
      lsa.term_count = src.at("term_count").get<int>();
      lsa.u = src.at("u").get<std::vector<double>>();
      lsa.sigma = src.at("sigma").get<std::vector<double>>();
      lsa.vt = src.at("vt").get<std::vector<double>>();
      expect_size(lsa.u, static_cast<std::size_t>(lsa.term_count) * lsa.k, "u");
      expect_size(lsa.sigma, static_cast<std::size_t>(lsa.k), "sigma");
      expect_size(lsa.vt, static_cast<std::size_t>(lsa.k) * lsa.doc_count,
                  "vt");
      model.model = std::move(lsa);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model file: missing or mistyped field: ") + e.what());
  }
  return model;
}

void save_model_file(const std::string& path, const FittedModel& model) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model file: " + path);
  out << model_to_json(model) << '\n';
}

FittedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace trendkit
