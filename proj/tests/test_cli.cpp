// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("trendkit_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CmdResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path capture = work_dir() / ("out" + std::to_string(counter++) + ".txt");
  const std::string cmd = std::string(TRENDKIT_CLI_PATH) + " " + args + " > " +
                          capture.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CmdResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(capture);
  std::stringstream ss;
  ss << in.rdbuf();
  res.output = ss.str();
  return res;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

std::string fixture(const char* name) {
  return std::string(TRENDKIT_FIXTURE_DIR) + "/" + name;
}

const std::string kSweepFlags =
    " --sets set4 --models nmf lsa --k 2 3 --min-df 1 --max-df-ratio 1.0 "
    "--seed 11";

}  // namespace

TEST_CASE("ingest parses, repairs and writes the clean corpus") {
  const fs::path corpus = work_dir() / "corpus.jsonl";
  const CmdResult res = run_cli("ingest --format wos --in " +
                                fixture("savedrecs_sample.txt") + " --out " +
                                corpus.string());
  CAPTURE(res.output);
  CHECK(res.exit_code == 0);
  REQUIRE(fs::exists(corpus));
  CHECK(count_lines(slurp(corpus)) == 27);
  CHECK(res.output.find("skipped") != std::string::npos);
  CHECK(res.output.find("years from early access: 1") != std::string::npos);
  CHECK(fs::exists(work_dir() / "run.json"));
}

TEST_CASE("missing input exits 2 and names the path") {
  const CmdResult res =
      run_cli("ingest --format wos --in /nonexistent/file.txt --out " +
              (work_dir() / "x.jsonl").string());
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("/nonexistent/file.txt") != std::string::npos);
}

TEST_CASE("second batch dedupes against the first corpus") {
  const fs::path corpus2 = work_dir() / "corpus2.jsonl";
  const CmdResult res = run_cli(
      "ingest --format wos --in " + fixture("savedrecs_batch2.txt") +
      " --out " + corpus2.string() + " --dedupe-against " +
      (work_dir() / "corpus.jsonl").string());
  CAPTURE(res.output);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("2 existing") != std::string::npos);
  CHECK(count_lines(slurp(corpus2)) == 4);
}

TEST_CASE("sweep writes csv, sidecar, models and run.json") {
  const fs::path out = work_dir() / "sweep";
  const CmdResult res =
      run_cli("sweep --corpus " + (work_dir() / "corpus.jsonl").string() +
              " --out " + out.string() + kSweepFlags);
  CAPTURE(res.output);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("best cell:") != std::string::npos);
  REQUIRE(fs::exists(out / "coherence.csv"));
  const std::string csv = slurp(out / "coherence.csv");
  CHECK(count_lines(csv) == 5);  // header + 4 cells
  CHECK(csv.rfind("set,model,k,cv,error\n", 0) == 0);
  CHECK(fs::exists(out / "sweep_topics.json"));
  CHECK(fs::exists(out / "run.json"));
  CHECK(fs::exists(out / "models" / "set4_nmf_k2.json"));
  CHECK(fs::exists(out / "models" / "set4_lsa_k3.json"));
}

TEST_CASE("sweep output is byte-identical across reruns and jobs counts") {
  const fs::path out1 = work_dir() / "sweep_j1";
  const fs::path out2 = work_dir() / "sweep_j4";
  const std::string base =
      "sweep --corpus " + (work_dir() / "corpus.jsonl").string() + kSweepFlags;
  CHECK(run_cli(base + " --jobs 1 --out " + out1.string()).exit_code == 0);
  CHECK(run_cli(base + " --jobs 4 --out " + out2.string()).exit_code == 0);
  const std::string csv1 = slurp(out1 / "coherence.csv");
  const std::string csv2 = slurp(out2 / "coherence.csv");
  CHECK(!csv1.empty());
  CHECK(csv1 == csv2);
  CHECK(csv1 == slurp(work_dir() / "sweep" / "coherence.csv"));
}

TEST_CASE("config file fills defaults and flags win") {
  const fs::path cfg_path = work_dir() / "config.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << "{\"sets\":[\"set4\"],\"models\":[\"lsa\"],\"k_values\":[2],"
           "\"min_df\":1,\"max_df_ratio\":1.0,\"base_seed\":11}\n";
  }
  const fs::path out = work_dir() / "sweep_cfg";
  const CmdResult res =
      run_cli("sweep --corpus " + (work_dir() / "corpus.jsonl").string() +
              " --out " + out.string() + " --config " + cfg_path.string() +
              " --models nmf");
  CAPTURE(res.output);
  CHECK(res.exit_code == 0);
  const std::string csv = slurp(out / "coherence.csv");
  CHECK(csv.find("set4,nmf,2,") != std::string::npos);
  CHECK(csv.find("lsa") == std::string::npos);  // flag overrode the config
  CHECK(count_lines(csv) == 2);
}

TEST_CASE("trends assigns, aggregates and renders outputs") {
  const fs::path out = work_dir() / "trends";
  const fs::path model = work_dir() / "sweep" / "models" / "set4_nmf_k2.json";
  const CmdResult res = run_cli(
      "trends --model " + model.string() + " --corpus " +
      (work_dir() / "corpus.jsonl").string() + " --out " + out.string() +
      " --year-start 2008 --year-end 2021 --min-df-ignored 0" /* no-op guard */);
  // Unknown flags must fail as usage errors.
  CHECK(res.exit_code == 2);

  const CmdResult ok = run_cli(
      "trends --model " + model.string() + " --corpus " +
      (work_dir() / "corpus.jsonl").string() + " --out " + out.string() +
      " --year-start 2008 --year-end 2021");
  CAPTURE(ok.output);
  CHECK(ok.exit_code == 0);
  REQUIRE(fs::exists(out / "trends.csv"));
  const std::string tcsv = slurp(out / "trends.csv");
  CHECK(tcsv.rfind("topic,year,count\n", 0) == 0);
  // The corpus has 2022 documents; the window must exclude them.
  CHECK(tcsv.find(",2022,") == std::string::npos);
  CHECK(tcsv.find(",2021,") != std::string::npos);
  CHECK(fs::exists(out / "shares.csv"));
  CHECK(fs::exists(out / "report.md"));
  CHECK(fs::exists(out / "trend_data.json"));
  const std::string report = slurp(out / "report.md");
  CHECK(report.find("topic-0") != std::string::npos);
  CHECK(report.find("topic-1") != std::string::npos);
}

TEST_CASE("labels file renames topics in the report") {
  const fs::path labels = work_dir() / "labels.tsv";
  {
    std::ofstream l(labels);
    l << "0\tfirst theme\n";
  }
  const fs::path out = work_dir() / "trends_labeled";
  const fs::path model = work_dir() / "sweep" / "models" / "set4_nmf_k2.json";
  const CmdResult res = run_cli(
      "trends --model " + model.string() + " --corpus " +
      (work_dir() / "corpus.jsonl").string() + " --out " + out.string() +
      " --labels " + labels.string());
  CAPTURE(res.output);
  CHECK(res.exit_code == 0);
  const std::string report = slurp(out / "report.md");
  CHECK(report.find("first theme") != std::string::npos);
  CHECK(report.find("topic-1") != std::string::npos);
  const std::string shares = slurp(out / "shares.csv");
  CHECK(shares.find("first theme,") != std::string::npos);
}

TEST_CASE("fold-in scores a fresh batch against the fixed model") {
  const fs::path out = work_dir() / "trends_foldin";
  const fs::path model = work_dir() / "sweep" / "models" / "set4_nmf_k2.json";
  const CmdResult res = run_cli(
      "trends --model " + model.string() + " --corpus " +
      (work_dir() / "corpus.jsonl").string() + " --out " + out.string() +
      " --fold-in " + (work_dir() / "corpus2.jsonl").string());
  CAPTURE(res.output);
  CHECK(res.exit_code == 0);
  REQUIRE(fs::exists(out / "fold_in_shares.csv"));
  const std::string csv = slurp(out / "fold_in_shares.csv");
  CHECK(csv.rfind("topic,count,percent\n", 0) == 0);
  CHECK(count_lines(csv) >= 2);
}

TEST_CASE("model fitted elsewhere is rejected by the vocabulary check") {
  const fs::path out = work_dir() / "trends_mismatch";
  const fs::path model = work_dir() / "sweep" / "models" / "set4_nmf_k2.json";
  const CmdResult res = run_cli(
      "trends --model " + model.string() + " --corpus " +
      (work_dir() / "corpus2.jsonl").string() + " --out " + out.string());
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("mismatch") != std::string::npos);
}

TEST_CASE("trends reruns are byte-identical") {
  const fs::path model = work_dir() / "sweep" / "models" / "set4_nmf_k2.json";
  const std::string base = "trends --model " + model.string() + " --corpus " +
                           (work_dir() / "corpus.jsonl").string() +
                           " --year-start 2008 --year-end 2021 --out ";
  const fs::path a = work_dir() / "trends_rerun_a";
  const fs::path b = work_dir() / "trends_rerun_b";
  CHECK(run_cli(base + a.string()).exit_code == 0);
  CHECK(run_cli(base + b.string()).exit_code == 0);
  for (const char* file :
       {"trends.csv", "shares.csv", "report.md", "trend_data.json"}) {
    CAPTURE(file);
    const std::string lhs = slurp(a / file);
    CHECK(!lhs.empty());
    CHECK(lhs == slurp(b / file));
  }
}

TEST_CASE("report re-renders byte-identically from trend_data.json") {
  const fs::path out = work_dir() / "trends";
  const std::string before = slurp(out / "report.md");
  REQUIRE(!before.empty());
  fs::remove(out / "report.md");
  const CmdResult res = run_cli("report --dir " + out.string());
  CAPTURE(res.output);
  CHECK(res.exit_code == 0);
  CHECK(slurp(out / "report.md") == before);
}

TEST_CASE("invalid year window and lda fold-in are usage errors") {
  const fs::path model = work_dir() / "sweep" / "models" / "set4_nmf_k2.json";
  const CmdResult bad_window = run_cli(
      "trends --model " + model.string() + " --corpus " +
      (work_dir() / "corpus.jsonl").string() + " --out " +
      (work_dir() / "tw").string() + " --year-start 2020 --year-end 2010");
  CHECK(bad_window.exit_code == 2);
  CHECK(bad_window.output.find("year-start") != std::string::npos);

  const fs::path lda_out = work_dir() / "sweep_lda";
  REQUIRE(run_cli("sweep --corpus " + (work_dir() / "corpus.jsonl").string() +
                  " --out " + lda_out.string() +
                  " --sets set4 --models lda --k 2 --min-df 1 "
                  "--max-df-ratio 1.0 --seed 11 --lda-iterations 100 "
                  "--lda-burn-in 50")
              .exit_code == 0);
  const CmdResult lda_fold = run_cli(
      "trends --model " + (lda_out / "models" / "set4_lda_k2.json").string() +
      " --corpus " + (work_dir() / "corpus.jsonl").string() + " --out " +
      (work_dir() / "tl").string() + " --fold-in " +
      (work_dir() / "corpus2.jsonl").string());
  CHECK(lda_fold.exit_code == 2);
  CHECK(lda_fold.output.find("not supported") != std::string::npos);
}

TEST_CASE("jsonl exports ingest through the same pipeline") {
  const fs::path raw = work_dir() / "raw.jsonl";
  {
    std::ofstream out(raw);
    out << "{\"id\":\"j1\",\"doc_type\":\"Article\",\"title\":\"Flood "
           "routing\",\"abstract\":\"Routing of flood waves\","
           "\"author_keywords\":[\"flood\"],\"categories\":[\"Water "
           "Resources\"],\"pub_year\":2015}\n";
    out << "{\"id\":\"j2\",\"doc_type\":\"Review\",\"title\":\"Skip "
           "me\",\"abstract\":\"x\",\"author_keywords\":[\"y\"],"
           "\"categories\":[\"z\"],\"pub_year\":2015}\n";
  }
  const fs::path corpus = work_dir() / "from_jsonl.jsonl";
  const CmdResult res = run_cli("ingest --format jsonl --in " + raw.string() +
                                " --out " + corpus.string());
  CAPTURE(res.output);
  CHECK(res.exit_code == 0);
  CHECK(count_lines(slurp(corpus)) == 1);  // the review is filtered
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("sweep").exit_code == 2);
  CHECK(run_cli("frobnicate --x").exit_code == 2);
}
