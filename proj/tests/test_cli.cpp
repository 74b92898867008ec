// End-to-end tests driving the installed binary. The test runner provides
// CITERANK_BIN (path to the executable) and CITERANK_DATA (the shipped
// lexicon directory).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "helpers.hpp"

namespace fs = std::filesystem;

namespace {

std::string env_or_fail(const char* name) {
  const char* v = std::getenv(name);
  REQUIRE_MESSAGE(v != nullptr, name << " must be set");
  return v;
}

struct RunResult {
  int code = -1;
  std::string err;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open " << p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_cli(const std::string& args, const fs::path& scratch) {
  static int serial = 0;
  const fs::path errfile = scratch / ("stderr." + std::to_string(serial++));
  const std::string cmd =
      env_or_fail("CITERANK_BIN") + " " + args + " 2>" + errfile.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (fs::exists(errfile)) r.err = read_file(errfile);
  return r;
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

// A small corpus whose classes are separable from the demo lexicon words
// alone: positive sentences carry scored positive words, negative ones
// scored negative words, neutral ones no lexicon words at all.
struct Fixture {
  testutil::TempDir dir;
  fs::path corpus;
  std::string test_block;  // the serialized test partition
  std::string lexicon_args;
  static constexpr std::size_t kTrain = 30;
  static constexpr std::size_t kTest = 12;

  Fixture() {
    static const char* sentences[3][2] = {
        {"the tool gives good and great results",
         "a good method with great outcomes"},
        {"we use the dataset from prior work",
         "the corpus follows the earlier setup"},
        {"a poor and bad approach overall",
         "this poor design performs bad here"},
    };
    static const char labels[3] = {'p', 'o', 'n'};

    std::string text;
    for (std::size_t i = 0; i < kTrain; ++i) {
      const int cls = static_cast<int>(i % 3);
      text += "tr_s" + std::to_string(i) + "\ttr_t" + std::to_string(i) +
              "\t" + labels[cls] + "\t" + sentences[cls][(i / 3) % 2] + "\n";
    }
    // Test partition: three cited papers with distinct citation mixes.
    const struct {
      const char* source;
      const char* target;
      int cls;
    } rows[kTest] = {
        {"srcA", "t_hot", 0},  {"srcB", "t_hot", 0},  {"srcC", "t_hot", 0},
        {"srcD", "t_hot", 1},  {"srcE", "t_hot", 1},  {"srcF", "t_mid", 1},
        {"srcG", "t_mid", 1},  {"srcH", "t_mid", 2},  {"srcI", "t_mid", 2},
        {"srcJ", "t_cold", 2}, {"srcK", "t_cold", 2}, {"srcL", "t_cold", 1},
    };
    for (const auto& row : rows) {
      test_block += std::string(row.source) + "\t" + row.target + "\t" +
                    labels[row.cls] + "\t" + sentences[row.cls][0] + "\n";
    }
    text += test_block;
    corpus = dir.file("corpus.tsv", text);

    const fs::path swn = dir.file(
        "swn.tsv", "good\t0.5\ngreat\t0.75\npoor\t-0.5\nbad\t-0.75\n");
    const fs::path pos = dir.file(
        "pos.txt", "good\nwidely used\nstate of the art\n");
    const fs::path neg = dir.file("neg.txt", "however\nnot able to\n");
    const fs::path ol1p = dir.file("ol1p.txt", "useful\nrobust\n");
    const fs::path ol1n = dir.file("ol1n.txt", "weak\nnoisy\n");
    const fs::path ol2p = dir.file("ol2p.txt", "elegant\n");
    const fs::path ol2n = dir.file("ol2n.txt", "fragile\nslow\n");
    lexicon_args = " --lexicon-swn " + swn.string() +
                   " --lexicon-pos-ngrams " + pos.string() +
                   " --lexicon-neg-words " + neg.string() + " --lexicon-ol1 " +
                   ol1p.string() + " " + ol1n.string() + " --lexicon-ol2 " +
                   ol2p.string() + " " + ol2n.string();
  }

  std::string base_args() const {
    return "--corpus " + corpus.string() + " --split " +
           std::to_string(kTrain) + lexicon_args;
  }

  fs::path train_model(const std::string& name = "model.txt") const {
    const fs::path model = dir.path / name;
    const RunResult r =
        run_cli("train " + base_args() + " --model " + model.string(),
                dir.path);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    return model;
  }
};

}  // namespace

TEST_CASE("train reports split counts and writes a deterministic model") {
  Fixture f;
  const fs::path model = f.dir.path / "model.txt";
  const RunResult r = run_cli(
      "train " + f.base_args() + " --model " + model.string(), f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.err.find("training: 30 instances (p 10 / o 10 / n 10)") !=
        std::string::npos);
  CHECK(r.err.find("test: 12 instances (p 3 / o 5 / n 4)") !=
        std::string::npos);
  CHECK(r.err.find("model: " + model.string()) != std::string::npos);

  const std::string first = read_file(model);
  CHECK(first.rfind("citerank-tree v1\n", 0) == 0);

  const fs::path again = f.dir.path / "model2.txt";
  REQUIRE(run_cli("train " + f.base_args() + " --model " + again.string(),
                  f.dir.path)
              .code == 0);
  CHECK(read_file(again) == first);
}

TEST_CASE("train rejects an out-of-range split point") {
  Fixture f;
  const RunResult r = run_cli(
      "train --corpus " + f.corpus.string() + " --split 99" + f.lexicon_args +
          " --model " + (f.dir.path / "m.txt").string(),
      f.dir.path);
  CHECK(r.code == 2);
  CHECK(r.err.find("citerank: error: split point 99 exceeds corpus size 42") !=
        std::string::npos);
}

TEST_CASE("train requires a non-empty training split") {
  Fixture f;
  const RunResult r = run_cli(
      "train --corpus " + f.corpus.string() + " --split 0" + f.lexicon_args +
          " --model " + (f.dir.path / "m.txt").string(),
      f.dir.path);
  CHECK(r.code == 2);
  CHECK(r.err.find("training split is empty") != std::string::npos);
}

TEST_CASE("classify reproduces the gold test partition on separable data") {
  Fixture f;
  const fs::path model = f.train_model();
  const fs::path out = f.dir.path / "out";
  const RunResult r = run_cli("classify " + f.base_args() + " --model " +
                                  model.string() + " --out " + out.string(),
                              f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.err.find("classified 12 instances") != std::string::npos);

  const std::string predictions = read_file(out / "predictions.tsv");
  CHECK(count_lines(predictions) == Fixture::kTest);
  // The classes are separable, so the predictions equal the gold labels
  // and the file round-trips the input block byte for byte.
  CHECK(predictions == f.test_block);

  const fs::path out2 = f.dir.path / "out2";
  REQUIRE(run_cli("classify " + f.base_args() + " --model " + model.string() +
                      " --out " + out2.string(),
                  f.dir.path)
              .code == 0);
  CHECK(read_file(out2 / "predictions.tsv") == predictions);
}

TEST_CASE("classify fails cleanly when the model file is missing") {
  Fixture f;
  const RunResult r = run_cli(
      "classify " + f.base_args() + " --model /nonexistent/m.txt --out " +
          (f.dir.path / "out").string(),
      f.dir.path);
  CHECK(r.code == 2);
  CHECK(r.err.find("citerank: error:") != std::string::npos);
  CHECK(r.err.find("/nonexistent/m.txt") != std::string::npos);
}

TEST_CASE("evaluate writes both report formats") {
  Fixture f;
  const fs::path model = f.train_model();
  const fs::path out = f.dir.path / "eval";
  const RunResult r = run_cli("evaluate " + f.base_args() + " --model " +
                                  model.string() + " --out " + out.string(),
                              f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.err.find("evaluated 12 instances: accuracy 1.0000") !=
        std::string::npos);

  const auto j = nlohmann::json::parse(read_file(out / "evaluation.json"));
  CHECK(j["accuracy"].get<double>() == 1.0);
  CHECK(j["baseline"]["accuracy"].get<double>() ==
        doctest::Approx(5.0 / 12.0));
  CHECK(j["baseline"]["per_class"]["neutral"]["recall"].get<double>() == 1.0);
  const auto& confusion = j["confusion"];
  REQUIRE(confusion.size() == 3);
  int total = 0;
  for (const auto& row : confusion) {
    REQUIRE(row.size() == 3);
    for (const auto& cell : row) total += cell.get<int>();
  }
  CHECK(total == 12);

  const std::string text = read_file(out / "evaluation.txt");
  CHECK(text.find("Confusion matrix") != std::string::npos);
  CHECK(text.find("accuracy") != std::string::npos);
}

TEST_CASE("evaluate --baseline scores the all-neutral strategy") {
  Fixture f;
  const fs::path out = f.dir.path / "eval";
  // No model or lexicons needed: the baseline ignores the features.
  const RunResult r = run_cli(
      "evaluate --corpus " + f.corpus.string() + " --split 30 --baseline" +
          " --out " + out.string(),
      f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto j = nlohmann::json::parse(read_file(out / "evaluation.json"));
  CHECK(j["accuracy"].get<double>() == doctest::Approx(5.0 / 12.0));
  CHECK(j["per_class"]["neutral"]["recall"].get<double>() == 1.0);
}

TEST_CASE("evaluate --ablate writes one row per feature group") {
  Fixture f;
  const fs::path out = f.dir.path / "eval";

  RunResult r = run_cli("evaluate " + f.base_args() + " --ablate drop-one" +
                            " --out " + out.string(),
                        f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  std::string csv = read_file(out / "ablation.csv");
  CHECK(csv.rfind("feature_eliminated,correct,incorrect,accuracy\n", 0) == 0);
  CHECK(count_lines(csv) == 7);  // header + six groups
  CHECK(csv.find("\nSWN,") != std::string::npos);
  CHECK(csv.find("\nOL2,") != std::string::npos);

  r = run_cli("evaluate " + f.base_args() + " --ablate add-one --out " +
                  out.string(),
              f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  csv = read_file(out / "ablation.csv");
  CHECK(csv.rfind("feature_added,correct,incorrect,accuracy\n", 0) == 0);
  CHECK(count_lines(csv) == 7);  // header + six cumulative groups
  CHECK(csv.find("\nSWN,") != std::string::npos);
  CHECK(csv.find("\nOL2,") != std::string::npos);
}

TEST_CASE("evaluate rejects --baseline together with --ablate") {
  Fixture f;
  const RunResult r = run_cli(
      "evaluate " + f.base_args() + " --baseline --ablate drop-one --out " +
          (f.dir.path / "x").string(),
      f.dir.path);
  CHECK(r.code == 2);
  CHECK(r.err.find("mutually exclusive") != std::string::npos);
}

TEST_CASE("evaluate rejects unknown ablation modes") {
  Fixture f;
  const RunResult r = run_cli(
      "evaluate " + f.base_args() + " --ablate bogus --out " +
          (f.dir.path / "x").string(),
      f.dir.path);
  CHECK(r.code != 0);
  CHECK(r.code != 2);  // rejected by argument parsing, not by the run
}

TEST_CASE("rank on gold labels writes the full output set") {
  Fixture f;
  const fs::path out = f.dir.path / "rank";
  const RunResult r = run_cli(
      "rank --corpus " + f.corpus.string() + " --split 30 --polarity gold" +
          " --out " + out.string(),
      f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.err.find("ranked 3 papers") != std::string::npos);

  // t_hot: 3 positive + 2 neutral citations, t_mid: 2 neutral + 2 negative,
  // t_cold: 1 neutral + 2 negative; every citing paper is itself uncited.
  CHECK(read_file(out / "naive_ranking.csv") ==
        "rank,paper_id,score,bucket\n"
        "1,t_hot,5,1\n"
        "2,t_mid,4,2\n"
        "3,t_cold,3,3\n");
  CHECK(read_file(out / "m_index_ranking.csv") ==
        "rank,paper_id,score,bucket\n"
        "1,t_hot,4,1\n"
        "2,t_mid,0,2\n"
        "3,t_cold,-0.5,3\n");

  const auto summary =
      nlohmann::json::parse(read_file(out / "rank_diff_summary.json"));
  CHECK(summary["rank_changes"] == 0);
  CHECK(summary["bucket_changes"] == 0);
  CHECK(summary["kendall_tau"].get<double>() == 1.0);

  const auto naive_json =
      nlohmann::json::parse(read_file(out / "naive_ranking.json"));
  REQUIRE(naive_json.is_array());
  REQUIRE(naive_json.size() == 3);
  CHECK(naive_json[0]["paper_id"] == "t_hot");
  CHECK(naive_json[0]["score"].get<double>() == 5.0);

  CHECK(fs::exists(out / "m_index_ranking.json"));
  CHECK(fs::exists(out / "rank_diff.csv"));
  const std::string plot = read_file(out / "naive_plot.csv");
  CHECK(plot.rfind("paper_id,score,share\n", 0) == 0);
  CHECK(count_lines(plot) == 4);
}

TEST_CASE("rank honours --buckets") {
  Fixture f;
  const fs::path out = f.dir.path / "rank";
  const RunResult r = run_cli(
      "rank --corpus " + f.corpus.string() +
          " --split 30 --polarity gold --buckets 2 --out " + out.string(),
      f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(read_file(out / "naive_ranking.csv") ==
        "rank,paper_id,score,bucket\n"
        "1,t_hot,5,1\n"
        "2,t_mid,4,1\n"
        "3,t_cold,3,2\n");
}

TEST_CASE("rank over predicted labels matches gold when the model is exact") {
  Fixture f;
  const fs::path model = f.train_model();
  const fs::path gold_out = f.dir.path / "gold";
  const fs::path pred_out = f.dir.path / "pred";
  REQUIRE(run_cli("rank --corpus " + f.corpus.string() +
                      " --split 30 --polarity gold --out " + gold_out.string(),
                  f.dir.path)
              .code == 0);
  const RunResult r = run_cli("rank " + f.base_args() + " --model " +
                                  model.string() + " --out " +
                                  pred_out.string(),
                              f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(read_file(pred_out / "m_index_ranking.csv") ==
        read_file(gold_out / "m_index_ranking.csv"));
  CHECK(read_file(pred_out / "rank_diff_summary.json") ==
        read_file(gold_out / "rank_diff_summary.json"));
}

TEST_CASE("rank rejects an empty test partition") {
  Fixture f;
  const RunResult r = run_cli(
      "rank --corpus " + f.corpus.string() + " --split 42 --polarity gold" +
          " --out " + (f.dir.path / "x").string(),
      f.dir.path);
  CHECK(r.code == 2);
  CHECK(r.err.find("no citation instances") != std::string::npos);
}

TEST_CASE("compare writes only the diff report") {
  Fixture f;
  const fs::path rank_out = f.dir.path / "rank";
  const fs::path cmp_out = f.dir.path / "cmp";
  REQUIRE(run_cli("rank --corpus " + f.corpus.string() +
                      " --split 30 --polarity gold --out " + rank_out.string(),
                  f.dir.path)
              .code == 0);
  const RunResult r = run_cli(
      "compare --corpus " + f.corpus.string() +
          " --split 30 --polarity gold --out " + cmp_out.string(),
      f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(read_file(cmp_out / "rank_diff.csv") ==
        read_file(rank_out / "rank_diff.csv"));
  CHECK(read_file(cmp_out / "rank_diff_summary.json") ==
        read_file(rank_out / "rank_diff_summary.json"));
  CHECK_FALSE(fs::exists(cmp_out / "naive_ranking.csv"));
}

TEST_CASE("grid-search trains in place and sweeps the full grid") {
  Fixture f;
  const fs::path out = f.dir.path / "grid";
  const RunResult r = run_cli(
      "grid-search " + f.base_args() + " --out " + out.string(), f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.err.find("best:") != std::string::npos);

  const auto j = nlohmann::json::parse(read_file(out / "grid_search.json"));
  CHECK(j["points"].size() == 1350);
  CHECK(j["best"]["accuracy"].get<double>() == 1.0);
  const auto& p = j["points"][0];
  CHECK(p.contains("t1"));
  CHECK(p.contains("n1"));
  CHECK(p.contains("s1"));
  CHECK(p.contains("t2"));
  CHECK(p.contains("n2"));
  CHECK(p.contains("macro_f1"));
}

TEST_CASE("annotation sidecar must align with the corpus") {
  Fixture f;
  const fs::path anns = f.dir.file(
      "bad.ann", "we\tPRP\nuse\tVBP\n\nthe\tDT\ntool\tNN\n");
  const RunResult r = run_cli(
      "train " + f.base_args() + " --annotations " + anns.string() +
          " --model " + (f.dir.path / "m.txt").string(),
      f.dir.path);
  CHECK(r.code == 2);
  CHECK(r.err.find("annotation count 2 does not match corpus size 42") !=
        std::string::npos);
}

TEST_CASE("an aligned annotation sidecar is accepted") {
  Fixture f;
  // One block per corpus line: every token tagged NN, no dependencies.
  std::string sidecar;
  const std::string corpus_text = read_file(f.corpus);
  std::istringstream lines(corpus_text);
  std::string line;
  while (std::getline(lines, line)) {
    const std::size_t a = line.find('\t');
    const std::size_t b = line.find('\t', a + 1);
    const std::size_t c = line.find('\t', b + 1);
    std::istringstream words(line.substr(c + 1));
    std::string w;
    while (words >> w) sidecar += w + "\tNN\n";
    sidecar += "\n";
  }
  const fs::path anns = f.dir.file("good.ann", sidecar);
  const RunResult r = run_cli(
      "train " + f.base_args() + " --annotations " + anns.string() +
          " --model " + (f.dir.path / "m.txt").string(),
      f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
}

TEST_CASE("a config file supplies options and flags override it") {
  Fixture f;
  const fs::path cfgfile = f.dir.file(
      "run.cfg", "corpus=" + f.corpus.string() + "\nsplit=6\n");
  const fs::path model = f.dir.path / "m.txt";

  RunResult r = run_cli("train --config " + cfgfile.string() +
                            f.lexicon_args + " --model " + model.string(),
                        f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.err.find("training: 6 instances") != std::string::npos);

  r = run_cli("train --config " + cfgfile.string() + " --split 30" +
                  f.lexicon_args + " --model " + model.string(),
              f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.err.find("training: 30 instances") != std::string::npos);
}

TEST_CASE("malformed config files are rejected with the offending line") {
  Fixture f;
  const std::string tail =
      f.lexicon_args + " --model " + (f.dir.path / "m.txt").string();

  const fs::path unknown = f.dir.file("unknown.cfg", "corpsu=typo\n");
  RunResult r = run_cli("train --config " + unknown.string() + tail,
                        f.dir.path);
  CHECK(r.code == 2);
  CHECK(r.err.find(unknown.string() + ":1: unknown key 'corpsu'") !=
        std::string::npos);

  const fs::path noeq = f.dir.file("noeq.cfg", "# fine\n\njust words\n");
  r = run_cli("train --config " + noeq.string() + tail, f.dir.path);
  CHECK(r.code == 2);
  CHECK(r.err.find(noeq.string() + ":3: expected key=value") !=
        std::string::npos);

  const fs::path badnum = f.dir.file("badnum.cfg", "split=soon\n");
  r = run_cli("train --config " + badnum.string() + tail, f.dir.path);
  CHECK(r.code == 2);
  CHECK(r.err.find("invalid value 'soon' for key 'split'") !=
        std::string::npos);

  r = run_cli("train --config " + (f.dir.path / "absent.cfg").string() + tail,
              f.dir.path);
  CHECK(r.code == 2);
  CHECK(r.err.find("cannot open config file") != std::string::npos);
}

TEST_CASE("missing lexicon files name the offending path") {
  Fixture f;
  const fs::path missing = f.dir.path / "no-such-lexicon.tsv";
  const RunResult r = run_cli(
      "train --corpus " + f.corpus.string() + " --split 30 --lexicon-swn " +
          missing.string() + " --lexicon-pos-ngrams " + missing.string() +
          " --lexicon-neg-words " + missing.string() + " --lexicon-ol1 " +
          missing.string() + " " + missing.string() + " --lexicon-ol2 " +
          missing.string() + " " + missing.string() + " --model " +
          (f.dir.path / "m.txt").string(),
      f.dir.path);
  CHECK(r.code == 2);
  CHECK(r.err.find("citerank: error:") != std::string::npos);
  CHECK(r.err.find(missing.string()) != std::string::npos);
}

TEST_CASE("omitting a required option is reported") {
  Fixture f;
  const RunResult r = run_cli(
      "train --corpus " + f.corpus.string() + " --split 30" + f.lexicon_args,
      f.dir.path);
  CHECK(r.code == 2);
  CHECK(r.err.find("missing required option --model") != std::string::npos);
}

TEST_CASE("a subcommand is required") {
  Fixture f;
  CHECK(run_cli("", f.dir.path).code != 0);
  CHECK(run_cli("--help", f.dir.path).code == 0);
}

TEST_CASE("the shipped lexicon files load") {
  Fixture f;
  const fs::path data = env_or_fail("CITERANK_DATA");
  const fs::path model = f.dir.path / "m.txt";
  const std::string args =
      "train --corpus " + f.corpus.string() + " --split 30" +
      " --lexicon-swn " + (data / "scored_words.tsv").string() +
      " --lexicon-pos-ngrams " + (data / "positive_ngrams.txt").string() +
      " --lexicon-neg-words " + (data / "negative_words.txt").string() +
      " --lexicon-ol1 " + (data / "ol1_positive.txt").string() + " " +
      (data / "ol1_negative.txt").string() + " --lexicon-ol2 " +
      (data / "ol2_positive.txt").string() + " " +
      (data / "ol2_negative.txt").string() + " --model " + model.string();
  const RunResult r = run_cli(args, f.dir.path);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(fs::exists(model));
}
