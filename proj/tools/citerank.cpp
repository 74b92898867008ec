// citerank: batch driver for the classification + ranking pipeline.
//
// Subcommands: train, classify, evaluate, rank, compare, grid-search.
// Diagnostics go to stderr, data to files; identical inputs produce
// byte-identical outputs. Load or validation failures exit with code 2.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "citerank/classifier.hpp"
#include "citerank/corpus.hpp"
#include "citerank/evaluation.hpp"
#include "citerank/features.hpp"
#include "citerank/lexicons.hpp"
#include "citerank/ranking.hpp"

namespace fs = std::filesystem;
using namespace citerank;

namespace {

struct RunConfig {
  std::string config_path;
  std::string corpus;
  std::string annotations;
  std::string lexicon_swn;
  std::string lexicon_pos_ngrams;
  std::string lexicon_neg_words;
  std::vector<std::string> lexicon_ol1;  // positive path, negative path
  std::vector<std::string> lexicon_ol2;
  std::string model;
  std::string out = ".";
  Thresholds thresholds;
  std::size_t split = 6736;
  std::size_t buckets = 5;
  std::string polarity = "predicted";
  std::string ablate;
  bool baseline = false;
};

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw std::runtime_error(std::string("missing required option ") + flag);
  }
  return value;
}

LexiconBundle load_bundle(const RunConfig& cfg) {
  LexiconBundle b;
  b.scored = load_scored_lexicon(need(cfg.lexicon_swn, "--lexicon-swn"));
  b.positive_ngrams = load_ngram_lexicon(
      need(cfg.lexicon_pos_ngrams, "--lexicon-pos-ngrams"),
      Polarity::Positive);
  b.negative_words = load_ngram_lexicon(
      need(cfg.lexicon_neg_words, "--lexicon-neg-words"), Polarity::Negative);
  if (cfg.lexicon_ol1.size() != 2) {
    throw std::runtime_error(
        "missing required option --lexicon-ol1 (positive and negative paths)");
  }
  if (cfg.lexicon_ol2.size() != 2) {
    throw std::runtime_error(
        "missing required option --lexicon-ol2 (positive and negative paths)");
  }
  b.ol1 = load_opinion_pair(cfg.lexicon_ol1[0], cfg.lexicon_ol1[1],
                            OpinionLabel::OL1);
  b.ol2 = load_opinion_pair(cfg.lexicon_ol2[0], cfg.lexicon_ol2[1],
                            OpinionLabel::OL2);
  return b;
}

// Annotations are optional; when given, block count must match the corpus.
std::vector<SyntacticAnnotation> load_aligned_annotations(const RunConfig& cfg,
                                                          std::size_t n) {
  if (cfg.annotations.empty()) return {};
  auto anns = load_annotations(cfg.annotations);
  if (anns.size() != n) {
    throw std::runtime_error("annotation count " + std::to_string(anns.size()) +
                             " does not match corpus size " +
                             std::to_string(n));
  }
  return anns;
}

std::optional<SyntacticAnnotation> ann_at(
    const std::vector<SyntacticAnnotation>& anns, std::size_t i) {
  if (anns.empty()) return std::nullopt;
  return anns[i];
}

struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

void check_split(std::size_t split, std::size_t n) {
  if (split > n) {
    throw std::runtime_error("split point " + std::to_string(split) +
                             " exceeds corpus size " + std::to_string(n));
  }
}

Range train_range(const RunConfig& cfg, std::size_t n) {
  check_split(cfg.split, n);
  return {0, cfg.split};
}

Range test_range(const RunConfig& cfg, std::size_t n) {
  check_split(cfg.split, n);
  return {cfg.split, n};
}

ClassCounts range_counts(const std::vector<CitationInstance>& corpus,
                         Range r) {
  ClassCounts c;
  for (std::size_t i = r.begin; i < r.end; ++i) {
    if (!corpus[i].gold) {
      throw std::runtime_error("instance " + std::to_string(i + 1) +
                               " has no gold polarity");
    }
    ++c.of(*corpus[i].gold);
  }
  return c;
}

struct Dataset {
  std::vector<FeatureVector> vectors;
  std::vector<FeatureArray> x;
  std::vector<Polarity> y;
};

Dataset featurize(const std::vector<CitationInstance>& corpus,
                  const std::vector<SyntacticAnnotation>& anns, Range r,
                  const LexiconBundle& bundle) {
  Dataset d;
  d.vectors.reserve(r.size());
  d.x.reserve(r.size());
  d.y.reserve(r.size());
  for (std::size_t i = r.begin; i < r.end; ++i) {
    if (!corpus[i].gold) {
      throw std::runtime_error("instance " + std::to_string(i + 1) +
                               " has no gold polarity");
    }
    FeatureVector v = extract(corpus[i], ann_at(anns, i), bundle);
    d.x.push_back(v.to_array());
    d.y.push_back(*corpus[i].gold);
    d.vectors.push_back(std::move(v));
  }
  return d;
}

fs::path out_file(const RunConfig& cfg, const char* name) {
  fs::path dir(cfg.out);
  if (!dir.empty()) fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
}

void print_counts(const char* label, const ClassCounts& c) {
  std::fprintf(stderr, "%s: %lld instances (p %lld / o %lld / n %lld)\n",
               label, static_cast<long long>(c.total()),
               static_cast<long long>(c.positive),
               static_cast<long long>(c.neutral),
               static_cast<long long>(c.negative));
}

void cmd_train(const RunConfig& cfg) {
  const auto corpus = load_corpus(need(cfg.corpus, "--corpus"));
  const auto anns = load_aligned_annotations(cfg, corpus.size());
  const auto bundle = load_bundle(cfg);
  const Range train_r = train_range(cfg, corpus.size());
  const Range test_r = test_range(cfg, corpus.size());
  if (train_r.size() == 0) {
    throw std::runtime_error("training split is empty");
  }
  print_counts("training", range_counts(corpus, train_r));
  if (test_r.size() > 0) print_counts("test", range_counts(corpus, test_r));

  const Dataset train_set = featurize(corpus, anns, train_r, bundle);
  const DecisionTree tree = train(train_set.x, train_set.y);
  const std::string& model_path = need(cfg.model, "--model");
  tree.save(model_path);
  std::fprintf(stderr, "model: %s (%zu nodes, %zu leaves)\n",
               model_path.c_str(), tree.node_count(), tree.leaf_count());
}

void cmd_classify(const RunConfig& cfg) {
  cfg.thresholds.validate();
  auto corpus = load_corpus(need(cfg.corpus, "--corpus"));
  const auto anns = load_aligned_annotations(cfg, corpus.size());
  const auto bundle = load_bundle(cfg);
  const DecisionTree tree = DecisionTree::load(need(cfg.model, "--model"));
  const Range r = test_range(cfg, corpus.size());

  std::vector<CitationInstance> classified;
  classified.reserve(r.size());
  for (std::size_t i = r.begin; i < r.end; ++i) {
    CitationInstance inst = corpus[i];
    inst.gold = classify_pipeline(inst, ann_at(anns, i), bundle, tree,
                                  cfg.thresholds);
    classified.push_back(std::move(inst));
  }
  const fs::path path = out_file(cfg, "predictions.tsv");
  write_file(path, serialize_corpus(classified));
  std::fprintf(stderr, "classified %zu instances -> %s\n", classified.size(),
               path.string().c_str());
}

void cmd_evaluate(const RunConfig& cfg) {
  cfg.thresholds.validate();
  if (cfg.baseline && !cfg.ablate.empty()) {
    throw std::runtime_error("--baseline and --ablate are mutually exclusive");
  }
  const auto corpus = load_corpus(need(cfg.corpus, "--corpus"));
  const Range test_r = test_range(cfg, corpus.size());
  if (test_r.size() == 0) throw std::runtime_error("test split is empty");

  std::vector<Polarity> gold;
  gold.reserve(test_r.size());
  for (std::size_t i = test_r.begin; i < test_r.end; ++i) {
    if (!corpus[i].gold) {
      throw std::runtime_error("instance " + std::to_string(i + 1) +
                               " has no gold polarity");
    }
    gold.push_back(*corpus[i].gold);
  }

  if (!cfg.ablate.empty()) {
    const auto anns = load_aligned_annotations(cfg, corpus.size());
    const auto bundle = load_bundle(cfg);
    const Dataset train_set =
        featurize(corpus, anns, train_range(cfg, corpus.size()), bundle);
    const Dataset test_set = featurize(corpus, anns, test_r, bundle);
    const AblationMode mode = cfg.ablate == "drop-one" ? AblationMode::DropOne
                                                       : AblationMode::AddOne;
    std::vector<std::string> names;
    for (const auto& g : default_feature_groups()) names.push_back(g.name);
    const auto rows = ablation(train_set.x, train_set.y, test_set.x,
                               test_set.y, names, mode);
    const fs::path path = out_file(cfg, "ablation.csv");
    write_file(path, ablation_report_csv(rows, mode));
    std::fprintf(stderr, "ablation (%s): %zu rows -> %s\n",
                 cfg.ablate.c_str(), rows.size(), path.string().c_str());
    return;
  }

  std::vector<Polarity> predicted;
  predicted.reserve(gold.size());
  if (cfg.baseline) {
    predicted.assign(gold.size(), Polarity::Neutral);
  } else {
    const auto anns = load_aligned_annotations(cfg, corpus.size());
    const auto bundle = load_bundle(cfg);
    const DecisionTree tree = DecisionTree::load(need(cfg.model, "--model"));
    for (std::size_t i = test_r.begin; i < test_r.end; ++i) {
      predicted.push_back(classify_pipeline(corpus[i], ann_at(anns, i),
                                            bundle, tree, cfg.thresholds));
    }
  }

  const ConfusionMatrix m = confusion(gold, predicted);
  const ClassMetrics system = metrics(m);
  const ClassMetrics base = baseline_all_neutral(gold);
  write_file(out_file(cfg, "evaluation.json"),
             evaluation_report_json(m, system, base));
  write_file(out_file(cfg, "evaluation.txt"),
             evaluation_report_text(m, system, base));
  std::fprintf(stderr,
               "evaluated %zu instances: accuracy %.4f (baseline %.4f)\n",
               gold.size(), system.accuracy, base.accuracy);
}

std::vector<ClassifiedCitation> classified_instances(const RunConfig& cfg) {
  const auto corpus = load_corpus(need(cfg.corpus, "--corpus"));
  const Range r = test_range(cfg, corpus.size());
  std::vector<ClassifiedCitation> out;
  out.reserve(r.size());
  if (cfg.polarity == "gold") {
    for (std::size_t i = r.begin; i < r.end; ++i) {
      if (!corpus[i].gold) {
        throw std::runtime_error("instance " + std::to_string(i + 1) +
                                 " has no gold polarity");
      }
      out.push_back(ClassifiedCitation{corpus[i].source_id,
                                       corpus[i].target_id, *corpus[i].gold});
    }
    return out;
  }
  cfg.thresholds.validate();
  const auto anns = load_aligned_annotations(cfg, corpus.size());
  const auto bundle = load_bundle(cfg);
  const DecisionTree tree = DecisionTree::load(need(cfg.model, "--model"));
  for (std::size_t i = r.begin; i < r.end; ++i) {
    const Polarity p = classify_pipeline(corpus[i], ann_at(anns, i), bundle,
                                         tree, cfg.thresholds);
    out.push_back(
        ClassifiedCitation{corpus[i].source_id, corpus[i].target_id, p});
  }
  return out;
}

struct RankOutputs {
  RankedList naive;
  RankedList m;
  RankDiffReport diff;
};

RankOutputs compute_rankings(const RunConfig& cfg) {
  const auto instances = classified_instances(cfg);
  if (instances.empty()) throw std::runtime_error("no citation instances");
  const CitationGraph graph = CitationGraph::build(instances);
  RankOutputs out;
  out.naive = bucketize(naive_rank(graph), cfg.buckets);
  out.m = bucketize(m_index(graph), cfg.buckets);
  out.diff = compare_rankings(out.naive, out.m);
  return out;
}

void print_diff_summary(const RankOutputs& r) {
  std::fprintf(stderr,
               "ranked %zu papers: %zu rank changes, %zu bucket changes, "
               "kendall tau %.4f\n",
               r.naive.entries.size(), r.diff.rank_changes,
               r.diff.bucket_changes, r.diff.kendall_tau);
}

void cmd_rank(const RunConfig& cfg) {
  const RankOutputs r = compute_rankings(cfg);
  write_file(out_file(cfg, "naive_ranking.csv"), ranking_csv(r.naive));
  write_file(out_file(cfg, "naive_ranking.json"), ranking_json(r.naive));
  write_file(out_file(cfg, "m_index_ranking.csv"), ranking_csv(r.m));
  write_file(out_file(cfg, "m_index_ranking.json"), ranking_json(r.m));
  write_file(out_file(cfg, "rank_diff.csv"), rank_diff_csv(r.diff));
  write_file(out_file(cfg, "rank_diff_summary.json"),
             rank_diff_summary_json(r.diff));
  write_file(out_file(cfg, "naive_plot.csv"), plot_data_csv(r.naive));
  write_file(out_file(cfg, "m_index_plot.csv"), plot_data_csv(r.m));
  print_diff_summary(r);
}

void cmd_compare(const RunConfig& cfg) {
  const RankOutputs r = compute_rankings(cfg);
  write_file(out_file(cfg, "rank_diff.csv"), rank_diff_csv(r.diff));
  write_file(out_file(cfg, "rank_diff_summary.json"),
             rank_diff_summary_json(r.diff));
  print_diff_summary(r);
}

nlohmann::ordered_json grid_point_json(const GridPoint& p) {
  nlohmann::ordered_json j;
  j["t1"] = p.thresholds.t1;
  j["n1"] = p.thresholds.n1;
  j["s1"] = p.thresholds.s1;
  j["t2"] = p.thresholds.t2;
  j["n2"] = p.thresholds.n2;
  j["accuracy"] = p.accuracy;
  j["macro_f1"] = p.macro_f1;
  return j;
}

void cmd_grid_search(const RunConfig& cfg) {
  const auto corpus = load_corpus(need(cfg.corpus, "--corpus"));
  const auto anns = load_aligned_annotations(cfg, corpus.size());
  const auto bundle = load_bundle(cfg);
  const Range test_r = test_range(cfg, corpus.size());
  if (test_r.size() == 0) throw std::runtime_error("test split is empty");

  DecisionTree tree;
  if (!cfg.model.empty()) {
    tree = DecisionTree::load(cfg.model);
  } else {
    const Dataset train_set =
        featurize(corpus, anns, train_range(cfg, corpus.size()), bundle);
    tree = train(train_set.x, train_set.y);
  }

  const Dataset test_set = featurize(corpus, anns, test_r, bundle);
  std::vector<ScoredPrediction> preds;
  preds.reserve(test_set.x.size());
  for (std::size_t i = 0; i < test_set.x.size(); ++i) {
    ScoredPrediction sp;
    sp.prediction = tree.predict(test_set.x[i]);
    sp.posmatch = test_set.vectors[i].ppw;
    sp.negmatch = test_set.vectors[i].npw;
    preds.push_back(sp);
  }

  const GridSearchResult result = grid_search(preds, test_set.y);
  nlohmann::ordered_json j;
  j["best"] = grid_point_json(result.best);
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& p : result.points) points.push_back(grid_point_json(p));
  j["points"] = std::move(points);
  const fs::path path = out_file(cfg, "grid_search.json");
  write_file(path, j.dump(2) + "\n");
  std::fprintf(stderr,
               "best: t1=%d n1=%d s1=%.1f t2=%d n2=%d "
               "(accuracy %.4f, macro F1 %.4f) -> %s\n",
               result.best.thresholds.t1, result.best.thresholds.n1,
               result.best.thresholds.s1, result.best.thresholds.t2,
               result.best.thresholds.n2, result.best.accuracy,
               result.best.macro_f1, path.string().c_str());
}

void add_config_flag(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--config", cfg.config_path,
                  "key=value config file; flags override file values");
}

std::string trim(const std::string& s) {
  const char* ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

// Flat key=value file, '#' comments. Keys mirror the long flags without
// the leading dashes; a key is skipped when the same flag was given on
// the command line, so flags override file values.
void apply_config(const CLI::App& sub, RunConfig& cfg) {
  if (cfg.config_path.empty()) return;
  std::ifstream in(cfg.config_path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + cfg.config_path);
  }

  auto flag_given = [&sub](const std::string& key) {
    const CLI::Option* opt = sub.get_option_no_throw("--" + key);
    return opt != nullptr && opt->count() > 0;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = cfg.config_path + ":" + std::to_string(lineno);
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(where + ": expected key=value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error(where + ": expected key=value");
    }
    if (flag_given(key)) continue;

    auto bad_value = [&] {
      return std::runtime_error(where + ": invalid value '" + value +
                                "' for key '" + key + "'");
    };
    auto as_int = [&](int& out) {
      const auto* end = value.data() + value.size();
      if (std::from_chars(value.data(), end, out).ptr != end) throw bad_value();
    };
    auto as_size = [&](std::size_t& out) {
      const auto* end = value.data() + value.size();
      if (std::from_chars(value.data(), end, out).ptr != end) throw bad_value();
    };
    auto as_pair = [&](std::vector<std::string>& out) {
      out = split_ws(value);
      if (out.size() != 2) {
        throw std::runtime_error(where + ": key '" + key +
                                 "' needs two paths (positive negative)");
      }
    };

    if (key == "corpus") {
      cfg.corpus = value;
    } else if (key == "annotations") {
      cfg.annotations = value;
    } else if (key == "lexicon-swn") {
      cfg.lexicon_swn = value;
    } else if (key == "lexicon-pos-ngrams") {
      cfg.lexicon_pos_ngrams = value;
    } else if (key == "lexicon-neg-words") {
      cfg.lexicon_neg_words = value;
    } else if (key == "lexicon-ol1") {
      as_pair(cfg.lexicon_ol1);
    } else if (key == "lexicon-ol2") {
      as_pair(cfg.lexicon_ol2);
    } else if (key == "model") {
      cfg.model = value;
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "t1") {
      as_int(cfg.thresholds.t1);
    } else if (key == "n1") {
      as_int(cfg.thresholds.n1);
    } else if (key == "s1") {
      try {
        std::size_t used = 0;
        cfg.thresholds.s1 = std::stod(value, &used);
        if (used != value.size()) throw bad_value();
      } catch (const std::logic_error&) {
        throw bad_value();
      }
    } else if (key == "t2") {
      as_int(cfg.thresholds.t2);
    } else if (key == "n2") {
      as_int(cfg.thresholds.n2);
    } else if (key == "split") {
      as_size(cfg.split);
    } else if (key == "buckets") {
      as_size(cfg.buckets);
    } else if (key == "polarity") {
      if (value != "gold" && value != "predicted") throw bad_value();
      cfg.polarity = value;
    } else if (key == "ablate") {
      if (value != "drop-one" && value != "add-one") throw bad_value();
      cfg.ablate = value;
    } else if (key == "baseline") {
      if (value == "true" || value == "1") {
        cfg.baseline = true;
      } else if (value == "false" || value == "0") {
        cfg.baseline = false;
      } else {
        throw bad_value();
      }
    } else {
      throw std::runtime_error(where + ": unknown key '" + key + "'");
    }
  }
}

void add_corpus_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--corpus", cfg.corpus, "citation corpus TSV");
  sub->add_option("--annotations", cfg.annotations,
                  "POS/dependency annotation sidecar");
  sub->add_option("--split", cfg.split,
                  "instances in the training split (rest is test)");
  sub->add_option("--out", cfg.out, "output directory");
}

void add_lexicon_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--lexicon-swn", cfg.lexicon_swn,
                  "scored sentiment lexicon (word<TAB>score)");
  sub->add_option("--lexicon-pos-ngrams", cfg.lexicon_pos_ngrams,
                  "positive citation n-grams");
  sub->add_option("--lexicon-neg-words", cfg.lexicon_neg_words,
                  "negative citation words");
  sub->add_option("--lexicon-ol1", cfg.lexicon_ol1,
                  "opinion lexicon 1: positive and negative file")
      ->expected(2);
  sub->add_option("--lexicon-ol2", cfg.lexicon_ol2,
                  "opinion lexicon 2: positive and negative file")
      ->expected(2);
}

void add_threshold_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--t1", cfg.thresholds.t1, "rule 1 posmatch-negmatch margin");
  sub->add_option("--n1", cfg.thresholds.n1, "rule 2 negmatch threshold");
  sub->add_option("--s1", cfg.thresholds.s1, "rule 3 confidence threshold");
  sub->add_option("--t2", cfg.thresholds.t2, "rule 4 posmatch-negmatch margin");
  sub->add_option("--n2", cfg.thresholds.n2, "rule 5 negmatch threshold");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"citation sentiment classification and ranking toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* train_sub =
      app.add_subcommand("train", "induce a decision tree from the training split");
  add_config_flag(train_sub, cfg);
  add_corpus_flags(train_sub, cfg);
  add_lexicon_flags(train_sub, cfg);
  train_sub->add_option("--model", cfg.model, "model file to write");

  CLI::App* classify_sub =
      app.add_subcommand("classify", "label the test split with a trained model");
  add_config_flag(classify_sub, cfg);
  add_corpus_flags(classify_sub, cfg);
  add_lexicon_flags(classify_sub, cfg);
  add_threshold_flags(classify_sub, cfg);
  classify_sub->add_option("--model", cfg.model, "model file to load");

  CLI::App* evaluate_sub =
      app.add_subcommand("evaluate", "score predictions on the test split");
  add_config_flag(evaluate_sub, cfg);
  add_corpus_flags(evaluate_sub, cfg);
  add_lexicon_flags(evaluate_sub, cfg);
  add_threshold_flags(evaluate_sub, cfg);
  evaluate_sub->add_option("--model", cfg.model, "model file to load");
  evaluate_sub->add_flag("--baseline", cfg.baseline,
                         "score the all-neutral baseline instead of a model");
  evaluate_sub
      ->add_option("--ablate", cfg.ablate,
                   "feature-group ablation mode (retrains per row)")
      ->check(CLI::IsMember({"drop-one", "add-one"}));

  CLI::App* rank_sub =
      app.add_subcommand("rank", "rank cited papers by count and by M-index");
  add_config_flag(rank_sub, cfg);
  add_corpus_flags(rank_sub, cfg);
  add_lexicon_flags(rank_sub, cfg);
  add_threshold_flags(rank_sub, cfg);
  rank_sub->add_option("--model", cfg.model, "model file to load");
  rank_sub->add_option("--buckets", cfg.buckets, "bucket count");
  rank_sub->add_option("--polarity", cfg.polarity, "edge polarity source")
      ->check(CLI::IsMember({"gold", "predicted"}));

  CLI::App* compare_sub = app.add_subcommand(
      "compare", "rank-difference report (naive vs M-index) only");
  add_config_flag(compare_sub, cfg);
  add_corpus_flags(compare_sub, cfg);
  add_lexicon_flags(compare_sub, cfg);
  add_threshold_flags(compare_sub, cfg);
  compare_sub->add_option("--model", cfg.model, "model file to load");
  compare_sub->add_option("--buckets", cfg.buckets, "bucket count");
  compare_sub->add_option("--polarity", cfg.polarity, "edge polarity source")
      ->check(CLI::IsMember({"gold", "predicted"}));

  CLI::App* grid_sub = app.add_subcommand(
      "grid-search", "sweep cascade thresholds against tree predictions");
  add_config_flag(grid_sub, cfg);
  add_corpus_flags(grid_sub, cfg);
  add_lexicon_flags(grid_sub, cfg);
  grid_sub->add_option("--model", cfg.model,
                       "model file to load (default: train in place)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_sub->parsed()) {
      apply_config(*train_sub, cfg);
      cmd_train(cfg);
    } else if (classify_sub->parsed()) {
      apply_config(*classify_sub, cfg);
      cmd_classify(cfg);
    } else if (evaluate_sub->parsed()) {
      apply_config(*evaluate_sub, cfg);
      cmd_evaluate(cfg);
    } else if (rank_sub->parsed()) {
      apply_config(*rank_sub, cfg);
      cmd_rank(cfg);
    } else if (compare_sub->parsed()) {
      apply_config(*compare_sub, cfg);
      cmd_compare(cfg);
    } else if (grid_sub->parsed()) {
      apply_config(*grid_sub, cfg);
      cmd_grid_search(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "citerank: error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
