#include "citerank/evaluation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace citerank {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::size_t class_index(Polarity p) {
  switch (p) {
    case Polarity::Positive: return 0;
    case Polarity::Neutral: return 1;
    case Polarity::Negative: return 2;
  }
  return 1;
}

constexpr const char* kClassNames[3] = {"positive", "neutral", "negative"};

double ratio(std::int64_t numerator, std::int64_t denominator) {
  return denominator == 0
             ? 0.0
             : static_cast<double>(numerator) / static_cast<double>(denominator);
}

}  // namespace

std::int64_t ConfusionMatrix::total() const noexcept {
  std::int64_t t = 0;
  for (const auto& row : cells) {
    for (std::int64_t c : row) t += c;
  }
  return t;
}

std::int64_t ConfusionMatrix::trace() const noexcept {
  return cells[0][0] + cells[1][1] + cells[2][2];
}

std::int64_t ConfusionMatrix::row_sum(std::size_t row) const noexcept {
  return cells[row][0] + cells[row][1] + cells[row][2];
}

std::int64_t ConfusionMatrix::col_sum(std::size_t col) const noexcept {
  return cells[0][col] + cells[1][col] + cells[2][col];
}

ConfusionMatrix confusion(const std::vector<Polarity>& gold,
                          const std::vector<Polarity>& predicted) {
  if (gold.size() != predicted.size()) {
    fail("confusion: gold and predicted label counts differ (" +
         std::to_string(gold.size()) + " vs " +
         std::to_string(predicted.size()) + ")");
  }
  if (gold.empty()) fail("confusion: no labels");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++m.cells[class_index(gold[i])][class_index(predicted[i])];
  }
  return m;
}

ClassMetrics metrics(const ConfusionMatrix& m) {
  if (m.total() == 0) fail("metrics: empty confusion matrix");
  ClassMetrics result;
  for (std::size_t c = 0; c < 3; ++c) {
    PRF& prf = result.per_class[c];
    prf.precision = ratio(m.cells[c][c], m.col_sum(c));
    prf.recall = ratio(m.cells[c][c], m.row_sum(c));
    double denom = prf.precision + prf.recall;
    prf.f1 = denom == 0.0 ? 0.0 : 2.0 * prf.precision * prf.recall / denom;
  }
  result.accuracy =
      static_cast<double>(m.trace()) / static_cast<double>(m.total());
  return result;
}

ClassMetrics baseline_all_neutral(const std::vector<Polarity>& gold) {
  if (gold.empty()) fail("baseline: no labels");
  std::vector<Polarity> predicted(gold.size(), Polarity::Neutral);
  return metrics(confusion(gold, predicted));
}

const std::vector<FeatureGroup>& default_feature_groups() {
  static const std::vector<FeatureGroup> groups = {
      {"SWN", {kAS}},
      {"CIT", {kPPW, kNPW}},
      {"POS", {kPosAdj, kPosAdv, kPosFw, kPosAdvAdj}},
      {"DEP", {kDepAdvmod, kDepAcomp, kDepAmod}},
      {"OL1", {kOl1Pos, kOl1Neg}},
      {"OL2", {kOl2Pos, kOl2Neg}},
  };
  return groups;
}

namespace {

const FeatureGroup& find_group(const std::string& name) {
  for (const FeatureGroup& g : default_feature_groups()) {
    if (g.name == name) return g;
  }
  fail("unknown feature group '" + name + "'");
}

std::vector<FeatureArray> mask_columns(const std::vector<FeatureArray>& vectors,
                                       const std::vector<bool>& keep) {
  std::vector<FeatureArray> masked(vectors);
  for (FeatureArray& v : masked) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      if (!keep[f]) v[f] = 0.0;
    }
  }
  return masked;
}

AblationRow evaluate_masked(const std::string& name,
                            const std::vector<FeatureArray>& train_vectors,
                            const std::vector<Polarity>& train_labels,
                            const std::vector<FeatureArray>& test_vectors,
                            const std::vector<Polarity>& test_labels,
                            const std::vector<bool>& keep,
                            const TrainConfig& train_config,
                            const Thresholds& thresholds) {
  std::vector<FeatureArray> train_masked = mask_columns(train_vectors, keep);
  std::vector<FeatureArray> test_masked = mask_columns(test_vectors, keep);
  DecisionTree tree = train(train_masked, train_labels, train_config);

  AblationRow row;
  row.group = name;
  for (std::size_t i = 0; i < test_masked.size(); ++i) {
    Prediction pred = tree.predict(test_masked[i]);
    Polarity out = postprocess(pred, static_cast<int>(test_masked[i][kPPW]),
                               static_cast<int>(test_masked[i][kNPW]),
                               thresholds);
    if (out == test_labels[i]) {
      ++row.correct;
    } else {
      ++row.incorrect;
    }
  }
  row.accuracy = ratio(row.correct, row.correct + row.incorrect);
  return row;
}

}  // namespace

std::vector<AblationRow> ablation(
    const std::vector<FeatureArray>& train_vectors,
    const std::vector<Polarity>& train_labels,
    const std::vector<FeatureArray>& test_vectors,
    const std::vector<Polarity>& test_labels,
    const std::vector<std::string>& group_names, AblationMode mode,
    const TrainConfig& train_config, const Thresholds& thresholds) {
  if (test_vectors.size() != test_labels.size()) {
    fail("ablation: test vectors and labels differ in length");
  }
  std::vector<const FeatureGroup*> groups;
  groups.reserve(group_names.size());
  for (const std::string& name : group_names) groups.push_back(&find_group(name));

  std::vector<AblationRow> rows;
  if (mode == AblationMode::DropOne) {
    for (const FeatureGroup* dropped : groups) {
      std::vector<bool> keep(kFeatureCount, true);
      for (std::size_t col : dropped->columns) keep[col] = false;
      rows.push_back(evaluate_masked(dropped->name, train_vectors, train_labels,
                                     test_vectors, test_labels, keep,
                                     train_config, thresholds));
    }
  } else {
    std::vector<bool> keep(kFeatureCount, false);
    if (groups.empty()) {
      rows.push_back(evaluate_masked("(none)", train_vectors, train_labels,
                                     test_vectors, test_labels, keep,
                                     train_config, thresholds));
    }
    for (const FeatureGroup* added : groups) {
      for (std::size_t col : added->columns) keep[col] = true;
      rows.push_back(evaluate_masked(added->name, train_vectors, train_labels,
                                     test_vectors, test_labels, keep,
                                     train_config, thresholds));
    }
  }
  return rows;
}

GridSearchResult grid_search(const std::vector<ScoredPrediction>& predictions,
                             const std::vector<Polarity>& gold) {
  if (predictions.size() != gold.size() || gold.empty()) {
    fail("grid search: predictions and gold labels must align and be non-empty");
  }
  GridSearchResult result;
  bool first = true;
  for (int t1 = 1; t1 <= 5; ++t1) {
    for (int n1 = 1; n1 <= 5; ++n1) {
      for (int s_step = 0; s_step <= 5; ++s_step) {
        double s1 = 0.5 + 0.1 * s_step;
        for (int t2 = 1; t2 <= t1; ++t2) {
          for (int n2 = 1; n2 <= n1; ++n2) {
            Thresholds th{t1, n1, s1, t2, n2};
            std::vector<Polarity> out;
            out.reserve(predictions.size());
            for (const ScoredPrediction& sp : predictions) {
              out.push_back(
                  postprocess(sp.prediction, sp.posmatch, sp.negmatch, th));
            }
            ClassMetrics m = metrics(confusion(gold, out));
            GridPoint point{th, m.accuracy, m.macro_f1()};
            result.points.push_back(point);
            if (first || point.accuracy > result.best.accuracy) {
              result.best = point;
              first = false;
            }
          }
        }
      }
    }
  }
  return result;
}

namespace {

nlohmann::ordered_json metrics_json(const ClassMetrics& m) {
  nlohmann::ordered_json per_class;
  for (std::size_t c = 0; c < 3; ++c) {
    per_class[kClassNames[c]] = {{"precision", m.per_class[c].precision},
                                 {"recall", m.per_class[c].recall},
                                 {"f1", m.per_class[c].f1}};
  }
  return {{"per_class", per_class}, {"accuracy", m.accuracy}};
}

}  // namespace

std::string evaluation_report_json(const ConfusionMatrix& m,
                                   const ClassMetrics& system,
                                   const ClassMetrics& baseline) {
  nlohmann::ordered_json report;
  report["confusion"] = {m.cells[0], m.cells[1], m.cells[2]};
  nlohmann::ordered_json sys = metrics_json(system);
  report["per_class"] = sys["per_class"];
  report["accuracy"] = sys["accuracy"];
  report["baseline"] = metrics_json(baseline);
  return report.dump(2) + "\n";
}

std::string evaluation_report_text(const ConfusionMatrix& m,
                                   const ClassMetrics& system,
                                   const ClassMetrics& baseline) {
  std::ostringstream out;
  char buf[128];
  out << "Confusion matrix (rows gold, columns predicted)\n";
  out << "            positive   neutral  negative\n";
  for (std::size_t r = 0; r < 3; ++r) {
    std::snprintf(buf, sizeof buf, "%-10s %9lld %9lld %9lld\n", kClassNames[r],
                  static_cast<long long>(m.cells[r][0]),
                  static_cast<long long>(m.cells[r][1]),
                  static_cast<long long>(m.cells[r][2]));
    out << buf;
  }
  out << "\nClass      Precision    Recall F-measure\n";
  auto print_metrics = [&](const ClassMetrics& cm) {
    for (std::size_t c = 0; c < 3; ++c) {
      std::snprintf(buf, sizeof buf, "%-10s %9.3f %9.3f %9.3f\n", kClassNames[c],
                    cm.per_class[c].precision, cm.per_class[c].recall,
                    cm.per_class[c].f1);
      out << buf;
    }
  };
  print_metrics(system);
  std::snprintf(buf, sizeof buf, "accuracy   %9.4f\n", system.accuracy);
  out << buf;
  out << "\nBaseline (all neutral)\n";
  print_metrics(baseline);
  std::snprintf(buf, sizeof buf, "accuracy   %9.4f\n", baseline.accuracy);
  out << buf;
  return out.str();
}

std::string ablation_report_csv(const std::vector<AblationRow>& rows,
                                AblationMode mode) {
  std::ostringstream out;
  out << (mode == AblationMode::DropOne ? "feature_eliminated"
                                        : "feature_added")
      << ",correct,incorrect,accuracy\n";
  char buf[32];
  for (const AblationRow& row : rows) {
    std::snprintf(buf, sizeof buf, "%.4f", row.accuracy);
    out << row.group << ',' << row.correct << ',' << row.incorrect << ','
        << buf << '\n';
  }
  return out.str();
}

}  // namespace citerank
