// evaluation.hpp
//
// Confusion matrices, per-class precision/recall/F, the all-neutral
// baseline, feature-ablation experiments and the threshold grid search.

#ifndef CITERANK_EVALUATION_HPP_
#define CITERANK_EVALUATION_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "citerank/classifier.hpp"
#include "citerank/corpus.hpp"
#include "citerank/features.hpp"

namespace citerank {

// rows = gold class, columns = predicted class, order (Positive, Neutral,
// Negative).
struct ConfusionMatrix {
  std::array<std::array<std::int64_t, 3>, 3> cells = {};

  std::int64_t total() const noexcept;
  std::int64_t trace() const noexcept;
  std::int64_t row_sum(std::size_t row) const noexcept;
  std::int64_t col_sum(std::size_t col) const noexcept;
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Per-class metrics plus micro accuracy. Zero-denominator cells are 0,
// not NaN.
struct ClassMetrics {
  std::array<PRF, 3> per_class = {};  // Positive, Neutral, Negative
  double accuracy = 0.0;

  double macro_f1() const noexcept {
    return (per_class[0].f1 + per_class[1].f1 + per_class[2].f1) / 3.0;
  }
};

ConfusionMatrix confusion(const std::vector<Polarity>& gold,
                          const std::vector<Polarity>& predicted);
ClassMetrics metrics(const ConfusionMatrix& m);
ClassMetrics baseline_all_neutral(const std::vector<Polarity>& gold);

// The six feature groups of the ablation experiments, in table order.
struct FeatureGroup {
  std::string name;
  std::vector<std::size_t> columns;
};

const std::vector<FeatureGroup>& default_feature_groups();

enum class AblationMode { DropOne, AddOne };

struct AblationRow {
  std::string group;
  std::int64_t correct = 0;
  std::int64_t incorrect = 0;
  double accuracy = 0.0;
};

// One retrain + evaluate per row. Drop-one zeroes one group's columns at a
// time; add-one accumulates groups in the given order. The full pipeline
// (tree plus cascade) runs on the masked features; pass
// Thresholds::disabled() for tree-only ablation. With AddOne and an empty
// group list the single row "(none)" trains on all-zero features, which
// reduces to the majority-class predictor. Unknown group names throw.
std::vector<AblationRow> ablation(
    const std::vector<FeatureArray>& train_vectors,
    const std::vector<Polarity>& train_labels,
    const std::vector<FeatureArray>& test_vectors,
    const std::vector<Polarity>& test_labels,
    const std::vector<std::string>& group_names, AblationMode mode,
    const TrainConfig& train_config = {},
    const Thresholds& thresholds = Thresholds::disabled());

// Threshold sweep: t1, n1, t2, n2 over 1..5 (t1 >= t2, n1 >= n2), s1 over
// 0.5..1.0 in steps of 0.1, scored against precomputed tree predictions.
struct GridPoint {
  Thresholds thresholds;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
};

struct GridSearchResult {
  GridPoint best;                // accuracy-maximizing tuple (first on ties)
  std::vector<GridPoint> points; // every tuple evaluated, in sweep order
};

struct ScoredPrediction {
  Prediction prediction;
  int posmatch = 0;
  int negmatch = 0;
};

GridSearchResult grid_search(const std::vector<ScoredPrediction>& predictions,
                             const std::vector<Polarity>& gold);

// Report writers. JSON layout:
// {confusion, per_class: {precision, recall, f1}, accuracy, baseline: {...}}
std::string evaluation_report_json(const ConfusionMatrix& m,
                                   const ClassMetrics& system,
                                   const ClassMetrics& baseline);
std::string evaluation_report_text(const ConfusionMatrix& m,
                                   const ClassMetrics& system,
                                   const ClassMetrics& baseline);
std::string ablation_report_csv(const std::vector<AblationRow>& rows,
                                AblationMode mode);

}  // namespace citerank

#endif  // CITERANK_EVALUATION_HPP_
