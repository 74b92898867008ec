// classifier.hpp
//
// Gain-ratio decision tree over the 14-feature vectors, plus the ordered
// threshold cascade that can override the tree's prediction using lexicon
// match counts and leaf confidence.

#ifndef CITERANK_CLASSIFIER_HPP_
#define CITERANK_CLASSIFIER_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <vector>

#include "citerank/corpus.hpp"
#include "citerank/features.hpp"

namespace citerank {

struct Prediction {
  Polarity klass = Polarity::Neutral;
  double confidence = 0.0;  // leaf count of klass / leaf total
};

// Post-processing thresholds. Defaults are the tuned working point:
// t1=3, n1=2, s1=0.8, t2=2, n2=1.
struct Thresholds {
  int t1 = 3;
  int n1 = 2;
  double s1 = 0.8;
  int t2 = 2;
  int n2 = 1;

  // Degenerate thresholds that make the cascade a no-op: rules 1/2/4/5
  // can never fire and rule 3 always does, so the output is the raw tree
  // prediction.
  static Thresholds disabled() {
    constexpr int inf = std::numeric_limits<int>::max();
    return {inf, inf, 0.0, inf, inf};
  }

  // s1 in [0,1], t1 >= t2 >= 0, n1 >= n2 >= 0; throws otherwise.
  void validate() const;
};

struct TrainConfig {
  std::size_t min_leaf = 2;       // minimum instances on each side of a split
  bool prune = true;              // pessimistic error pruning
  double prune_confidence = 0.25; // in (0, 0.5]
  bool verify_splits = false;     // re-check gain-ratio optimality of every
                                  // chosen split (debug; throws on violation)
};

// Binary tree with numeric splits (feature <= threshold goes left). Leaves
// keep the training class counts; prediction confidence comes from them.
class DecisionTree {
 public:
  struct Node {
    bool leaf = true;
    // split fields
    std::size_t feature = 0;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    // leaf fields
    std::array<std::int64_t, 3> counts = {0, 0, 0};  // Positive, Neutral, Negative

    friend bool operator==(const Node&, const Node&) = default;
  };

  Prediction predict(const FeatureArray& v) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t leaf_count() const;
  const std::vector<Node>& nodes() const { return nodes_; }

  // Line-oriented model format, header `citerank-tree v1` plus the
  // feature-order hash. Loading a model whose hash does not match the
  // current feature order throws.
  void save(const std::filesystem::path& path) const;
  void save(std::ostream& out) const;
  static DecisionTree load(const std::filesystem::path& path);
  static DecisionTree load(std::istream& in);

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

  friend DecisionTree train(const std::vector<FeatureArray>& vectors,
                            const std::vector<Polarity>& labels,
                            const TrainConfig& config);

 private:
  std::vector<Node> nodes_;  // nodes_[0] is the root
};

// Induces a tree by recursive partitioning; every split maximizes gain
// ratio among all (feature, midpoint-threshold) candidates, ties broken by
// lowest feature index then lowest threshold. Throws on an empty training
// set or mismatched input lengths.
DecisionTree train(const std::vector<FeatureArray>& vectors,
                   const std::vector<Polarity>& labels,
                   const TrainConfig& config = {});

// The ordered override cascade:
//   1. posmatch - negmatch > t1            -> Positive
//   2. negmatch > n1                        -> Negative
//   3. pred.confidence > s1                 -> pred.klass
//   4. posmatch - negmatch > t2             -> Positive
//   5. negmatch > n2                        -> Negative
//   6. otherwise                            -> Neutral
Polarity postprocess(const Prediction& pred, int posmatch, int negmatch,
                     const Thresholds& th);

// extract -> predict -> postprocess; posmatch/negmatch are the instance's
// PPW/NPW feature values.
Polarity classify_pipeline(const CitationInstance& instance,
                           const std::optional<SyntacticAnnotation>& ann,
                           const LexiconBundle& lexicons,
                           const DecisionTree& tree, const Thresholds& th);

}  // namespace citerank

#endif  // CITERANK_CLASSIFIER_HPP_
