#include "citerank/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace citerank {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

constexpr double kZeroGain = 1e-12;

std::size_t class_index(Polarity p) {
  switch (p) {
    case Polarity::Positive: return 0;
    case Polarity::Neutral: return 1;
    case Polarity::Negative: return 2;
  }
  return 1;
}

const Polarity kClassOrder[3] = {Polarity::Positive, Polarity::Neutral,
                                 Polarity::Negative};

// Majority class with ties resolved toward Neutral, then Positive.
std::size_t majority_index(const std::array<std::int64_t, 3>& counts) {
  std::size_t best = 1;  // Neutral
  if (counts[0] > counts[best]) best = 0;
  if (counts[2] > counts[best]) best = 2;
  return best;
}

double entropy(const std::array<std::int64_t, 3>& counts, std::int64_t total) {
  double h = 0.0;
  for (std::int64_t c : counts) {
    if (c > 0) {
      double p = static_cast<double>(c) / static_cast<double>(total);
      h -= p * std::log2(p);
    }
  }
  return h;
}

// Acklam's rational approximation of the standard normal inverse CDF.
double normal_inverse(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p <= 0.0 || p >= 1.0) fail("normal_inverse: p out of (0,1)");
  if (p < plow) {
    double q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p <= 1.0 - plow) {
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  }
  double q = std::sqrt(-2 * std::log(1 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
}

// Upper confidence bound on the error count of a leaf seeing N instances
// with e errors (the C4.5 pessimistic estimate).
double added_errors(double n, double e, double cf) {
  if (e < 1.0) {
    double base = n * (1.0 - std::pow(cf, 1.0 / n));
    if (e == 0.0) return base;
    return base + e * (added_errors(n, 1.0, cf) - base);
  }
  if (e + 0.5 >= n) return std::max(n - e, 0.0);
  double z = normal_inverse(1.0 - cf);
  double f = (e + 0.5) / n;
  double r =
      (f + z * z / (2 * n) +
       z * std::sqrt(f / n - f * f / n + z * z / (4 * n * n))) /
      (1 + z * z / n);
  return r * n - e;
}

struct BuildNode {
  std::array<std::int64_t, 3> counts = {0, 0, 0};
  bool leaf = true;
  std::size_t feature = 0;
  double threshold = 0.0;
  std::unique_ptr<BuildNode> left;
  std::unique_ptr<BuildNode> right;

  std::int64_t total() const { return counts[0] + counts[1] + counts[2]; }
};

struct SplitChoice {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain_ratio = 0.0;
};

class Builder {
 public:
  Builder(const std::vector<FeatureArray>& vectors,
          const std::vector<Polarity>& labels, const TrainConfig& config)
      : x_(vectors), y_(labels), cfg_(config) {
    if (cfg_.min_leaf < 1) cfg_.min_leaf = 1;
  }

  std::unique_ptr<BuildNode> build(std::vector<std::size_t> indices) {
    auto node = std::make_unique<BuildNode>();
    for (std::size_t i : indices) ++node->counts[class_index(y_[i])];

    SplitChoice choice = best_split(indices, node->counts);
    if (!choice.found) return node;
    if (cfg_.verify_splits) verify_choice(indices, node->counts, choice);

    std::vector<std::size_t> left_idx;
    std::vector<std::size_t> right_idx;
    for (std::size_t i : indices) {
      (x_[i][choice.feature] <= choice.threshold ? left_idx : right_idx)
          .push_back(i);
    }
    indices.clear();
    indices.shrink_to_fit();

    node->leaf = false;
    node->feature = choice.feature;
    node->threshold = choice.threshold;
    node->left = build(std::move(left_idx));
    node->right = build(std::move(right_idx));
    return node;
  }

 private:
  // Best (feature, threshold) by gain ratio; candidates are midpoints
  // between consecutive distinct values. Iteration goes through features
  // and thresholds in ascending order with a strict improvement test, so
  // ties resolve to the lowest feature index, then the lowest threshold.
  SplitChoice best_split(const std::vector<std::size_t>& indices,
                         const std::array<std::int64_t, 3>& counts) const {
    SplitChoice best;
    const std::int64_t total = static_cast<std::int64_t>(indices.size());
    if (total < static_cast<std::int64_t>(2 * cfg_.min_leaf)) return best;
    std::int64_t nonzero_classes = 0;
    for (std::int64_t c : counts) nonzero_classes += (c > 0);
    if (nonzero_classes < 2) return best;

    const double parent_entropy = entropy(counts, total);
    std::vector<std::size_t> sorted(indices);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      std::sort(sorted.begin(), sorted.end(),
                [&](std::size_t lhs, std::size_t rhs) {
                  return x_[lhs][f] < x_[rhs][f];
                });
      std::array<std::int64_t, 3> left = {0, 0, 0};
      for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
        ++left[class_index(y_[sorted[k]])];
        double lo = x_[sorted[k]][f];
        double hi = x_[sorted[k + 1]][f];
        if (lo == hi) continue;
        std::int64_t n_left = static_cast<std::int64_t>(k) + 1;
        std::int64_t n_right = total - n_left;
        if (n_left < static_cast<std::int64_t>(cfg_.min_leaf) ||
            n_right < static_cast<std::int64_t>(cfg_.min_leaf)) {
          continue;
        }
        std::array<std::int64_t, 3> right = {
            counts[0] - left[0], counts[1] - left[1], counts[2] - left[2]};
        double pl = static_cast<double>(n_left) / static_cast<double>(total);
        double pr = 1.0 - pl;
        double gain = parent_entropy - pl * entropy(left, n_left) -
                      pr * entropy(right, n_right);
        if (gain <= kZeroGain) continue;
        double split_info = -(pl * std::log2(pl) + pr * std::log2(pr));
        double ratio = gain / split_info;
        if (!best.found || ratio > best.gain_ratio) {
          best = {true, f, lo + (hi - lo) / 2.0, ratio};
        }
      }
    }
    return best;
  }

  // Debug re-check: recompute every candidate's gain ratio by direct
  // counting and confirm none beats the chosen split.
  void verify_choice(const std::vector<std::size_t>& indices,
                     const std::array<std::int64_t, 3>& counts,
                     const SplitChoice& choice) const {
    const std::int64_t total = static_cast<std::int64_t>(indices.size());
    const double parent_entropy = entropy(counts, total);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      std::vector<double> values;
      values.reserve(indices.size());
      for (std::size_t i : indices) values.push_back(x_[i][f]);
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        double threshold = values[k] + (values[k + 1] - values[k]) / 2.0;
        std::array<std::int64_t, 3> left = {0, 0, 0};
        std::array<std::int64_t, 3> right = {0, 0, 0};
        for (std::size_t i : indices) {
          (x_[i][f] <= threshold ? left : right)[class_index(y_[i])] += 1;
        }
        std::int64_t n_left = left[0] + left[1] + left[2];
        std::int64_t n_right = right[0] + right[1] + right[2];
        if (n_left < static_cast<std::int64_t>(cfg_.min_leaf) ||
            n_right < static_cast<std::int64_t>(cfg_.min_leaf)) {
          continue;
        }
        double pl = static_cast<double>(n_left) / static_cast<double>(total);
        double pr = static_cast<double>(n_right) / static_cast<double>(total);
        double gain = parent_entropy - pl * entropy(left, n_left) -
                      pr * entropy(right, n_right);
        if (gain <= kZeroGain) continue;
        double ratio = gain / (-(pl * std::log2(pl) + pr * std::log2(pr)));
        if (ratio > choice.gain_ratio + 1e-9) {
          std::ostringstream msg;
          msg << "split verification failed: feature " << f << " @ "
              << threshold << " has gain ratio " << ratio
              << " > chosen " << choice.gain_ratio;
          fail(msg.str());
        }
      }
    }
  }

  const std::vector<FeatureArray>& x_;
  const std::vector<Polarity>& y_;
  TrainConfig cfg_;
};

double subtree_error_estimate(const BuildNode& node, double cf) {
  if (node.leaf) {
    double total = static_cast<double>(node.total());
    double errors =
        total - static_cast<double>(node.counts[majority_index(node.counts)]);
    return errors + added_errors(total, errors, cf);
  }
  return subtree_error_estimate(*node.left, cf) +
         subtree_error_estimate(*node.right, cf);
}

void prune_node(BuildNode& node, double cf) {
  if (node.leaf) return;
  prune_node(*node.left, cf);
  prune_node(*node.right, cf);
  double as_subtree = subtree_error_estimate(node, cf);
  double total = static_cast<double>(node.total());
  double errors =
      total - static_cast<double>(node.counts[majority_index(node.counts)]);
  double as_leaf = errors + added_errors(total, errors, cf);
  if (as_leaf <= as_subtree + 0.1) {
    node.leaf = true;
    node.left.reset();
    node.right.reset();
  }
}

std::int32_t flatten(const BuildNode& node,
                     std::vector<DecisionTree::Node>& out) {
  std::int32_t id = static_cast<std::int32_t>(out.size());
  out.emplace_back();
  if (node.leaf) {
    out[id].leaf = true;
    out[id].counts = node.counts;
  } else {
    out[id].leaf = false;
    out[id].feature = node.feature;
    out[id].threshold = node.threshold;
  }
  if (!node.leaf) {
    std::int32_t left = flatten(*node.left, out);
    std::int32_t right = flatten(*node.right, out);
    out[id].left = left;
    out[id].right = right;
  }
  return id;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) fail("cannot format double");
  return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail("model file: bad number '" + text + "'");
  }
  return value;
}

}  // namespace

void Thresholds::validate() const {
  if (s1 < 0.0 || s1 > 1.0) fail("threshold s1 must be in [0,1]");
  if (t2 < 0 || t1 < t2) fail("thresholds must satisfy t1 >= t2 >= 0");
  if (n2 < 0 || n1 < n2) fail("thresholds must satisfy n1 >= n2 >= 0");
}

DecisionTree train(const std::vector<FeatureArray>& vectors,
                   const std::vector<Polarity>& labels,
                   const TrainConfig& config) {
  if (vectors.empty()) fail("cannot train on an empty training set");
  if (vectors.size() != labels.size()) {
    fail("training vectors and labels differ in length");
  }
  if (config.prune &&
      (config.prune_confidence <= 0.0 || config.prune_confidence > 0.5)) {
    fail("pruning confidence must be in (0, 0.5]");
  }

  Builder builder(vectors, labels, config);
  std::vector<std::size_t> all(vectors.size());
  std::iota(all.begin(), all.end(), 0);
  std::unique_ptr<BuildNode> root = builder.build(std::move(all));
  if (config.prune) prune_node(*root, config.prune_confidence);

  DecisionTree tree;
  flatten(*root, tree.nodes_);
  return tree;
}

Prediction DecisionTree::predict(const FeatureArray& v) const {
  if (nodes_.empty()) fail("predict on an untrained tree");
  const Node* node = &nodes_[0];
  while (!node->leaf) {
    node = v[node->feature] <= node->threshold ? &nodes_[node->left]
                                               : &nodes_[node->right];
  }
  std::size_t best = majority_index(node->counts);
  std::int64_t total = node->counts[0] + node->counts[1] + node->counts[2];
  Prediction pred;
  pred.klass = kClassOrder[best];
  pred.confidence =
      static_cast<double>(node->counts[best]) / static_cast<double>(total);
  return pred;
}

std::size_t DecisionTree::leaf_count() const {
  std::size_t n = 0;
  for (const Node& node : nodes_) n += node.leaf ? 1 : 0;
  return n;
}

void DecisionTree::save(std::ostream& out) const {
  out << "citerank-tree v1\n";
  out << "features " << feature_order_hash() << '\n';
  out << "nodes " << nodes_.size() << '\n';
  for (const Node& node : nodes_) {
    if (node.leaf) {
      out << "leaf " << node.counts[0] << ' ' << node.counts[1] << ' '
          << node.counts[2] << '\n';
    } else {
      out << "split " << node.feature << ' ' << format_double(node.threshold)
          << ' ' << node.left << ' ' << node.right << '\n';
    }
  }
}

void DecisionTree::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write model file: " + path.string());
  save(out);
}

DecisionTree DecisionTree::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "citerank-tree v1") {
    fail("model file: missing 'citerank-tree v1' header");
  }
  if (!std::getline(in, line) || line.rfind("features ", 0) != 0) {
    fail("model file: missing feature-order hash");
  }
  std::string hash = line.substr(9);
  if (hash != feature_order_hash()) {
    fail("model file: feature-order hash mismatch (model " + hash +
         ", this build " + feature_order_hash() + ")");
  }
  if (!std::getline(in, line) || line.rfind("nodes ", 0) != 0) {
    fail("model file: missing node count");
  }
  std::size_t count = 0;
  try {
    count = std::stoul(line.substr(6));
  } catch (const std::exception&) {
    fail("model file: bad node count");
  }
  if (count == 0) fail("model file: empty tree");

  DecisionTree tree;
  tree.nodes_.resize(count);
  for (std::size_t id = 0; id < count; ++id) {
    if (!std::getline(in, line)) fail("model file: truncated node list");
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    Node& node = tree.nodes_[id];
    if (kind == "leaf") {
      node.leaf = true;
      if (!(ls >> node.counts[0] >> node.counts[1] >> node.counts[2])) {
        fail("model file: bad leaf at node " + std::to_string(id));
      }
      if (node.counts[0] < 0 || node.counts[1] < 0 || node.counts[2] < 0 ||
          node.counts[0] + node.counts[1] + node.counts[2] == 0) {
        fail("model file: invalid leaf counts at node " + std::to_string(id));
      }
    } else if (kind == "split") {
      node.leaf = false;
      std::string threshold_text;
      if (!(ls >> node.feature >> threshold_text >> node.left >> node.right)) {
        fail("model file: bad split at node " + std::to_string(id));
      }
      node.threshold = parse_double(threshold_text);
      if (node.feature >= kFeatureCount) {
        fail("model file: feature index out of range at node " +
             std::to_string(id));
      }
      auto in_range = [&](std::int32_t child) {
        return child > static_cast<std::int32_t>(id) &&
               child < static_cast<std::int32_t>(count);
      };
      if (!in_range(node.left) || !in_range(node.right)) {
        fail("model file: child index out of range at node " +
             std::to_string(id));
      }
    } else {
      fail("model file: unknown node kind '" + kind + "' at node " +
           std::to_string(id));
    }
  }
  return tree;
}

DecisionTree DecisionTree::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open model file: " + path.string());
  return load(in);
}

Polarity postprocess(const Prediction& pred, int posmatch, int negmatch,
                     const Thresholds& th) {
  if (posmatch < 0 || negmatch < 0) fail("match counts must be >= 0");
  if (posmatch - negmatch > th.t1) return Polarity::Positive;
  if (negmatch > th.n1) return Polarity::Negative;
  if (pred.confidence > th.s1) return pred.klass;
  if (posmatch - negmatch > th.t2) return Polarity::Positive;
  if (negmatch > th.n2) return Polarity::Negative;
  return Polarity::Neutral;
}

Polarity classify_pipeline(const CitationInstance& instance,
                           const std::optional<SyntacticAnnotation>& ann,
                           const LexiconBundle& lexicons,
                           const DecisionTree& tree, const Thresholds& th) {
  FeatureVector v = extract(instance, ann, lexicons);
  Prediction pred = tree.predict(v.to_array());
  return postprocess(pred, v.ppw, v.npw, th);
}

}  // namespace citerank
