// features.hpp
//
// Turns a citation instance plus optional syntactic annotations into the
// fixed 14-feature vector consumed by the classifier.

#ifndef CITERANK_FEATURES_HPP_
#define CITERANK_FEATURES_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "citerank/corpus.hpp"
#include "citerank/lexicons.hpp"

namespace citerank {

struct DependencyEdge {
  std::string relation;
  int head = 0;       // 1-based token index, 0 for root
  int dependent = 0;  // 1-based token index
};

struct SyntacticAnnotation {
  std::vector<std::pair<std::string, std::string>> pos_tags;  // (token, tag)
  std::vector<DependencyEdge> dependencies;
};

// The frozen feature order. Any serialized vector set or model carries a
// hash of this order so models and matrices cannot silently skew.
enum FeatureIndex : std::size_t {
  kAS = 0,
  kPPW,
  kNPW,
  kPosAdj,
  kPosAdv,
  kPosFw,
  kPosAdvAdj,
  kDepAdvmod,
  kDepAcomp,
  kDepAmod,
  kOl1Pos,
  kOl1Neg,
  kOl2Pos,
  kOl2Neg,
  kFeatureCount
};

using FeatureArray = std::array<double, kFeatureCount>;

extern const std::array<const char*, kFeatureCount> kFeatureNames;

// FNV-1a over the comma-joined feature names, hex-encoded.
std::string feature_order_hash();

struct FeatureVector {
  double as = 0.0;
  int ppw = 0;
  int npw = 0;
  int pos_adj = 0;
  int pos_adv = 0;
  int pos_fw = 0;
  int pos_adv_adj = 0;
  int dep_advmod = 0;
  int dep_acomp = 0;
  int dep_amod = 0;
  int ol1_pos = 0;
  int ol1_neg = 0;
  int ol2_pos = 0;
  int ol2_neg = 0;

  FeatureArray to_array() const noexcept;
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Bag-of-words sentiment: 100 * sum of lexicon scores over the sentence's
// normalized tokens. Unknown words contribute 0.
double automatic_sentiment(std::string_view sentence, const ScoredLexicon& lex);

struct PosCounts {
  int adjectives = 0;  // JJ JJR JJS JJT
  int adverbs = 0;     // RB RBR RBT RN RT
  int foreign = 0;     // FW
  int adv_adj = 0;     // adjacent (adverb, adjective) token pairs
  friend bool operator==(const PosCounts&, const PosCounts&) = default;
};

struct DepCounts {
  int advmod = 0;
  int acomp = 0;
  int amod = 0;
  friend bool operator==(const DepCounts&, const DepCounts&) = default;
};

PosCounts pos_features(const SyntacticAnnotation& ann);
DepCounts dep_features(const SyntacticAnnotation& ann);

// True iff source and target ids coincide. Diagnostic only; deliberately
// not part of FeatureVector.
bool is_self_citation(const CitationInstance& instance);

// Full extraction. A missing annotation leaves the 7 syntactic features 0.
FeatureVector extract(const CitationInstance& instance,
                      const std::optional<SyntacticAnnotation>& ann,
                      const LexiconBundle& lexicons);

// Annotation sidecar files: one block per corpus line, blocks separated by
// blank lines. Within a block, `token<TAB>tag` lines describe POS tags and
// `#dep<TAB>relation<TAB>head<TAB>dependent` lines describe dependencies.
std::vector<SyntacticAnnotation> load_annotations(
    const std::filesystem::path& path);

// CSV export, header row = the 14 feature names plus `gold`.
void write_feature_matrix(const std::filesystem::path& path,
                          const std::vector<FeatureVector>& vectors,
                          const std::vector<Polarity>& gold);

}  // namespace citerank

#endif  // CITERANK_FEATURES_HPP_
