// ranking.hpp
//
// Citation multigraph plus the two rankings over it: naive in-degree
// counting and the sentiment-weighted M-index, with bucket partitioning
// and rank-difference reporting.

#ifndef CITERANK_RANKING_HPP_
#define CITERANK_RANKING_HPP_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "citerank/corpus.hpp"

namespace citerank {

// Edge weight by polarity class: Positive +1, Neutral +0.5, Negative -0.5.
double polarity_score(Polarity p) noexcept;

// An already-classified citation event (gold or predicted polarity).
struct ClassifiedCitation {
  std::string source_id;
  std::string target_id;
  Polarity polarity = Polarity::Neutral;
};

// Directed multigraph of papers; parallel edges are distinct citation
// instances. Immutable once built.
class CitationGraph {
 public:
  struct Edge {
    std::string source;
    std::string target;
    Polarity polarity;
  };

  static CitationGraph build(const std::vector<ClassifiedCitation>& instances);

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  bool has_node(const std::string& id) const;

  // Indices into edges() of a node's incoming edges, in edge order.
  const std::vector<std::size_t>& in_edges(const std::string& id) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::string> nodes_;  // sorted, unique
  std::unordered_map<std::string, std::vector<std::size_t>> in_edges_;
};

// Sum of incoming polarity scores, normalized to {+2, +1, -1}:
// raw > 1 -> +2, raw < 0 -> -1, otherwise +1. A node nothing cites
// (raw 0) lands on +1.
struct ReliabilityScore {
  double raw = 0.0;
  int normalized = 1;
};

ReliabilityScore reliability(const CitationGraph& g, const std::string& id);

enum class RankMethod { Naive, MIndex };

struct RankedEntry {
  std::string paper_id;
  double score = 0.0;
  std::size_t rank = 0;    // 1-based
  std::size_t bucket = 0;  // 1-based, 0 until bucketize runs
};

struct RankedList {
  RankMethod method = RankMethod::Naive;
  std::vector<RankedEntry> entries;  // scores non-increasing, ties by id
};

// Cited papers (in-degree >= 1) scored by in-degree.
RankedList naive_rank(const CitationGraph& g);

// Cited papers scored by the sum of incoming instance scores, where an
// instance score is the edge's polarity score times the *source* node's
// normalized reliability. Reliabilities are computed once from the raw
// graph; the index is deliberately not recursive.
RankedList m_index(const CitationGraph& g);

// Assigns consecutive rank blocks to k buckets; when N % k != 0 the
// earlier buckets take the remainder (sizes differ by at most 1).
RankedList bucketize(RankedList list, std::size_t k = 5);

struct RankDiffEntry {
  std::string paper_id;
  std::size_t rank_a = 0;
  std::size_t rank_b = 0;
  std::size_t bucket_a = 0;
  std::size_t bucket_b = 0;
  bool moved = false;
};

struct RankDiffReport {
  std::vector<RankDiffEntry> entries;  // in list-a rank order
  std::size_t rank_changes = 0;
  std::size_t bucket_changes = 0;
  double kendall_tau = 1.0;
};

// Per-paper rank/bucket movement between two rankings of the same paper
// set, plus Kendall tau of the two orders. Throws if the id sets differ.
RankDiffReport compare_rankings(const RankedList& a, const RankedList& b);

// Serialization. Rankings: CSV `rank,paper_id,score,bucket` and a JSON
// array; the diff report: CSV plus a JSON summary; plot data: per-paper
// score shares.
std::string ranking_csv(const RankedList& list);
std::string ranking_json(const RankedList& list);
std::string rank_diff_csv(const RankDiffReport& report);
std::string rank_diff_summary_json(const RankDiffReport& report);
std::string plot_data_csv(const RankedList& list);

}  // namespace citerank

#endif  // CITERANK_RANKING_HPP_
