#include "citerank/ranking.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace citerank {
namespace {

// Shortest decimal form that round-trips; integral values drop the point.
std::string format_score(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::unordered_map<std::string, int> normalized_reliabilities(
    const CitationGraph& g) {
  std::unordered_map<std::string, int> out;
  out.reserve(g.nodes().size());
  for (const auto& id : g.nodes()) {
    out.emplace(id, reliability(g, id).normalized);
  }
  return out;
}

RankedList rank_by_score(
    RankMethod method, const std::unordered_map<std::string, double>& scores) {
  RankedList list;
  list.method = method;
  list.entries.reserve(scores.size());
  for (const auto& [id, score] : scores) {
    list.entries.push_back(RankedEntry{id, score, 0, 0});
  }
  std::sort(list.entries.begin(), list.entries.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.paper_id < b.paper_id;
            });
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    list.entries[i].rank = i + 1;
  }
  return list;
}

double kendall_tau(const std::vector<std::size_t>& ra,
                   const std::vector<std::size_t>& rb) {
  const std::size_t n = ra.size();
  if (n < 2) return 1.0;
  long long concordant = 0;
  long long discordant = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool a_less = ra[i] < ra[j];
      const bool b_less = rb[i] < rb[j];
      if (a_less == b_less) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double pairs = 0.5 * static_cast<double>(n) *
                       static_cast<double>(n - 1);
  return static_cast<double>(concordant - discordant) / pairs;
}

}  // namespace

double polarity_score(Polarity p) noexcept {
  switch (p) {
    case Polarity::Positive: return 1.0;
    case Polarity::Negative: return -0.5;
    case Polarity::Neutral: break;
  }
  return 0.5;
}

CitationGraph CitationGraph::build(
    const std::vector<ClassifiedCitation>& instances) {
  CitationGraph g;
  g.edges_.reserve(instances.size());
  for (const auto& inst : instances) {
    g.edges_.push_back(Edge{inst.source_id, inst.target_id, inst.polarity});
  }
  g.nodes_.reserve(instances.size() * 2);
  for (const auto& e : g.edges_) {
    g.nodes_.push_back(e.source);
    g.nodes_.push_back(e.target);
  }
  std::sort(g.nodes_.begin(), g.nodes_.end());
  g.nodes_.erase(std::unique(g.nodes_.begin(), g.nodes_.end()),
                 g.nodes_.end());
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    g.in_edges_[g.edges_[i].target].push_back(i);
  }
  return g;
}

bool CitationGraph::has_node(const std::string& id) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

const std::vector<std::size_t>& CitationGraph::in_edges(
    const std::string& id) const {
  static const std::vector<std::size_t> kNone;
  if (!has_node(id)) {
    throw std::runtime_error("unknown paper id '" + id + "'");
  }
  auto it = in_edges_.find(id);
  return it == in_edges_.end() ? kNone : it->second;
}

ReliabilityScore reliability(const CitationGraph& g, const std::string& id) {
  ReliabilityScore score;
  for (std::size_t idx : g.in_edges(id)) {
    score.raw += polarity_score(g.edges()[idx].polarity);
  }
  if (score.raw > 1.0) {
    score.normalized = 2;
  } else if (score.raw < 0.0) {
    score.normalized = -1;
  } else {
    score.normalized = 1;
  }
  return score;
}

RankedList naive_rank(const CitationGraph& g) {
  std::unordered_map<std::string, double> scores;
  for (const auto& e : g.edges()) {
    scores[e.target] += 1.0;
  }
  return rank_by_score(RankMethod::Naive, scores);
}

RankedList m_index(const CitationGraph& g) {
  const auto rel = normalized_reliabilities(g);
  std::unordered_map<std::string, double> scores;
  for (const auto& e : g.edges()) {
    scores[e.target];  // cited papers appear even if their sum is zero
    scores[e.target] += polarity_score(e.polarity) * rel.at(e.source);
  }
  return rank_by_score(RankMethod::MIndex, scores);
}

RankedList bucketize(RankedList list, std::size_t k) {
  if (k == 0) {
    throw std::runtime_error("bucket count must be positive");
  }
  if (list.entries.empty()) {
    throw std::runtime_error("cannot bucketize an empty ranking");
  }
  const std::size_t n = list.entries.size();
  const std::size_t base = n / k;
  const std::size_t remainder = n % k;
  std::size_t next = 0;
  for (std::size_t bucket = 1; bucket <= k && next < n; ++bucket) {
    std::size_t size = base + (bucket <= remainder ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) {
      list.entries[next++].bucket = bucket;
    }
  }
  return list;
}

RankDiffReport compare_rankings(const RankedList& a, const RankedList& b) {
  std::unordered_map<std::string, const RankedEntry*> b_by_id;
  b_by_id.reserve(b.entries.size());
  for (const auto& e : b.entries) {
    b_by_id.emplace(e.paper_id, &e);
  }
  if (a.entries.size() != b.entries.size()) {
    throw std::runtime_error("rankings cover different paper sets");
  }

  RankDiffReport report;
  report.entries.reserve(a.entries.size());
  std::vector<std::size_t> ranks_a;
  std::vector<std::size_t> ranks_b;
  ranks_a.reserve(a.entries.size());
  ranks_b.reserve(a.entries.size());
  for (const auto& ea : a.entries) {
    auto it = b_by_id.find(ea.paper_id);
    if (it == b_by_id.end()) {
      throw std::runtime_error("rankings cover different paper sets");
    }
    const RankedEntry& eb = *it->second;
    RankDiffEntry d;
    d.paper_id = ea.paper_id;
    d.rank_a = ea.rank;
    d.rank_b = eb.rank;
    d.bucket_a = ea.bucket;
    d.bucket_b = eb.bucket;
    d.moved = ea.rank != eb.rank;
    if (d.moved) ++report.rank_changes;
    if (d.bucket_a != d.bucket_b) ++report.bucket_changes;
    report.entries.push_back(std::move(d));
    ranks_a.push_back(ea.rank);
    ranks_b.push_back(eb.rank);
  }
  report.kendall_tau = kendall_tau(ranks_a, ranks_b);
  return report;
}

std::string ranking_csv(const RankedList& list) {
  std::string out = "rank,paper_id,score,bucket\n";
  for (const auto& e : list.entries) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%zu,", e.rank);
    out += buf;
    out += e.paper_id;
    out += ',';
    out += format_score(e.score);
    std::snprintf(buf, sizeof(buf), ",%zu\n", e.bucket);
    out += buf;
  }
  return out;
}

std::string ranking_json(const RankedList& list) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : list.entries) {
    nlohmann::ordered_json row;
    row["rank"] = e.rank;
    row["paper_id"] = e.paper_id;
    row["score"] = e.score;
    row["bucket"] = e.bucket;
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

std::string rank_diff_csv(const RankDiffReport& report) {
  std::string out = "paper_id,naive_rank,m_rank,naive_bucket,m_bucket,changed\n";
  for (const auto& e : report.entries) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), ",%zu,%zu,%zu,%zu,%d\n", e.rank_a,
                  e.rank_b, e.bucket_a, e.bucket_b, e.moved ? 1 : 0);
    out += e.paper_id;
    out += buf;
  }
  return out;
}

std::string rank_diff_summary_json(const RankDiffReport& report) {
  nlohmann::ordered_json j;
  j["rank_changes"] = report.rank_changes;
  j["bucket_changes"] = report.bucket_changes;
  j["kendall_tau"] = report.kendall_tau;
  return j.dump(2) + "\n";
}

std::string plot_data_csv(const RankedList& list) {
  double total = 0.0;
  for (const auto& e : list.entries) total += e.score;
  std::string out = "paper_id,score,share\n";
  for (const auto& e : list.entries) {
    const double share = total != 0.0 ? e.score / total : 0.0;
    out += e.paper_id;
    out += ',';
    out += format_score(e.score);
    out += ',';
    out += format_score(share);
    out += '\n';
  }
  return out;
}

}  // namespace citerank
