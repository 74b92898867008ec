#include "citerank/features.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace citerank {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

bool is_adjective_tag(const std::string& tag) {
  return tag == "JJ" || tag == "JJR" || tag == "JJS" || tag == "JJT";
}

bool is_adverb_tag(const std::string& tag) {
  return tag == "RB" || tag == "RBR" || tag == "RBT" || tag == "RN" ||
         tag == "RT";
}

}  // namespace

const std::array<const char*, kFeatureCount> kFeatureNames = {
    "AS",         "PPW",       "NPW",      "POS_adj",   "POS_adv",
    "POS_fw",     "POS_adv_adj", "DEP_advmod", "DEP_acomp", "DEP_amod",
    "OL1_pos",    "OL1_neg",   "OL2_pos",  "OL2_neg"};

std::string feature_order_hash() {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64-bit offset basis
  auto mix = [&h](char c) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  };
  for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
    if (i > 0) mix(',');
    for (const char* p = kFeatureNames[i]; *p; ++p) mix(*p);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FeatureArray FeatureVector::to_array() const noexcept {
  return {as,
          static_cast<double>(ppw),
          static_cast<double>(npw),
          static_cast<double>(pos_adj),
          static_cast<double>(pos_adv),
          static_cast<double>(pos_fw),
          static_cast<double>(pos_adv_adj),
          static_cast<double>(dep_advmod),
          static_cast<double>(dep_acomp),
          static_cast<double>(dep_amod),
          static_cast<double>(ol1_pos),
          static_cast<double>(ol1_neg),
          static_cast<double>(ol2_pos),
          static_cast<double>(ol2_neg)};
}

double automatic_sentiment(std::string_view sentence,
                           const ScoredLexicon& lex) {
  double sum = 0.0;
  for (const auto& tok : tokenize(sentence)) {
    sum += lex.score(tok);
  }
  return 100.0 * sum;
}

PosCounts pos_features(const SyntacticAnnotation& ann) {
  PosCounts counts;
  for (std::size_t i = 0; i < ann.pos_tags.size(); ++i) {
    const std::string& tag = ann.pos_tags[i].second;
    if (is_adjective_tag(tag)) ++counts.adjectives;
    if (is_adverb_tag(tag)) ++counts.adverbs;
    if (tag == "FW") ++counts.foreign;
    if (i + 1 < ann.pos_tags.size() && is_adverb_tag(tag) &&
        is_adjective_tag(ann.pos_tags[i + 1].second)) {
      ++counts.adv_adj;
    }
  }
  return counts;
}

DepCounts dep_features(const SyntacticAnnotation& ann) {
  DepCounts counts;
  for (const auto& dep : ann.dependencies) {
    if (dep.relation == "advmod") ++counts.advmod;
    if (dep.relation == "acomp") ++counts.acomp;
    if (dep.relation == "amod") ++counts.amod;
  }
  return counts;
}

bool is_self_citation(const CitationInstance& instance) {
  return instance.source_id == instance.target_id;
}

FeatureVector extract(const CitationInstance& instance,
                      const std::optional<SyntacticAnnotation>& ann,
                      const LexiconBundle& lexicons) {
  FeatureVector v;
  std::vector<std::string> tokens = tokenize(instance.sentence);

  double as_sum = 0.0;
  for (const auto& tok : tokens) as_sum += lexicons.scored.score(tok);
  v.as = 100.0 * as_sum;

  v.ppw = match_ngrams(tokens, lexicons.positive_ngrams);
  v.npw = match_ngrams(tokens, lexicons.negative_words);

  if (ann) {
    PosCounts pos = pos_features(*ann);
    v.pos_adj = pos.adjectives;
    v.pos_adv = pos.adverbs;
    v.pos_fw = pos.foreign;
    v.pos_adv_adj = pos.adv_adj;
    DepCounts dep = dep_features(*ann);
    v.dep_advmod = dep.advmod;
    v.dep_acomp = dep.acomp;
    v.dep_amod = dep.amod;
  }

  v.ol1_pos = lexicons.ol1.count_positive(tokens);
  v.ol1_neg = lexicons.ol1.count_negative(tokens);
  v.ol2_pos = lexicons.ol2.count_positive(tokens);
  v.ol2_neg = lexicons.ol2.count_negative(tokens);
  return v;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool is_blank_line(const std::string& line) {
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

int parse_index(const std::string& text, const std::string& where) {
  try {
    std::size_t consumed = 0;
    int value = std::stoi(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    fail(where + ": bad token index '" + text + "'");
  }
}

}  // namespace

std::vector<SyntacticAnnotation> load_annotations(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open annotation file: " + path.string());

  std::vector<SyntacticAnnotation> blocks;
  SyntacticAnnotation current;
  bool in_block = false;
  std::string line;
  std::size_t lineno = 0;

  auto flush = [&]() {
    if (!in_block) return;
    for (const auto& dep : current.dependencies) {
      int n = static_cast<int>(current.pos_tags.size());
      if (dep.head < 0 || dep.head > n || dep.dependent < 1 ||
          dep.dependent > n) {
        fail(path.string() + ": block " + std::to_string(blocks.size() + 1) +
             ": dependency index out of range (" + dep.relation + " " +
             std::to_string(dep.head) + " " + std::to_string(dep.dependent) +
             " with " + std::to_string(n) + " tokens)");
      }
    }
    blocks.push_back(std::move(current));
    current = {};
    in_block = false;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_line(line)) {
      flush();
      continue;
    }
    in_block = true;
    std::string where = path.string() + ":" + std::to_string(lineno);
    std::vector<std::string> cols = split_tabs(line);
    if (cols[0] == "#dep") {
      if (cols.size() != 4) fail(where + ": expected #dep<TAB>relation<TAB>head<TAB>dependent");
      DependencyEdge dep;
      dep.relation = cols[1];
      dep.head = parse_index(cols[2], where);
      dep.dependent = parse_index(cols[3], where);
      current.dependencies.push_back(std::move(dep));
    } else {
      if (cols.size() != 2) fail(where + ": expected token<TAB>tag");
      current.pos_tags.emplace_back(cols[0], cols[1]);
    }
  }
  flush();
  return blocks;
}

void write_feature_matrix(const std::filesystem::path& path,
                          const std::vector<FeatureVector>& vectors,
                          const std::vector<Polarity>& gold) {
  if (vectors.size() != gold.size()) {
    fail("feature matrix: vector/label count mismatch");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write feature matrix: " + path.string());
  for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
    if (i > 0) out << ',';
    out << kFeatureNames[i];
  }
  out << ",gold\n";
  char buf[64];
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    FeatureArray a = vectors[i].to_array();
    std::snprintf(buf, sizeof buf, "%.17g", a[kAS]);
    out << buf;
    for (std::size_t f = 1; f < a.size(); ++f) {
      out << ',' << static_cast<long long>(a[f]);
    }
    out << ',' << polarity_char(gold[i]) << '\n';
  }
}

}  // namespace citerank
