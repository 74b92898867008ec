#include "citerank/corpus.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace citerank {

namespace {

bool is_blank(const std::string& s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

}  // namespace

Polarity parse_polarity(char c) {
  switch (c) {
    case 'p': return Polarity::Positive;
    case 'o': return Polarity::Neutral;
    case 'n': return Polarity::Negative;
    default: break;
  }
  fail(std::string("unknown polarity '") + c + "'");
}

char polarity_char(Polarity p) noexcept {
  switch (p) {
    case Polarity::Positive: return 'p';
    case Polarity::Neutral: return 'o';
    case Polarity::Negative: return 'n';
  }
  return '?';
}

int polarity_value(Polarity p) noexcept {
  switch (p) {
    case Polarity::Positive: return 1;
    case Polarity::Neutral: return 0;
    case Polarity::Negative: return -1;
  }
  return 0;
}

const char* polarity_name(Polarity p) noexcept {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Neutral: return "neutral";
    case Polarity::Negative: return "negative";
  }
  return "?";
}

std::int64_t& ClassCounts::of(Polarity p) noexcept {
  switch (p) {
    case Polarity::Positive: return positive;
    case Polarity::Negative: return negative;
    case Polarity::Neutral: break;
  }
  return neutral;
}

std::int64_t ClassCounts::of(Polarity p) const noexcept {
  return const_cast<ClassCounts*>(this)->of(p);
}

std::vector<CitationInstance> load_corpus(const std::filesystem::path& path,
                                          const CorpusFormat& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open corpus file: " + path.string());

  std::vector<CitationInstance> corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find(format.delimiter, start);
      if (tab == std::string::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (static_cast<int>(cols.size()) != format.columns) {
      fail("malformed corpus line " + std::to_string(lineno) + ": expected " +
           std::to_string(format.columns) + " columns, got " +
           std::to_string(cols.size()));
    }
    if (cols[0].empty() || cols[1].empty()) {
      fail("malformed corpus line " + std::to_string(lineno) +
           ": empty paper id");
    }
    if (cols[2].size() != 1) {
      fail("unknown polarity '" + cols[2] + "' at line " +
           std::to_string(lineno));
    }
    Polarity gold;
    try {
      gold = parse_polarity(cols[2][0]);
    } catch (const std::runtime_error&) {
      fail("unknown polarity '" + cols[2] + "' at line " +
           std::to_string(lineno));
    }
    if (is_blank(cols[3])) {
      fail("malformed corpus line " + std::to_string(lineno) +
           ": empty sentence");
    }
    corpus.push_back({cols[0], cols[1], cols[3], gold});
  }
  return corpus;
}

std::string serialize_corpus(const std::vector<CitationInstance>& corpus,
                             const CorpusFormat& format) {
  std::string out;
  for (const auto& inst : corpus) {
    if (!inst.gold) fail("cannot serialize instance without polarity");
    out += inst.source_id;
    out += format.delimiter;
    out += inst.target_id;
    out += format.delimiter;
    out += polarity_char(*inst.gold);
    out += format.delimiter;
    out += inst.sentence;
    out += '\n';
  }
  return out;
}

CorpusSplit split_corpus(const std::vector<CitationInstance>& corpus,
                         std::size_t n_train) {
  if (n_train > corpus.size()) {
    fail("split point " + std::to_string(n_train) + " exceeds corpus size " +
         std::to_string(corpus.size()));
  }
  CorpusSplit split;
  split.training.assign(corpus.begin(), corpus.begin() + n_train);
  split.test.assign(corpus.begin() + n_train, corpus.end());
  return split;
}

ClassCounts class_counts(const std::vector<CitationInstance>& instances) {
  ClassCounts counts;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!instances[i].gold) {
      fail("instance " + std::to_string(i + 1) + " has no gold polarity");
    }
    ++counts.of(*instances[i].gold);
  }
  return counts;
}

}  // namespace citerank
