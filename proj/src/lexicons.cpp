#include "citerank/lexicons.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace citerank {

namespace {

bool is_strippable(unsigned char c) { return std::ispunct(c) != 0; }

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string read_trimmed(const std::string& line) {
  std::size_t b = 0;
  std::size_t e = line.size();
  while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
  return line.substr(b, e - b);
}

std::ifstream open_or_fail(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open lexicon file: " + path.string());
  return in;
}

}  // namespace

std::string normalize(std::string_view token) {
  std::size_t b = 0;
  std::size_t e = token.size();
  while (b < e && is_strippable(static_cast<unsigned char>(token[b]))) ++b;
  while (e > b && is_strippable(static_cast<unsigned char>(token[e - 1]))) --e;
  std::string out;
  out.reserve(e - b);
  for (std::size_t i = b; i < e; ++i) {
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(token[i])));
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() &&
           std::isspace(static_cast<unsigned char>(sentence[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < sentence.size() &&
           !std::isspace(static_cast<unsigned char>(sentence[i]))) {
      ++i;
    }
    if (i > start) {
      std::string tok = normalize(sentence.substr(start, i - start));
      if (!tok.empty()) tokens.push_back(std::move(tok));
    }
  }
  return tokens;
}

void ScoredLexicon::insert(std::string_view word, double score) {
  std::string key = normalize(word);
  if (key.empty()) fail("scored lexicon entry normalizes to empty string");
  entries_[key] = score;
}

double ScoredLexicon::score(std::string_view normalized_word) const {
  auto it = entries_.find(std::string(normalized_word));
  return it == entries_.end() ? 0.0 : it->second;
}

bool ScoredLexicon::contains(std::string_view normalized_word) const {
  return entries_.count(std::string(normalized_word)) != 0;
}

void NGramLexicon::insert(std::string_view ngram) {
  std::vector<std::string> tokens = tokenize(ngram);
  if (tokens.empty()) fail("n-gram entry has no tokens: '" + std::string(ngram) + "'");
  if (tokens.size() > kMaxTokens) {
    fail("n-gram entry has " + std::to_string(tokens.size()) +
         " tokens (max " + std::to_string(kMaxTokens) + "): '" +
         std::string(ngram) + "'");
  }
  std::string joined = tokens[0];
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    joined += ' ';
    joined += tokens[i];
  }
  entries_.insert(std::move(joined));
}

bool NGramLexicon::contains(const std::string& joined) const {
  return entries_.count(joined) != 0;
}

int match_ngrams(const std::vector<std::string>& tokens,
                 const NGramLexicon& lexicon) {
  int count = 0;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    std::string window;
    for (std::size_t n = 1;
         n <= NGramLexicon::kMaxTokens && start + n <= tokens.size(); ++n) {
      if (n > 1) window += ' ';
      window += tokens[start + n - 1];
      if (lexicon.contains(window)) ++count;
    }
  }
  return count;
}

namespace {

int count_in_set(const std::vector<std::string>& tokens,
                 const std::unordered_set<std::string>& words) {
  int count = 0;
  for (const auto& tok : tokens) {
    if (words.count(tok)) ++count;
  }
  return count;
}

}  // namespace

int OpinionLexiconPair::count_positive(
    const std::vector<std::string>& tokens) const {
  return count_in_set(tokens, positive);
}

int OpinionLexiconPair::count_negative(
    const std::vector<std::string>& tokens) const {
  return count_in_set(tokens, negative);
}

ScoredLexicon load_scored_lexicon(const std::filesystem::path& path) {
  std::ifstream in = open_or_fail(path);
  ScoredLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = read_trimmed(line);
    if (trimmed.empty()) continue;
    std::size_t tab = trimmed.find('\t');
    if (tab == std::string::npos) {
      fail(path.string() + ":" + std::to_string(lineno) +
           ": expected 'word<TAB>score'");
    }
    std::string word = trimmed.substr(0, tab);
    std::string score_text = read_trimmed(trimmed.substr(tab + 1));
    double score = 0.0;
    std::size_t consumed = 0;
    try {
      score = std::stod(score_text, &consumed);
    } catch (const std::exception&) {
      consumed = std::string::npos;
    }
    if (consumed != score_text.size() || score_text.empty()) {
      fail(path.string() + ":" + std::to_string(lineno) +
           ": unparseable score '" + score_text + "'");
    }
    lex.insert(word, score);
  }
  return lex;
}

NGramLexicon load_ngram_lexicon(const std::filesystem::path& path,
                                Polarity polarity_tag) {
  std::ifstream in = open_or_fail(path);
  NGramLexicon lex(polarity_tag);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // An optional <TAB>frequency suffix is metadata; matching ignores it.
    std::size_t tab = line.find('\t');
    std::string phrase = read_trimmed(tab == std::string::npos ? line : line.substr(0, tab));
    if (phrase.empty()) continue;
    try {
      lex.insert(phrase);
    } catch (const std::runtime_error& e) {
      fail(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return lex;
}

namespace {

std::unordered_set<std::string> load_word_set(const std::filesystem::path& path) {
  std::ifstream in = open_or_fail(path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string trimmed = read_trimmed(line);
    if (trimmed.empty() || trimmed[0] == ';') continue;  // ';' starts a comment
    std::string word = normalize(trimmed);
    if (!word.empty()) words.insert(std::move(word));
  }
  return words;
}

}  // namespace

OpinionLexiconPair load_opinion_pair(const std::filesystem::path& positive_path,
                                     const std::filesystem::path& negative_path,
                                     OpinionLabel label) {
  OpinionLexiconPair pair;
  pair.label = label;
  pair.positive = load_word_set(positive_path);
  pair.negative = load_word_set(negative_path);
  for (const auto& word : pair.positive) {
    if (pair.negative.count(word)) {
      fail("opinion lexicon word '" + word + "' appears in both " +
           positive_path.string() + " and " + negative_path.string());
    }
  }
  return pair;
}

}  // namespace citerank
