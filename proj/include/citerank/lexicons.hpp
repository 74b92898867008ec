// lexicons.hpp
//
// The five word lists behind the feature set: a scored sentiment lexicon,
// positive citation n-grams, negative citation words, and two generic
// opinion lexicons split into positive/negative halves.

#ifndef CITERANK_LEXICONS_HPP_
#define CITERANK_LEXICONS_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "citerank/corpus.hpp"

namespace citerank {

// Lowercases a token and strips surrounding punctuation. Internal
// hyphens (and any other internal characters) are preserved:
//   "Improves,"        -> "improves"
//   "(2007)"           -> "2007"
//   "state-of-the-art" -> "state-of-the-art"
// The result may be empty ("--" normalizes to ""); callers skip those.
std::string normalize(std::string_view token);

// Whitespace-split a sentence and normalize each token, dropping tokens
// that normalize to the empty string.
std::vector<std::string> tokenize(std::string_view sentence);

// word -> sentiment score. Keys are normalized; missing words score 0.
class ScoredLexicon {
 public:
  void insert(std::string_view word, double score);
  double score(std::string_view normalized_word) const;
  bool contains(std::string_view normalized_word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, double> entries_;
};

// A set of 1- to 4-token phrases of a single polarity. Matching counts
// every occurrence of every lexicon n-gram among the sentence's n-gram
// windows; overlapping occurrences all count.
class NGramLexicon {
 public:
  static constexpr std::size_t kMaxTokens = 4;

  explicit NGramLexicon(Polarity polarity_tag = Polarity::Positive)
      : polarity_tag_(polarity_tag) {}

  // `ngram` is a space-separated phrase; tokens are normalized on insert.
  // Throws if the phrase has no tokens after normalization or more than
  // kMaxTokens tokens.
  void insert(std::string_view ngram);
  bool contains(const std::string& joined) const;
  std::size_t size() const { return entries_.size(); }
  Polarity polarity_tag() const { return polarity_tag_; }

 private:
  std::unordered_set<std::string> entries_;
  Polarity polarity_tag_;
};

// Count of lexicon n-grams (n = 1..4) occurring in the token sequence.
// Tokens must already be normalized.
int match_ngrams(const std::vector<std::string>& tokens,
                 const NGramLexicon& lexicon);

enum class OpinionLabel { OL1, OL2 };

// A positive and a negative word set loaded from a pair of files. The two
// halves must be disjoint.
struct OpinionLexiconPair {
  std::unordered_set<std::string> positive;
  std::unordered_set<std::string> negative;
  OpinionLabel label = OpinionLabel::OL1;

  int count_positive(const std::vector<std::string>& tokens) const;
  int count_negative(const std::vector<std::string>& tokens) const;
};

// File loaders. See README for the three formats.
ScoredLexicon load_scored_lexicon(const std::filesystem::path& path);
NGramLexicon load_ngram_lexicon(const std::filesystem::path& path,
                                Polarity polarity_tag);
OpinionLexiconPair load_opinion_pair(const std::filesystem::path& positive_path,
                                     const std::filesystem::path& negative_path,
                                     OpinionLabel label);

// Everything the feature extractor needs, loaded once and shared.
struct LexiconBundle {
  ScoredLexicon scored;                       // AS
  NGramLexicon positive_ngrams{Polarity::Positive};  // PPW
  NGramLexicon negative_words{Polarity::Negative};   // NPW
  OpinionLexiconPair ol1;
  OpinionLexiconPair ol2;
};

}  // namespace citerank

#endif  // CITERANK_LEXICONS_HPP_
