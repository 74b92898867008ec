// corpus.hpp
//
// Citation corpus ingestion: polarity encoding, TSV loading, ordered
// train/test splitting and per-class counts.

#ifndef CITERANK_CORPUS_HPP_
#define CITERANK_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace citerank {

// Three-way citation polarity. On disk a polarity is one of the single
// characters 'p', 'o', 'n'; numerically it maps to +1, 0, -1.
enum class Polarity : std::uint8_t { Positive, Neutral, Negative };

// 'p' -> Positive, 'o' -> Neutral, 'n' -> Negative. Anything else throws.
Polarity parse_polarity(char c);
char polarity_char(Polarity p) noexcept;
int polarity_value(Polarity p) noexcept;  // +1 / 0 / -1
const char* polarity_name(Polarity p) noexcept;

// One citation event: a sentence in `source_id` citing `target_id`.
struct CitationInstance {
  std::string source_id;
  std::string target_id;
  std::string sentence;
  std::optional<Polarity> gold;
};

struct CorpusSplit {
  std::vector<CitationInstance> training;
  std::vector<CitationInstance> test;
};

struct ClassCounts {
  std::int64_t positive = 0;
  std::int64_t neutral = 0;
  std::int64_t negative = 0;

  std::int64_t total() const noexcept { return positive + neutral + negative; }
  std::int64_t& of(Polarity p) noexcept;
  std::int64_t of(Polarity p) const noexcept;
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

// Descriptor for the on-disk corpus layout. There is a single supported
// layout (4 tab-separated columns, LF line endings); the descriptor exists
// so callers state which one they mean.
struct CorpusFormat {
  char delimiter = '\t';
  int columns = 4;
};

// Loads all records of a corpus file in file order. A malformed line
// (wrong column count, empty ids, blank sentence) or an unknown polarity
// character raises std::runtime_error naming the offending line.
std::vector<CitationInstance> load_corpus(const std::filesystem::path& path,
                                          const CorpusFormat& format = {});

// Inverse of load_corpus: loading then re-serializing a well-formed file
// reproduces it byte for byte.
std::string serialize_corpus(const std::vector<CitationInstance>& corpus,
                             const CorpusFormat& format = {});

// First n_train instances (file order) become training, the rest test.
CorpusSplit split_corpus(const std::vector<CitationInstance>& corpus,
                         std::size_t n_train);

// Per-polarity counts. Every instance must carry a gold label.
ClassCounts class_counts(const std::vector<CitationInstance>& instances);

}  // namespace citerank

#endif  // CITERANK_CORPUS_HPP_
