// Shared fixtures for the test binaries: scratch directories that clean
// themselves up and a small in-memory lexicon bundle.

#ifndef CITERANK_TESTS_HELPERS_HPP_
#define CITERANK_TESTS_HELPERS_HPP_

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>

#include "citerank/lexicons.hpp"

namespace testutil {

inline std::filesystem::path unique_temp_dir() {
  static std::atomic<unsigned> counter{0};
  const auto base = std::filesystem::temp_directory_path();
  std::filesystem::path dir;
  do {
    dir = base / ("citerank-test-" + std::to_string(::getpid()) + "-" +
                  std::to_string(counter++));
  } while (std::filesystem::exists(dir));
  std::filesystem::create_directories(dir);
  return dir;
}

struct TempDir {
  std::filesystem::path path = unique_temp_dir();

  TempDir() = default;
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }

  std::filesystem::path file(const std::string& name,
                             const std::string& content) const {
    const auto p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
};

// A deliberately small bundle with known contents, built in memory so
// feature tests do not depend on the shipped data files.
inline citerank::LexiconBundle demo_bundle() {
  citerank::LexiconBundle b;
  b.scored.insert("good", 0.5);
  b.scored.insert("great", 0.75);
  b.scored.insert("poor", -0.5);
  b.scored.insert("bad", -0.75);
  b.positive_ngrams = citerank::NGramLexicon(citerank::Polarity::Positive);
  b.positive_ngrams.insert("good");
  b.positive_ngrams.insert("widely used");
  b.positive_ngrams.insert("state of the art");
  b.negative_words = citerank::NGramLexicon(citerank::Polarity::Negative);
  b.negative_words.insert("however");
  b.negative_words.insert("not able to");
  b.ol1.label = citerank::OpinionLabel::OL1;
  b.ol1.positive = {"useful", "robust"};
  b.ol1.negative = {"weak", "noisy"};
  b.ol2.label = citerank::OpinionLabel::OL2;
  b.ol2.positive = {"elegant"};
  b.ol2.negative = {"fragile", "slow"};
  return b;
}

}  // namespace testutil

#endif  // CITERANK_TESTS_HELPERS_HPP_
