#include <doctest.h>

#include <algorithm>

#include "slab/analyze.hpp"
#include "slab/rng.hpp"
#include "support.hpp"

using namespace slab;
using namespace slab::analyze;
using slab::testing::kind_of;

namespace {

corpus::Document clean(std::string article, std::string summary = {}) {
  corpus::Document d;
  d.article_raw = d.article_clean = std::move(article);
  d.summary_raw = d.summary_clean = std::move(summary);
  return d;
}

std::vector<corpus::Document> docs_of_lengths(std::initializer_list<std::size_t> lengths) {
  std::vector<corpus::Document> docs;
  for (std::size_t n : lengths) {
    std::string text;
    for (std::size_t i = 0; i < n; ++i) text += (i ? " w" : "w");
    docs.push_back(clean(text, text));
  }
  return docs;
}

using Bins = std::vector<std::pair<std::size_t, std::size_t>>;

}  // namespace

TEST_CASE("length_histogram examples") {
  CHECK(length_histogram(docs_of_lengths({3, 5, 12}), Field::kArticle, 10).bins ==
        Bins{{0, 2}, {10, 1}});
  CHECK(length_histogram({clean("text", "")}, Field::kSummary, 10).bins == Bins{{0, 1}});
  CHECK(length_histogram(docs_of_lengths({35, 41, 54}), Field::kArticle, 10).bins ==
        Bins{{30, 1}, {40, 1}, {50, 1}});
  // Empty bins between occupied ones are kept so bounds step by the width.
  CHECK(length_histogram(docs_of_lengths({1, 25}), Field::kArticle, 10).bins ==
        Bins{{0, 1}, {10, 0}, {20, 1}});
}

TEST_CASE("length_histogram errors") {
  CHECK(kind_of([] { length_histogram({}, Field::kArticle, 10); }) == ErrorKind::kEmptyCorpus);
  CHECK(kind_of([] { length_histogram(docs_of_lengths({1}), Field::kArticle, 0); }) ==
        ErrorKind::kBadConfig);
  corpus::Document raw;
  raw.article_raw = "Not cleaned";
  CHECK(kind_of([&] { length_histogram({raw}, Field::kArticle, 10); }) ==
        ErrorKind::kUncleanedDocument);
}

TEST_CASE("histogram counts sum to the document count") {
  RngStream rng(9, 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<corpus::Document> docs;
    const std::size_t n = 1 + rng.next_index(30);
    for (std::size_t i = 0; i < n; ++i) {
      std::string text;
      const std::size_t len = rng.next_index(80);
      for (std::size_t k = 0; k < len; ++k) text += "t ";
      docs.push_back(clean("a " + text, text));
    }
    const std::size_t width = 1 + rng.next_index(15);
    for (Field field : {Field::kArticle, Field::kSummary}) {
      const Histogram h = length_histogram(docs, field, width);
      std::size_t total = 0;
      for (auto [lo, count] : h.bins) total += count;
      CHECK(total == n);
      for (std::size_t b = 1; b < h.bins.size(); ++b)
        CHECK(h.bins[b].first == h.bins[b - 1].first + width);
    }
  }
}

TEST_CASE("word_frequencies examples") {
  using Entries = std::vector<std::pair<std::string, std::size_t>>;
  CHECK(word_frequencies({clean("a a b")}, Field::kArticle, 2).entries == Entries{{"a", 2}, {"b", 1}});
  CHECK(word_frequencies({clean("x")}, Field::kArticle, 5).entries == Entries{{"x", 1}});
  CHECK(word_frequencies({clean("say say will new say will")}, Field::kArticle, 2).entries ==
        Entries{{"say", 3}, {"will", 2}});
  CHECK(word_frequencies({clean("b a c")}, Field::kArticle, 3).entries ==
        Entries{{"a", 1}, {"b", 1}, {"c", 1}});
  CHECK(kind_of([] { word_frequencies({}, Field::kArticle, 1); }) == ErrorKind::kEmptyCorpus);
}

TEST_CASE("word_frequencies is permutation invariant and prefix monotone") {
  const char* words[] = {"say", "will", "new", "the", "a", "of"};
  RngStream rng(17, 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<corpus::Document> docs;
    for (std::size_t i = 0, n = 1 + rng.next_index(8); i < n; ++i) {
      std::string text = "x";
      for (std::size_t k = 0, len = rng.next_index(20); k < len; ++k)
        text += std::string(" ") + words[rng.next_index(6)];
      docs.push_back(clean(text));
    }
    const auto full = word_frequencies(docs, Field::kArticle, 10);
    auto shuffled = docs;
    std::reverse(shuffled.begin(), shuffled.end());
    std::rotate(shuffled.begin(), shuffled.begin() + shuffled.size() / 2, shuffled.end());
    CHECK(word_frequencies(shuffled, Field::kArticle, 10) == full);

    for (std::size_t k = 1; k < 8; ++k) {
      const auto a = word_frequencies(docs, Field::kArticle, k).entries;
      const auto b = word_frequencies(docs, Field::kArticle, k + 1).entries;
      REQUIRE(a.size() <= b.size());
      CHECK(std::equal(a.begin(), a.end(), b.begin()));
    }
  }
}

TEST_CASE("csv emission") {
  CHECK(histogram_csv(length_histogram(docs_of_lengths({3, 5, 12}), Field::kArticle, 10)) ==
        "lower_bound,count\n0,2\n10,1\n");
  CHECK(frequency_csv(word_frequencies({clean("a a b")}, Field::kArticle, 2)) ==
        "token,count\na,2\nb,1\n");
}
