#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "slab/corpus.hpp"

namespace slab::analyze {

enum class Field { kArticle, kSummary };

struct Histogram {
  std::size_t bin_width = 1;
  // (lower bound, count), contiguous from the lowest to the highest occupied bin.
  std::vector<std::pair<std::size_t, std::size_t>> bins;

  bool operator==(const Histogram&) const = default;
};

struct FrequencyTable {
  // Sorted by count descending, then token ascending.
  std::vector<std::pair<std::string, std::size_t>> entries;

  bool operator==(const FrequencyTable&) const = default;
};

std::vector<std::string> whitespace_tokens(std::string_view text);

// Throws EmptyCorpus, UncleanedDocument, BadConfig (zero bin width).
Histogram length_histogram(const std::vector<corpus::Document>& docs, Field field,
                           std::size_t bin_width);

// Throws EmptyCorpus, UncleanedDocument.
FrequencyTable word_frequencies(const std::vector<corpus::Document>& docs, Field field,
                                std::size_t top_k);

// Header line `lower_bound,count` / `token,count` followed by one row per entry.
std::string histogram_csv(const Histogram& h);
std::string frequency_csv(const FrequencyTable& t);

}  // namespace slab::analyze
