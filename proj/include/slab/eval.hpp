#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slab::eval {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool operator==(const RougeScore&) const = default;
};

// f1 = 2pr / (p + r), or 0 when p + r == 0.
RougeScore make_score(double precision, double recall);

using Ngram = std::vector<std::string>;
using NgramCounts = std::map<Ngram, std::size_t>;

// Contiguous n-grams with multiplicity; empty when n == 0 or the input is
// shorter than n.
NgramCounts ngram_counts(std::span<const std::string> tokens, std::size_t n);

RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
                   std::size_t n);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

// Summary-level LCS: each summary is one token sequence.
RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference);

struct RougeRow {
  std::string id;
  RougeScore r1;
  RougeScore r2;
  RougeScore rl;
};

// Scores two whitespace-tokenized summaries.
RougeRow score_pair(std::string id, std::string_view candidate, std::string_view reference);

// One summary per line; a final newline does not start another summary.
std::vector<std::string> split_lines(std::string_view text);

// Rows are ids 1..n in line order followed by a "mean" row. Throws
// LineCountMismatch.
std::vector<RougeRow> score_lines(std::string_view candidates, std::string_view references);

// Header id,r1_p,r1_r,r1_f,r2_p,r2_r,r2_f,rl_p,rl_r,rl_f.
std::string rouge_csv(const std::vector<RougeRow>& rows);

}  // namespace slab::eval
