#include <algorithm>

#include "slab/analyze.hpp"
#include "slab/error.hpp"
#include "slab/eval.hpp"
#include "slab/format.hpp"

namespace slab::eval {

RougeScore make_score(double precision, double recall) {
  const double sum = precision + recall;
  return {precision, recall, sum > 0.0 ? 2.0 * precision * recall / sum : 0.0};
}

NgramCounts ngram_counts(std::span<const std::string> tokens, std::size_t n) {
  NgramCounts counts;
  if (n == 0 || tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Ngram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
                   std::size_t n) {
  const NgramCounts cand = ngram_counts(candidate, n);
  const NgramCounts ref = ngram_counts(reference, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    if (auto it = ref.find(gram); it != ref.end()) overlap += std::min(count, it->second);
  }
  const std::size_t cand_total = n == 0 || candidate.size() < n ? 0 : candidate.size() - n + 1;
  const std::size_t ref_total = n == 0 || reference.size() < n ? 0 : reference.size() - n + 1;
  const double o = static_cast<double>(overlap);
  return make_score(cand_total ? o / static_cast<double>(cand_total) : 0.0,
                    ref_total ? o / static_cast<double>(ref_total) : 0.0);
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  // Two-row DP table.
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference) {
  const double l = static_cast<double>(lcs_length(candidate, reference));
  return make_score(candidate.empty() ? 0.0 : l / static_cast<double>(candidate.size()),
                    reference.empty() ? 0.0 : l / static_cast<double>(reference.size()));
}

RougeRow score_pair(std::string id, std::string_view candidate, std::string_view reference) {
  const auto cand = analyze::whitespace_tokens(candidate);
  const auto ref = analyze::whitespace_tokens(reference);
  return {std::move(id), rouge_n(cand, ref, 1), rouge_n(cand, ref, 2), rouge_l(cand, ref)};
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<RougeRow> score_lines(std::string_view candidates, std::string_view references) {
  const auto cand = split_lines(candidates);
  const auto ref = split_lines(references);
  if (cand.size() != ref.size()) {
    fail(ErrorKind::kLineCountMismatch, std::to_string(cand.size()) + " candidate lines vs " +
                                            std::to_string(ref.size()) + " reference lines");
  }
  std::vector<RougeRow> rows;
  RougeRow mean{"mean", {}, {}, {}};
  for (std::size_t i = 0; i < cand.size(); ++i) {
    rows.push_back(score_pair(std::to_string(i + 1), cand[i], ref[i]));
    for (auto [acc, s] : {std::pair{&mean.r1, &rows.back().r1}, std::pair{&mean.r2, &rows.back().r2},
                          std::pair{&mean.rl, &rows.back().rl}}) {
      acc->precision += s->precision;
      acc->recall += s->recall;
      acc->f1 += s->f1;
    }
  }
  if (!rows.empty()) {
    const double n = static_cast<double>(rows.size());
    for (RougeScore* s : {&mean.r1, &mean.r2, &mean.rl}) {
      s->precision /= n;
      s->recall /= n;
      s->f1 /= n;
    }
  }
  rows.push_back(mean);
  return rows;
}

std::string rouge_csv(const std::vector<RougeRow>& rows) {
  std::string out = "id,r1_p,r1_r,r1_f,r2_p,r2_r,r2_f,rl_p,rl_r,rl_f\n";
  for (const auto& row : rows) {
    out += row.id;
    for (const RougeScore* s : {&row.r1, &row.r2, &row.rl}) {
      out += "," + format_double(s->precision) + "," + format_double(s->recall) + "," +
             format_double(s->f1);
    }
    out += "\n";
  }
  return out;
}

}  // namespace slab::eval
