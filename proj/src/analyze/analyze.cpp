#include "slab/analyze.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "slab/error.hpp"

namespace slab::analyze {
namespace {

const std::string& clean_field(const corpus::Document& doc, Field field) {
  const bool article = field == Field::kArticle;
  const std::string& clean = article ? doc.article_clean : doc.summary_clean;
  const std::string& raw = article ? doc.article_raw : doc.summary_raw;
  if (clean.empty() && !raw.empty()) {
    fail(ErrorKind::kUncleanedDocument, "document '" + doc.id + "' has not been cleaned");
  }
  return clean;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void require_docs(const std::vector<corpus::Document>& docs) {
  if (docs.empty()) fail(ErrorKind::kEmptyCorpus, "no documents to analyze");
}

}  // namespace

std::vector<std::string> whitespace_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

Histogram length_histogram(const std::vector<corpus::Document>& docs, Field field,
                           std::size_t bin_width) {
  require_docs(docs);
  if (bin_width == 0) fail(ErrorKind::kBadConfig, "histogram bin width must be positive");
  std::map<std::size_t, std::size_t> counts;
  for (const auto& doc : docs) {
    const std::size_t length = whitespace_tokens(clean_field(doc, field)).size();
    ++counts[length / bin_width];
  }
  Histogram h;
  h.bin_width = bin_width;
  const std::size_t first = counts.begin()->first;
  const std::size_t last = counts.rbegin()->first;
  for (std::size_t bin = first; bin <= last; ++bin) {
    const auto it = counts.find(bin);
    h.bins.emplace_back(bin * bin_width, it == counts.end() ? 0 : it->second);
  }
  return h;
}

FrequencyTable word_frequencies(const std::vector<corpus::Document>& docs, Field field,
                                std::size_t top_k) {
  require_docs(docs);
  std::map<std::string, std::size_t> counts;
  for (const auto& doc : docs) {
    for (auto& token : whitespace_tokens(clean_field(doc, field))) ++counts[std::move(token)];
  }
  FrequencyTable table;
  table.entries.assign(counts.begin(), counts.end());
  // std::map already orders tokens ascending; a stable sort keeps that as the tie-break.
  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (table.entries.size() > top_k) table.entries.resize(top_k);
  return table;
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "lower_bound,count\n";
  for (const auto& [lower, count] : h.bins) {
    out += std::to_string(lower) + "," + std::to_string(count) + "\n";
  }
  return out;
}

std::string frequency_csv(const FrequencyTable& t) {
  std::string out = "token,count\n";
  for (const auto& [token, count] : t.entries) {
    out += csv_field(token) + "," + std::to_string(count) + "\n";
  }
  return out;
}

}  // namespace slab::analyze
