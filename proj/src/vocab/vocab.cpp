#include "slab/vocab.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "slab/analyze.hpp"
#include "slab/error.hpp"
#include "slab/rng.hpp"

namespace slab::vocab {
namespace {

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t hit = line.find(sep, start);
    if (hit == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, hit - start));
    start = hit + 1;
  }
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

Vocabulary::Vocabulary() {
  append(std::string(kPadToken), 0);
  append(std::string(kUnkToken), 0);
  append(std::string(kStartToken), 0);
  append(std::string(kEndToken), 0);
}

TokenId Vocabulary::append(std::string token, std::size_t count) {
  const auto id = static_cast<TokenId>(id_to_token_.size());
  token_to_id_.emplace(token, id);
  id_to_token_.push_back(std::move(token));
  counts_.push_back(count);
  return id;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& sequences,
                             std::size_t min_count) {
  if (sequences.empty()) fail(ErrorKind::kEmptyCorpus, "cannot build a vocabulary from nothing");
  std::map<std::string, std::size_t> counts;
  for (const auto& seq : sequences)
    for (const auto& token : seq) ++counts[token];

  Vocabulary vocab;
  vocab.min_count_ = std::max<std::size_t>(min_count, 1);
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [token, count] : counts) {
    if (count >= vocab.min_count_ && !vocab.contains(token)) kept.emplace_back(token, count);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (auto& [token, count] : kept) vocab.append(std::move(token), count);
  return vocab;
}

Vocabulary Vocabulary::parse(std::string_view text) {
  Vocabulary vocab;
  std::size_t line_no = 0;
  std::size_t min_count = 0;
  for (std::string_view line : split_fields(text, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line, '\t');
    TokenId id = 0;
    std::size_t count = 0;
    if (fields.size() != 3 || !parse_number(fields[1], id) || !parse_number(fields[2], count)) {
      fail(ErrorKind::kBadConfig, "vocabulary line " + std::to_string(line_no) + " is malformed");
    }
    if (id < kFirstCorpusId) {
      if (fields[0] != vocab.id_to_token_[static_cast<std::size_t>(id)]) {
        fail(ErrorKind::kBadConfig, "vocabulary reserved row " + std::to_string(id) + " mismatch");
      }
      continue;
    }
    if (static_cast<std::size_t>(id) != vocab.size()) {
      fail(ErrorKind::kBadConfig, "vocabulary ids are not contiguous at line " +
                                      std::to_string(line_no));
    }
    vocab.append(std::string(fields[0]), count);
    min_count = min_count == 0 ? count : std::min(min_count, count);
  }
  vocab.min_count_ = std::max<std::size_t>(min_count, 1);
  return vocab;
}

bool Vocabulary::contains(std::string_view token) const {
  return token_to_id_.find(std::string(token)) != token_to_id_.end();
}

TokenId Vocabulary::id_of(std::string_view token) const {
  const auto it = token_to_id_.find(std::string(token));
  return it == token_to_id_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::token_of(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= size()) {
    fail(ErrorKind::kUnknownId, "token id " + std::to_string(id) + " outside vocabulary of " +
                                    std::to_string(size()));
  }
  return id_to_token_[static_cast<std::size_t>(id)];
}

std::size_t Vocabulary::count_of(TokenId id) const {
  token_of(id);
  return counts_[static_cast<std::size_t>(id)];
}

std::string Vocabulary::serialize() const {
  std::string out;
  for (std::size_t i = 0; i < size(); ++i) {
    out += id_to_token_[i];
    out += '\t';
    out += std::to_string(i);
    out += '\t';
    out += std::to_string(counts_[i]);
    out += '\n';
  }
  return out;
}

Vocabulary build_vocabulary(const std::vector<corpus::Document>& docs, std::size_t min_count) {
  std::vector<std::vector<std::string>> sequences;
  sequences.reserve(docs.size() * 2);
  for (const auto& doc : docs) {
    sequences.push_back(analyze::whitespace_tokens(doc.article_clean));
    sequences.push_back(analyze::whitespace_tokens(doc.summary_clean));
  }
  return Vocabulary::build(sequences, min_count);
}

TokenIds encode(std::span<const std::string> tokens, const Vocabulary& vocab, std::size_t maxlen,
                bool add_markers) {
  if (maxlen == 0) fail(ErrorKind::kZeroMaxlen, "maxlen must be positive");
  std::vector<TokenId> ids;
  ids.reserve(tokens.size() + 2);
  if (add_markers) ids.push_back(kStartId);
  for (const auto& token : tokens) ids.push_back(vocab.id_of(token));
  if (add_markers) ids.push_back(kEndId);

  if (ids.size() > maxlen) {
    ids.resize(maxlen);
    if (add_markers) ids.back() = kEndId;
  }
  TokenIds out;
  out.true_length = ids.size();
  ids.resize(maxlen, kPadId);
  out.ids = std::move(ids);
  return out;
}

std::vector<std::string> decode_ids(std::span<const TokenId> ids, const Vocabulary& vocab) {
  std::vector<std::string> tokens;
  for (TokenId id : ids) {
    const std::string& token = vocab.token_of(id);
    if (id == kPadId || id == kStartId || id == kEndId) continue;
    tokens.push_back(token);
  }
  return tokens;
}

EmbeddingMatrix random_embeddings(const Vocabulary& vocab, std::size_t dim, std::uint64_t seed) {
  if (dim == 0) fail(ErrorKind::kDimMismatch, "embedding dimension must be positive");
  EmbeddingMatrix emb{Matrix(vocab.size(), dim), true};
  for (std::size_t id = 1; id < vocab.size(); ++id) {
    RngStream rng(seed, id);
    for (double& v : emb.values.row(id)) v = rng.next_uniform(-kInitRange, kInitRange);
  }
  return emb;
}

EmbeddingMatrix parse_embeddings(std::string_view text, const Vocabulary& vocab, std::size_t dim,
                                 std::uint64_t seed) {
  EmbeddingMatrix emb = random_embeddings(vocab, dim, seed);
  std::vector<bool> seen(vocab.size(), false);
  std::size_t line_no = 0;
  for (std::string_view line : split_fields(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = split_fields(line, ' ');
    std::erase_if(fields, [](std::string_view f) { return f.empty(); });
    if (fields.size() != dim + 1) {
      fail(ErrorKind::kDimMismatch, "embedding line " + std::to_string(line_no) + " has " +
                                        std::to_string(fields.size() - 1) + " values, expected " +
                                        std::to_string(dim));
    }
    std::vector<double> row(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      if (!parse_number(fields[k + 1], row[k])) {
        fail(ErrorKind::kDimMismatch, "embedding line " + std::to_string(line_no) +
                                          " has a non-numeric value");
      }
    }
    if (!vocab.contains(fields[0])) continue;
    const auto id = static_cast<std::size_t>(vocab.id_of(fields[0]));
    if (id == static_cast<std::size_t>(kPadId) || seen[id]) continue;
    seen[id] = true;
    std::copy(row.begin(), row.end(), emb.values.row(id).begin());
  }
  return emb;
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path, const Vocabulary& vocab,
                                std::size_t dim, std::uint64_t seed) {
  return parse_embeddings(corpus::read_file(path), vocab, dim, seed);
}

std::string serialize_embeddings(const EmbeddingMatrix& emb, const Vocabulary& vocab) {
  std::string out;
  char buffer[64];
  for (std::size_t id = 0; id < emb.rows(); ++id) {
    out += vocab.token_of(static_cast<TokenId>(id));
    for (double v : emb.values.row(id)) {
      const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
      out += ' ';
      out.append(buffer, ptr);
    }
    out += '\n';
  }
  return out;
}

std::string entity_token(std::string_view label) {
  return "<ent:" + std::string(label) + ">";
}

void Gazetteer::add(std::string_view phrase, std::string_view label) {
  const auto tokens = analyze::whitespace_tokens(corpus::to_lower_ascii(phrase));
  if (tokens.empty() || label.empty()) {
    fail(ErrorKind::kBadConfig, "gazetteer entries need a phrase and a label");
  }
  std::string key;
  for (const auto& t : tokens) {
    if (!key.empty()) key += ' ';
    key += t;
  }
  entries_[key] = std::string(label);
  longest_ = std::max(longest_, tokens.size());
}

Gazetteer Gazetteer::parse(std::string_view text) {
  Gazetteer gaz;
  std::size_t line_no = 0;
  for (std::string_view line : split_fields(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 2) {
      fail(ErrorKind::kBadConfig, "gazetteer line " + std::to_string(line_no) +
                                      " must be `phrase<TAB>label`");
    }
    gaz.add(fields[0], fields[1]);
  }
  return gaz;
}

Gazetteer Gazetteer::load(const std::filesystem::path& path) {
  return parse(corpus::read_file(path));
}

const std::string* Gazetteer::find(std::span<const std::string> phrase) const {
  std::string key;
  for (const auto& t : phrase) {
    if (!key.empty()) key += ' ';
    key += t;
  }
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> tag_entities(std::span<const std::string> tokens, const Gazetteer& gaz) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t matched = 0;
    const std::string* label = nullptr;
    const std::size_t longest = std::min(gaz.longest_phrase(), tokens.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      if ((label = gaz.find(tokens.subspan(i, len)))) {
        matched = len;
        break;
      }
    }
    if (matched) {
      out.push_back(entity_token(*label));
      i += matched;
    } else {
      out.push_back(tokens[i++]);
    }
  }
  return out;
}

}  // namespace slab::vocab
