#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "slab/corpus.hpp"
#include "slab/matrix.hpp"

namespace slab::vocab {

using TokenId = std::int32_t;

inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kUnkId = 1;
inline constexpr TokenId kStartId = 2;
inline constexpr TokenId kEndId = 3;
inline constexpr TokenId kFirstCorpusId = 4;

inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kUnkToken = "<unk>";
inline constexpr std::string_view kStartToken = "<s>";
inline constexpr std::string_view kEndToken = "</s>";

inline constexpr std::size_t kDefaultMinCount = 2;
inline constexpr std::size_t kDefaultArticleMaxlen = 64;
inline constexpr std::size_t kDefaultSummaryMaxlen = 16;

class Vocabulary {
 public:
  // Reserved tokens only.
  Vocabulary();

  // Tokens seen fewer than min_count times are left out and will encode to
  // kUnkId. Kept tokens are ordered by count descending, then lexicographically.
  // Throws EmptyCorpus when sequences is empty.
  static Vocabulary build(const std::vector<std::vector<std::string>>& sequences,
                          std::size_t min_count);

  // Inverse of serialize(). Throws BadConfig on malformed rows.
  static Vocabulary parse(std::string_view text);

  std::size_t size() const { return id_to_token_.size(); }
  bool contains(std::string_view token) const;
  TokenId id_of(std::string_view token) const;  // kUnkId when absent
  const std::string& token_of(TokenId id) const;  // throws UnknownId
  std::size_t count_of(TokenId id) const;
  std::size_t min_count() const { return min_count_; }

  // `token<TAB>id<TAB>count` per line, reserved rows first.
  std::string serialize() const;

  bool operator==(const Vocabulary& other) const {
    return id_to_token_ == other.id_to_token_ && counts_ == other.counts_;
  }

 private:
  TokenId append(std::string token, std::size_t count);

  std::unordered_map<std::string, TokenId> token_to_id_;
  std::vector<std::string> id_to_token_;
  std::vector<std::size_t> counts_;
  std::size_t min_count_ = 1;
};

// Counts whitespace tokens of both clean fields.
Vocabulary build_vocabulary(const std::vector<corpus::Document>& docs, std::size_t min_count);

struct TokenIds {
  std::vector<TokenId> ids;
  std::size_t true_length = 0;

  std::size_t capacity() const { return ids.size(); }
  std::span<const TokenId> prefix() const { return {ids.data(), true_length}; }

  bool operator==(const TokenIds&) const = default;
};

// Maps unknown tokens to kUnkId, optionally wraps in start/end markers,
// truncates to maxlen (keeping the end marker last) and pads with kPadId.
// Throws ZeroMaxlen.
TokenIds encode(std::span<const std::string> tokens, const Vocabulary& vocab, std::size_t maxlen,
                bool add_markers);

// Drops pad/start/end ids. Throws UnknownId.
std::vector<std::string> decode_ids(std::span<const TokenId> ids, const Vocabulary& vocab);
inline std::vector<std::string> decode_ids(const TokenIds& ids, const Vocabulary& vocab) {
  return decode_ids(std::span<const TokenId>(ids.ids), vocab);
}

struct EmbeddingMatrix {
  Matrix values;  // one row per vocabulary id
  bool frozen = true;

  std::size_t rows() const { return values.rows(); }
  std::size_t dim() const { return values.cols(); }
  std::span<const double> row(TokenId id) const { return values.row(static_cast<std::size_t>(id)); }
};

inline constexpr std::size_t kDefaultEmbeddingDim = 300;
inline constexpr double kInitRange = 0.05;

// Every row drawn uniformly from [-0.05, 0.05) with stream (seed, token id);
// pad row zero.
EmbeddingMatrix random_embeddings(const Vocabulary& vocab, std::size_t dim, std::uint64_t seed);

// GloVe text format: `token r1 r2 ... r_dim` per line. Rows for tokens in the
// file are copied verbatim; the rest keep their seeded random init. Throws
// DimMismatch on any line whose real count differs from dim.
EmbeddingMatrix parse_embeddings(std::string_view text, const Vocabulary& vocab, std::size_t dim,
                                 std::uint64_t seed);
// Throws IoFailure, DimMismatch.
EmbeddingMatrix load_embeddings(const std::filesystem::path& path, const Vocabulary& vocab,
                                std::size_t dim, std::uint64_t seed);

// Writes every row in GloVe format with round-trip precision.
std::string serialize_embeddings(const EmbeddingMatrix& emb, const Vocabulary& vocab);

class Gazetteer {
 public:
  // Phrase is lowercased and split on whitespace. Throws BadConfig on an
  // empty phrase or label.
  void add(std::string_view phrase, std::string_view label);

  // Lines `phrase<TAB>label`; blank lines and `#` comments ignored.
  static Gazetteer parse(std::string_view text);
  static Gazetteer load(const std::filesystem::path& path);

  bool empty() const { return entries_.empty(); }
  std::size_t longest_phrase() const { return longest_; }
  // Label for an exact phrase, or null.
  const std::string* find(std::span<const std::string> phrase) const;

 private:
  std::unordered_map<std::string, std::string> entries_;  // space-joined phrase -> label
  std::size_t longest_ = 0;
};

// Leftmost-longest replacement of gazetteer phrases by `<ent:LABEL>`.
std::vector<std::string> tag_entities(std::span<const std::string> tokens, const Gazetteer& gaz);

std::string entity_token(std::string_view label);

}  // namespace slab::vocab
