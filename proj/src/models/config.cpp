#include "slab/models/config.hpp"

#include <charconv>
#include <cmath>

#include "slab/error.hpp"

namespace slab::models {

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kCoverage: return "coverage";
    case ModelKind::kPointer: return "pointer";
    case ModelKind::kTransformer: return "transformer";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  if (name == "coverage") return ModelKind::kCoverage;
  if (name == "pointer") return ModelKind::kPointer;
  if (name == "transformer") return ModelKind::kTransformer;
  return std::nullopt;
}

std::string_view cell_kind_name(CellKind kind) {
  return kind == CellKind::kGru ? "gru" : "lstm";
}

std::optional<CellKind> parse_cell_kind(std::string_view name) {
  if (name == "gru") return CellKind::kGru;
  if (name == "lstm") return CellKind::kLstm;
  return std::nullopt;
}

ModelConfig ModelConfig::desk_scale(ModelKind kind, std::size_t vocab_size) {
  ModelConfig cfg;
  cfg.kind = kind;
  cfg.hidden = 16;
  cfg.embed_dim = 16;
  cfg.heads = 2;
  cfg.enc_blocks = 1;
  cfg.dec_blocks = 1;
  cfg.ffn_depth = 2;
  cfg.ffn_width = 4 * cfg.embed_dim;
  cfg.vocab_size = vocab_size;
  cfg.src_maxlen = 64;
  cfg.tgt_maxlen = 16;
  return cfg;
}

void ModelConfig::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorKind::kBadConfig, what);
  };
  require(hidden >= 1 && embed_dim >= 1 && heads >= 1, "model dimensions must be positive");
  require(enc_blocks >= 1 && dec_blocks >= 1, "block counts must be positive");
  require(ffn_depth >= 1 && ffn_width >= 1, "feed-forward depth and width must be positive");
  require(vocab_size >= 5, "vocabulary must hold the reserved ids and at least one token");
  require(src_maxlen >= 2 && tgt_maxlen >= 2, "maxlens must leave room for the markers");
  require(coverage_weight >= 0.0 && std::isfinite(coverage_weight),
          "coverage weight must be a non-negative real");
  require(dropout >= 0.0 && dropout < 1.0, "dropout must lie in [0, 1)");
  if (kind == ModelKind::kTransformer) {
    require(embed_dim % heads == 0, "embed_dim must be divisible by heads");
    require(embed_dim % 2 == 0, "embed_dim must be even for positional encodings");
  }
}

std::string ModelConfig::canonical() const {
  char lambda[32];
  char drop[32];
  auto r1 = std::to_chars(lambda, lambda + sizeof(lambda), coverage_weight);
  auto r2 = std::to_chars(drop, drop + sizeof(drop), dropout);
  std::string out;
  out += "kind=" + std::string(model_kind_name(kind));
  out += ";cell=" + std::string(cell_kind_name(cell));
  out += ";hidden=" + std::to_string(hidden);
  out += ";embed_dim=" + std::to_string(embed_dim);
  out += ";heads=" + std::to_string(heads);
  out += ";enc_blocks=" + std::to_string(enc_blocks);
  out += ";dec_blocks=" + std::to_string(dec_blocks);
  out += ";ffn_depth=" + std::to_string(ffn_depth);
  out += ";ffn_width=" + std::to_string(ffn_width);
  out += ";vocab_size=" + std::to_string(vocab_size);
  out += ";src_maxlen=" + std::to_string(src_maxlen);
  out += ";tgt_maxlen=" + std::to_string(tgt_maxlen);
  out += ";coverage_weight=" + std::string(lambda, r1.ptr);
  out += ";dropout=" + std::string(drop, r2.ptr);
  out += ";train_embeddings=" + std::string(train_embeddings ? "1" : "0");
  return out;
}

std::uint64_t ModelConfig::digest() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace slab::models
