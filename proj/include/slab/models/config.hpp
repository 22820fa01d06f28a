#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace slab::models {

enum class ModelKind { kCoverage, kPointer, kTransformer };
enum class CellKind { kGru, kLstm };

std::string_view model_kind_name(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);
std::string_view cell_kind_name(CellKind kind);
std::optional<CellKind> parse_cell_kind(std::string_view name);

// Defaults are the full-size settings (256 hidden units, 300-d embeddings,
// 10 heads, 8 encoder and 8 decoder blocks, 6 feed-forward layers).
// desk_scale() gives the small configuration used by tests and toy runs.
struct ModelConfig {
  ModelKind kind = ModelKind::kTransformer;
  CellKind cell = CellKind::kGru;
  std::size_t hidden = 256;
  std::size_t embed_dim = 300;
  std::size_t heads = 10;
  std::size_t enc_blocks = 8;
  std::size_t dec_blocks = 8;
  std::size_t ffn_depth = 6;
  std::size_t ffn_width = 1200;
  std::size_t vocab_size = 0;
  std::size_t src_maxlen = 64;
  std::size_t tgt_maxlen = 16;
  double coverage_weight = 1.0;
  double dropout = 0.0;
  // When set, the embedding table joins the searched parameters.
  bool train_embeddings = false;

  static ModelConfig desk_scale(ModelKind kind, std::size_t vocab_size);

  // Throws BadConfig.
  void validate() const;

  // FNV-1a over the canonical text form; stored in parameter files.
  std::uint64_t digest() const;
  std::string canonical() const;

  bool operator==(const ModelConfig&) const = default;
};

}  // namespace slab::models
