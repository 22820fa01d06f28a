#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "slab/corpus.hpp"
#include "slab/models/config.hpp"
#include "slab/optim/optim.hpp"

namespace slab::cli {

struct DataConfig {
  std::filesystem::path corpus;
  corpus::SplitFractions fractions = corpus::kDefaultFractions;
  std::size_t src_maxlen = 64;
  std::size_t tgt_maxlen = 16;
  std::size_t min_count = 2;
  // Documents taken from the front of the train split for the objective.
  std::size_t batch_size = 8;
  // Documents taken from the front of the validation split for the
  // per-iteration validation column.
  std::size_t validation_size = 8;
  std::optional<std::filesystem::path> gazetteer;
  std::optional<std::filesystem::path> embeddings;
};

struct ExperimentConfig {
  models::ModelConfig model;  // vocab_size and maxlens are filled in at train time
  optim::Algorithm algorithm = optim::Algorithm::kPso;
  optim::OptConfig optimizer;
  DataConfig data;
  std::uint64_t seed = 1;
};

// Flat `key = value` text with dotted sections. Blank lines and `#` comments
// are ignored. Relative paths resolve against base_dir. Unknown keys,
// duplicate keys and unparseable values throw BadConfig. See README for the
// full key list.
ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// Every key with its effective value, in a form parse_experiment_config reads
// back to the same configuration.
std::string serialize_experiment_config(const ExperimentConfig& cfg);

}  // namespace slab::cli
