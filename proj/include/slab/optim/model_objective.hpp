#pragma once

#include <utility>
#include <vector>

#include "slab/models/config.hpp"
#include "slab/optim/optim.hpp"
#include "slab/vocab.hpp"

namespace slab::optim {

// Source ids and the marker-wrapped summary ids of one document.
using TrainingPair = std::pair<vocab::TokenIds, vocab::TokenIds>;

// evaluate(p) is the mean sequence loss of the model with parameters p over
// the batch under teacher forcing. Throws EmptyBatch and BadConfig.
Objective make_objective(const models::ModelConfig& cfg, std::vector<TrainingPair> batch,
                         vocab::EmbeddingMatrix emb);

}  // namespace slab::optim
