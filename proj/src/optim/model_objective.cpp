#include <memory>

#include "slab/error.hpp"
#include "slab/models/model.hpp"
#include "slab/optim/model_objective.hpp"

namespace slab::optim {

namespace {

struct BatchItem {
  vocab::TokenIds src;
  vocab::TokenIds tgt_in;
  vocab::TokenIds targets;
};

}  // namespace

Objective make_objective(const models::ModelConfig& cfg, std::vector<TrainingPair> batch,
                         vocab::EmbeddingMatrix emb) {
  if (batch.empty()) fail(ErrorKind::kEmptyBatch, "objective needs at least one training pair");
  std::shared_ptr<const models::Model> model = models::make_model(cfg);

  auto items = std::make_shared<std::vector<BatchItem>>();
  for (auto& [src, summary] : batch) {
    auto [tgt_in, targets] = models::teacher_forcing(summary);
    items->push_back({std::move(src), std::move(tgt_in), std::move(targets)});
  }
  auto table = std::make_shared<const vocab::EmbeddingMatrix>(std::move(emb));

  const std::size_t arity = model->parameter_count();
  return Objective(arity, [model, items, table](std::span<const double> p) {
    const double lambda = model->config().coverage_weight;
    const bool drop = model->config().dropout > 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < items->size(); ++i) {
      const auto& item = (*items)[i];
      // A fixed mask per batch item keeps evaluate() a pure function of p.
      const RngStream mask(0x64726F70ULL, i);
      models::ForwardOptions opts;
      if (drop) opts.dropout_stream = &mask;
      const auto r = model->forward(p, item.src, item.tgt_in, *table, opts);
      total += models::sequence_loss(r.logits, item.targets, vocab::kPadId, r.coverage_loss, lambda);
    }
    return total / static_cast<double>(items->size());
  });
}

}  // namespace slab::optim
