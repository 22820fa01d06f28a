#include <doctest.h>

#include <cmath>
#include <bit>
#include <limits>
#include <numeric>

#include "slab/models/attention.hpp"
#include "slab/models/model.hpp"
#include "slab/models/param_file.hpp"
#include "slab/models/recurrent.hpp"
#include "slab/models/transformer.hpp"
#include "slab/rng.hpp"
#include "support.hpp"

using namespace slab;
using namespace slab::models;
using slab::testing::kind_of;
using slab::testing::TempDir;
using vocab::TokenId;
using vocab::TokenIds;

namespace {

std::vector<double> random_values(std::uint64_t seed, std::size_t n, double range = 0.5) {
  return rand_uniform(RngStream(seed, 0), -range, range, n).first;
}

vocab::EmbeddingMatrix random_table(std::size_t rows, std::size_t dim, std::uint64_t seed) {
  return {Matrix(rows, dim, random_values(seed, rows * dim)), true};
}

TokenIds ids_of(std::vector<TokenId> ids) {
  const std::size_t n = ids.size();
  return {std::move(ids), n};
}

TokenIds random_ids(RngStream& rng, std::size_t n, std::size_t vocab) {
  std::vector<TokenId> ids(n);
  for (auto& id : ids) id = static_cast<TokenId>(4 + rng.next_index(vocab - 4));
  return ids_of(ids);
}

MatrixView view_of(const Matrix& m) { return m.view(); }

bool is_distribution(std::span<const double> p) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= 1e-9;
}

}  // namespace

TEST_CASE("coverage_update and coverage_loss") {
  using V = std::vector<double>;
  CHECK(coverage_update(V{0, 0, 0}, V{0.6, 0.3, 0.1}) == V{0.6, 0.3, 0.1});
  const V next = coverage_update(V{0.6, 0.3, 0.1}, V{0.5, 0.4, 0.1});
  CHECK(next[0] == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(next[1] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(next[2] == doctest::Approx(0.2).epsilon(1e-15));

  const V a{0.25, 0.5, 0.25};
  V cov{0, 0, 0};
  for (int t = 1; t <= 4; ++t) {
    cov = coverage_update(cov, a);
    for (std::size_t i = 0; i < 3; ++i) CHECK(cov[i] == t * a[i]);
  }

  CHECK(coverage_loss(V{0.5, 0.4, 0.1}, V{0, 0, 0}) == 0.0);
  CHECK(coverage_loss(V{0.5, 0.4, 0.1}, V{0.6, 0.3, 0.1}) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(coverage_loss(a, a) == 1.0);

  CHECK(kind_of([] { coverage_update(V{1}, V{1, 2}); }) == ErrorKind::kLengthMismatch);
  CHECK(kind_of([] { coverage_loss(V{1}, V{1, 2}); }) == ErrorKind::kLengthMismatch);
}

TEST_CASE("attention_step") {
  const Matrix one = Matrix::from_rows({{1}});
  const std::vector<double> v{1};
  const AttentionWeights w{view_of(one), view_of(one), v, 0.0};
  const Matrix enc = Matrix::from_rows({{0.5}, {-0.5}});
  const auto out = attention_step(std::vector<double>{0}, enc, std::vector<double>{0, 0}, w, true);
  // softmax(tanh(0.5), tanh(-0.5))
  CHECK(out.weights[0] == doctest::Approx(0.716).epsilon(1e-3));
  CHECK(out.weights[1] == doctest::Approx(0.284).epsilon(1e-3));
  const double oracle = 1.0 / (1.0 + std::exp(-2.0 * std::tanh(0.5)));
  CHECK(std::abs(out.weights[0] - oracle) < 1e-12);

  // Zero weights give uniform attention and the mean encoder state.
  const Matrix z2(2, 2), z22(2, 2);
  const std::vector<double> zv(2, 0.0);
  const AttentionWeights zero{view_of(z2), view_of(z22), zv, 0.0};
  const Matrix enc3 = Matrix::from_rows({{1, 2}, {3, 4}, {5, 9}});
  const auto u = attention_step(std::vector<double>{0.3, -0.1}, enc3, std::vector<double>(3, 0.0),
                                zero, true);
  for (double p : u.weights) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(u.context[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(u.context[1] == doctest::Approx(5.0).epsilon(1e-14));

  // Identical encoder rows give uniform attention under any weights.
  const Matrix same = Matrix::from_rows({{0.4, -0.2}, {0.4, -0.2}, {0.4, -0.2}, {0.4, -0.2}});
  const Matrix we(3, 2, random_values(1, 6)), wd(3, 2, random_values(2, 6));
  const std::vector<double> vv = random_values(3, 3);
  const AttentionWeights rw{view_of(we), view_of(wd), vv, 0.0};
  const auto s = attention_step(std::vector<double>{0.1, 0.9}, same, std::vector<double>(4, 0.0),
                                rw, false);
  for (double p : s.weights) CHECK(p == doctest::Approx(0.25).epsilon(1e-15));

  CHECK(kind_of([&] {
          attention_step(std::vector<double>{0}, enc, std::vector<double>{0}, w, true);
        }) == ErrorKind::kShapeMismatch);
}

TEST_CASE("pointer_scores and pointer_step") {
  const Matrix one = Matrix::from_rows({{1}});
  const std::vector<double> v{1};
  const PointerParams pp{v, view_of(one), view_of(one)};
  const Matrix enc = Matrix::from_rows({{0.5}, {-0.5}});
  const auto p = pointer_scores(enc, std::vector<double>{0}, pp);
  CHECK(p[0] == doctest::Approx(0.716).epsilon(1e-3));
  CHECK(p[1] == doctest::Approx(0.284).epsilon(1e-3));
  CHECK(argmax(p) == 0);

  const Matrix z(2, 2);
  const std::vector<double> zv(2, 0.0);
  const PointerParams zero{zv, view_of(z), view_of(z)};
  const Matrix enc3 = Matrix::from_rows({{1, 0}, {0, 1}, {1, 1}});
  for (double x : pointer_scores(enc3, std::vector<double>{0, 0}, zero))
    CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const Matrix cell_in(3 * 2, 2), cell_rec(3 * 2, 2);
  const std::vector<double> cell_b(3 * 2, 0.0);
  const CellWeights cell{CellKind::kGru, 2, view_of(cell_in), view_of(cell_rec), cell_b};
  DecoderState state{CellState::zero(CellKind::kGru, 2), 0};
  PointerDecodeState decode;
  for (std::size_t step = 1; step <= 4; ++step) {
    const auto r = pointer_step(enc3, state, zero, cell, decode);
    CHECK(r.index == 0);
    CHECK(r.decode.selected.size() == step);
    CHECK(is_distribution(r.distribution));
    state = r.state;
    decode = r.decode;
  }

  // Two inputs with W1 amplifying the encoder row make input 1 dominant:
  // u = v . tanh(W1 e_j + W2 d) = (tanh(0), tanh(10)).
  const Matrix enc2 = Matrix::from_rows({{0.0}, {1.0}});
  const Matrix w1 = Matrix::from_rows({{10}});
  const Matrix w2 = Matrix::from_rows({{0}});
  const PointerParams crafted{v, view_of(w1), view_of(w2)};
  const Matrix ci(3, 1), cr(3, 1);
  const std::vector<double> cb(3, 0.0);
  const CellWeights cell1{CellKind::kGru, 1, view_of(ci), view_of(cr), cb};
  const auto r = pointer_step(enc2, DecoderState{CellState::zero(CellKind::kGru, 1), 0}, crafted,
                              cell1, PointerDecodeState{});
  CHECK(r.index == 1);
  CHECK(r.decode.selected == std::vector<std::size_t>{1});

  CHECK(kind_of([&] {
          pointer_step(enc2, DecoderState{CellState::zero(CellKind::kGru, 1), 0}, crafted, cell1,
                       PointerDecodeState{{5}});
        }) == ErrorKind::kIndexOutOfRange);
}

TEST_CASE("rnn_encode") {
  for (CellKind kind : {CellKind::kGru, CellKind::kLstm}) {
    const std::size_t H = 3, D = 4, G = gate_count(kind);
    const Matrix zin(G * H, D), zrec(G * H, H);
    const std::vector<double> zb(G * H, 0.0);
    const CellWeights zero{kind, H, view_of(zin), view_of(zrec), zb};
    const vocab::EmbeddingMatrix emb{Matrix(10, D), true};
    const Matrix states = rnn_encode(ids_of({4, 5, 6, 0}), emb, zero, zero);
    CHECK(states.rows() == 4);
    CHECK(states.cols() == 2 * H);
    if (kind == CellKind::kGru) CHECK(states == Matrix(4, 2 * H));

    TokenIds padded{{4, 5, 0, 0}, 2};
    CHECK(rnn_encode(padded, emb, zero, zero).rows() == 2);

    // With shared forward and backward weights, reversing a two-token input
    // swaps the forward half of one end with the backward half of the other.
    const Matrix win(G * H, D, random_values(10, G * H * D)),
        wrec(G * H, H, random_values(11, G * H * H));
    const std::vector<double> wb = random_values(12, G * H);
    const CellWeights cw{kind, H, view_of(win), view_of(wrec), wb};
    const auto table = random_table(10, D, 13);
    const Matrix ab = rnn_encode(ids_of({4, 7}), table, cw, cw);
    const Matrix ba = rnn_encode(ids_of({7, 4}), table, cw, cw);
    for (std::size_t i = 0; i < H; ++i) {
      CHECK(ab(0, i) == ba(1, H + i));
      CHECK(ab(1, i) == ba(0, H + i));
    }
  }
}

TEST_CASE("positional_encoding") {
  const Matrix pe = positional_encoding(6, 8);
  for (std::size_t c = 0; c < 8; ++c) CHECK(pe(0, c) == (c % 2 == 0 ? 0.0 : 1.0));
  CHECK(pe(1, 0) == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
  CHECK(pe(1, 0) == doctest::Approx(0.8415).epsilon(1e-4));
  CHECK(pe(3, 5) == doctest::Approx(std::cos(3.0 / std::pow(10000.0, 4.0 / 8.0))).epsilon(1e-14));
  for (double x : positional_encoding(50, 16).values()) {
    CHECK(x >= -1.0);
    CHECK(x <= 1.0);
  }
  CHECK(positional_encoding(4, 6) == positional_encoding(4, 6));
  CHECK(kind_of([] { positional_encoding(3, 5); }) == ErrorKind::kOddDim);
}

TEST_CASE("multi_head_attention") {
  const Matrix id = Matrix::identity(2);
  const MultiHeadWeights ident{view_of(id), view_of(id), view_of(id), view_of(id)};
  const Matrix q = Matrix::from_rows({{50, 0}});
  const Matrix k = Matrix::from_rows({{1, 0}, {0, 1}});
  const Matrix v = Matrix::from_rows({{3, -1}, {7, 2}});
  const Matrix out = multi_head_attention(q, k, v, 1, ident, false);
  CHECK(std::abs(out(0, 0) - 3.0) < 1e-12);
  CHECK(std::abs(out(0, 1) + 1.0) < 1e-12);

  const std::size_t E = 4;
  const Matrix wq(E, E, random_values(1, 16)), wk(E, E, random_values(2, 16)),
      wv(E, E, random_values(3, 16)), wo(E, E, random_values(4, 16));
  const MultiHeadWeights w{view_of(wq), view_of(wk), view_of(wv), view_of(wo)};
  const Matrix x(5, E, random_values(5, 5 * E));
  const Matrix masked = multi_head_attention(x, x, x, 2, w, true);
  Matrix first(1, E);
  for (std::size_t c = 0; c < E; ++c) first(0, c) = x(0, c);
  const Matrix expect = matmul(matmul(first, transpose(wv)), transpose(wo));
  for (std::size_t c = 0; c < E; ++c) CHECK(std::abs(masked(0, c) - expect(0, c)) < 1e-12);

  // Every head's rows are distributions, and the mask zeroes future keys.
  std::size_t seen = 0;
  multi_head_attention(x, x, x, 2, w, true, [&](std::size_t, const Matrix& a) {
    ++seen;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      CHECK(is_distribution(a.row(r)));
      for (std::size_t c = r + 1; c < a.cols(); ++c) CHECK(a(r, c) == 0.0);
    }
  });
  CHECK(seen == 2);

  CHECK(multi_head_attention(Matrix(3, E), Matrix(3, E), Matrix(3, E), 2, w, false) == Matrix(3, E));
  CHECK(kind_of([&] { multi_head_attention(x, x, x, 3, w, false); }) == ErrorKind::kShapeMismatch);
}

TEST_CASE("transformer forward shape, connectivity and causality") {
  const ModelConfig cfg = ModelConfig::desk_scale(ModelKind::kTransformer, 50);
  const auto emb = random_table(50, 16, 7);
  const std::vector<double> p = random_values(8, build_layout(cfg).total());
  RngStream rng(9, 0);
  const TokenIds src = random_ids(rng, 7, 50);
  const TokenIds tgt = random_ids(rng, 5, 50);

  const Matrix logits = transformer_forward(p, src, tgt, emb, cfg);
  CHECK(logits.rows() == 5);
  CHECK(logits.cols() == 50);

  TokenIds src2 = src;
  src2.ids[6] = src.ids[6] == 4 ? 5 : 4;
  CHECK(transformer_forward(p, src2, tgt, emb, cfg) != logits);

  for (std::size_t pos = 0; pos < 5; ++pos) {
    TokenIds tgt2 = tgt;
    tgt2.ids[pos] = tgt.ids[pos] == 4 ? 5 : 4;
    const Matrix changed = transformer_forward(p, src, tgt2, emb, cfg);
    for (std::size_t r = 0; r < pos; ++r)
      for (std::size_t c = 0; c < 50; ++c) CHECK(std::abs(changed(r, c) - logits(r, c)) <= 1e-12);
    bool moved = false;
    for (std::size_t c = 0; c < 50; ++c) moved = moved || changed(pos, c) != logits(pos, c);
    CHECK(moved);
  }
}

TEST_CASE("layouts depend on the config alone") {
  for (ModelKind kind : {ModelKind::kCoverage, ModelKind::kPointer, ModelKind::kTransformer}) {
    for (bool train_emb : {false, true}) {
      ModelConfig cfg = ModelConfig::desk_scale(kind, 30);
      cfg.train_embeddings = train_emb;
      CHECK(build_layout(cfg) == build_layout(cfg));
      CHECK(make_model(cfg)->layout() == build_layout(cfg));
      CHECK(make_model(cfg)->parameter_count() == build_layout(cfg).total());
    }
  }
  ModelConfig bad = ModelConfig::desk_scale(ModelKind::kTransformer, 30);
  bad.heads = 3;
  CHECK(kind_of([&] { make_model(bad); }) == ErrorKind::kBadConfig);
  bad = ModelConfig::desk_scale(ModelKind::kCoverage, 30);
  bad.dropout = 1.0;
  CHECK(kind_of([&] { make_model(bad); }) == ErrorKind::kBadConfig);
}

TEST_CASE("every forward pass emits distributions and is deterministic") {
  for (ModelKind kind : {ModelKind::kCoverage, ModelKind::kPointer, ModelKind::kTransformer}) {
    for (CellKind cell : {CellKind::kGru, CellKind::kLstm}) {
      ModelConfig cfg = ModelConfig::desk_scale(kind, 20);
      cfg.cell = cell;
      const auto model = make_model(cfg);
      const auto emb = random_table(20, cfg.embed_dim, 3);
      const std::vector<double> p = random_values(4, model->parameter_count());
      RngStream rng(5, 0);
      const TokenIds src = random_ids(rng, 6, 20);
      TokenIds tgt = random_ids(rng, 4, 20);
      tgt.ids[0] = vocab::kStartId;

      std::size_t count = 0;
      bool all_ok = true;
      ForwardObserver obs;
      obs.distribution = [&](AttentionSite, std::span<const double> d) {
        ++count;
        all_ok = all_ok && is_distribution(d);
      };
      const ForwardResult a = model->forward(p, src, tgt, emb, {&obs, nullptr});
      const ForwardResult b = model->forward(p, src, tgt, emb);
      CHECK(count > 0);
      CHECK(all_ok);
      CHECK(a.logits == b.logits);
      CHECK(a.coverage_loss == b.coverage_loss);
      CHECK(a.logits.rows() == 4);
      CHECK(a.logits.cols() == 20);

      CHECK(kind_of([&] { model->forward(std::vector<double>(3), src, tgt, emb); }) ==
            ErrorKind::kConfigMismatch);
      CHECK(kind_of([&] { model->forward(p, src, tgt, random_table(19, cfg.embed_dim, 3)); }) ==
            ErrorKind::kConfigMismatch);
    }
  }
}

TEST_CASE("coverage decoder accounting") {
  const ModelConfig cfg = ModelConfig::desk_scale(ModelKind::kCoverage, 20);
  const auto model = make_model(cfg);
  const auto emb = random_table(20, cfg.embed_dim, 3);
  RngStream rng(6, 0);
  const TokenIds src = random_ids(rng, 5, 20);
  const TokenIds tgt = random_ids(rng, 4, 20);

  // Random parameters: coverage is the running sum of the emitted
  // attention, and each step loss lies in [0, 1].
  {
    const std::vector<double> p = random_values(7, model->parameter_count());
    std::vector<double> running(5, 0.0);
    std::size_t steps = 0;
    double total = 0.0;
    bool exact = true;
    ForwardObserver obs;
    obs.coverage_step = [&](std::span<const double> a, std::span<const double> c, double loss) {
      for (std::size_t i = 0; i < running.size(); ++i) exact = exact && c[i] == running[i];
      if (steps == 0) CHECK(loss == 0.0);
      CHECK(loss >= 0.0);
      CHECK(loss <= 1.0 + 1e-12);
      running = coverage_update(running, a);
      total += loss;
      ++steps;
    };
    const ForwardResult r = model->forward(p, src, tgt, emb, {&obs, nullptr});
    CHECK(exact);
    CHECK(steps == 4);
    CHECK(r.coverage_loss == doctest::Approx(total).epsilon(1e-14));
    CHECK(r.coverage_loss <= 4.0);
  }
  // Zero parameters force identical uniform attention, so every step after
  // the first costs exactly sum min(a, t*a) = 1.
  {
    const std::vector<double> p(model->parameter_count(), 0.0);
    std::vector<double> losses;
    ForwardObserver obs;
    obs.coverage_step = [&](std::span<const double>, std::span<const double>, double loss) {
      losses.push_back(loss);
    };
    const ForwardResult r = model->forward(p, src, tgt, emb, {&obs, nullptr});
    REQUIRE(losses.size() == 4);
    CHECK(losses[0] == 0.0);
    for (std::size_t t = 1; t < 4; ++t) CHECK(losses[t] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.coverage_loss == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(seq2seq_forward(p, src, tgt, emb, cfg).coverage_loss == r.coverage_loss);
  }
}

TEST_CASE("sequence_loss") {
  const Matrix uniform(3, 4);
  const TokenIds targets{{1, 2, 3, 0}, 3};
  CHECK(sequence_loss(uniform, targets, vocab::kPadId, 0.0, 0.0) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-15));
  CHECK(sequence_loss(uniform, targets, vocab::kPadId, 0.9, 1.0) ==
        doctest::Approx(std::log(4.0) + 0.3).epsilon(1e-15));
  CHECK(std::abs(sequence_loss(uniform, targets, vocab::kPadId, 0.9, 1.0) - 1.6863) < 1e-4);

  double previous = INFINITY;
  for (double margin : {1.0, 5.0, 10.0, 40.0}) {
    Matrix logits(3, 4);
    for (std::size_t r = 0; r < 3; ++r) logits(r, targets.ids[r]) = margin;
    const double loss = sequence_loss(logits, targets, vocab::kPadId, 0.0, 0.0);
    CHECK(loss < previous);
    previous = loss;
  }
  CHECK(previous < 1e-15);

  CHECK(kind_of([&] { sequence_loss(Matrix(2, 4), targets, vocab::kPadId, 0, 0); }) ==
        ErrorKind::kShapeMismatch);
}

TEST_CASE("teacher_forcing splits a wrapped summary") {
  const TokenIds summary{{2, 7, 8, 3, 0}, 4};
  const auto [in, out] = teacher_forcing(summary);
  CHECK(in.prefix().size() == 3);
  CHECK(std::vector<TokenId>(in.prefix().begin(), in.prefix().end()) == std::vector<TokenId>{2, 7, 8});
  CHECK(std::vector<TokenId>(out.prefix().begin(), out.prefix().end()) ==
        std::vector<TokenId>{7, 8, 3});
}

TEST_CASE("greedy_decode") {
  for (ModelKind kind : {ModelKind::kCoverage, ModelKind::kTransformer}) {
    const ModelConfig cfg = ModelConfig::desk_scale(kind, 20);
    const auto model = make_model(cfg);
    const ParamLayout layout = model->layout();
    const auto emb = random_table(20, cfg.embed_dim, 3);
    RngStream rng(6, 0);
    const TokenIds src = random_ids(rng, 5, 20);

    // Only the output bias is set, pointing at the end marker.
    std::vector<double> p(layout.total(), 0.0);
    const std::string bias_name = kind == ModelKind::kTransformer ? "logits.b" : "out.b";
    bool found = false;
    for (std::size_t i = 0; i < layout.entries().size(); ++i) {
      if (layout.entries()[i].name == bias_name) {
        p[layout.offset(i) + vocab::kEndId] = 1.0;
        found = true;
      }
    }
    REQUIRE(found);
    const TokenIds stop = model->greedy_decode(p, src, emb, 8);
    CHECK(stop.ids[0] == vocab::kStartId);
    CHECK(stop.prefix().size() == 2);
    CHECK(stop.ids[1] == vocab::kEndId);

    const std::vector<double> r = random_values(17, layout.total());
    for (std::size_t steps : {1, 3, 6}) {
      const TokenIds out = model->greedy_decode(r, src, emb, steps);
      CHECK(out.capacity() == steps + 2);
      std::size_t words = 0;
      for (TokenId id : out.prefix()) words += id >= vocab::kFirstCorpusId || id == vocab::kUnkId;
      CHECK(words <= steps);
      CHECK(model->greedy_decode(r, src, emb, steps) == out);
      CHECK(greedy_decode(r, src, emb, cfg, steps) == out);
    }
  }
}

TEST_CASE("pointer decoding copies source tokens") {
  const ModelConfig cfg = ModelConfig::desk_scale(ModelKind::kPointer, 20);
  const auto model = make_model(cfg);
  const auto emb = random_table(20, cfg.embed_dim, 3);
  const std::vector<double> p = random_values(19, model->parameter_count());
  const TokenIds src = ids_of({2, 9, 11, 13, 3});
  const TokenIds out = model->greedy_decode(p, src, emb, 6);
  for (TokenId id : out.prefix()) {
    const bool allowed = id == vocab::kStartId || id == vocab::kEndId || id == 9 || id == 11 || id == 13;
    CHECK(allowed);
  }
  CHECK(model->greedy_decode(p, src, emb, 6) == out);
}

TEST_CASE("parameter file") {
  std::vector<double> values = random_values(1, 33);
  values.push_back(-0.0);
  values.push_back(std::numeric_limits<double>::denorm_min());
  values.push_back(std::numeric_limits<double>::max());
  const std::string bytes = encode_param_file(0xDEADBEEFCAFEF00DULL, values);
  CHECK(bytes.substr(0, 5) == "SLAB1");
  CHECK(bytes.size() == 5 + 8 + 8 + 8 * values.size());
  const ParamFile back = decode_param_file(bytes);
  CHECK(back.digest == 0xDEADBEEFCAFEF00DULL);
  REQUIRE(back.values.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    CHECK(std::bit_cast<std::uint64_t>(back.values[i]) == std::bit_cast<std::uint64_t>(values[i]));

  TempDir dir;
  write_param_file(dir / "p.slab", 42, values);
  CHECK(read_param_file(dir / "p.slab") == ParamFile{42, values});

  std::string bad = bytes;
  bad[0] = 'X';
  CHECK(kind_of([&] { decode_param_file(bad); }) == ErrorKind::kIoFailure);
  CHECK(kind_of([&] { decode_param_file(bytes.substr(0, bytes.size() - 1)); }) ==
        ErrorKind::kIoFailure);
  CHECK(kind_of([&] { decode_param_file(bytes + "x"); }) == ErrorKind::kIoFailure);
  CHECK(kind_of([&] { read_param_file(dir / "missing"); }) == ErrorKind::kIoFailure);
}

TEST_CASE("config digest tracks the canonical form") {
  ModelConfig a = ModelConfig::desk_scale(ModelKind::kCoverage, 30);
  ModelConfig b = a;
  CHECK(a.digest() == b.digest());
  b.hidden = 17;
  CHECK(a.digest() != b.digest());
}
