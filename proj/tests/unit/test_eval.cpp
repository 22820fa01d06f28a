#include <doctest.h>


#include "slab/eval.hpp"
#include "slab/rng.hpp"
#include "support.hpp"
#include "../common/rouge_oracle.hpp"

using namespace slab;
using namespace slab::eval;
using slab::testing::kind_of;

namespace {

using Tokens = std::vector<std::string>;

Tokens words(std::string_view text) {
  Tokens out;
  std::string cur;
  for (char c : text) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Tokens random_tokens(RngStream& rng) {
  Tokens t;
  for (std::size_t i = 0, n = rng.next_index(13); i < n; ++i)
    t.push_back(std::string(1, static_cast<char>('a' + rng.next_index(10))));
  return t;
}

void check_f1_bounds(const RougeScore& s) {
  CHECK(s.f1 >= 0.0);
  CHECK(s.f1 <= std::max(s.precision, s.recall) + 1e-15);
  CHECK(s.f1 <= 2.0 * std::min(s.precision, s.recall) + 1e-15);
  CHECK(s.precision <= 1.0);
  CHECK(s.recall <= 1.0);
}

}  // namespace

TEST_CASE("ngram_counts") {
  const NgramCounts uni = ngram_counts(Tokens{"a", "b", "a"}, 1);
  CHECK(uni.size() == 2);
  CHECK(uni.at({"a"}) == 2);
  CHECK(uni.at({"b"}) == 1);
  const NgramCounts bi = ngram_counts(Tokens{"a", "b", "a"}, 2);
  CHECK(bi.size() == 2);
  CHECK(bi.at({"a", "b"}) == 1);
  CHECK(bi.at({"b", "a"}) == 1);
  CHECK(ngram_counts(Tokens{"a"}, 2).empty());
}

TEST_CASE("rouge_n anchors") {
  const Tokens cand = words("the cat sat");
  const Tokens ref = words("the cat was sat");
  const RougeScore same = rouge_n(ref, ref, 1);
  CHECK(same == RougeScore{1.0, 1.0, 1.0});

  const RougeScore r1 = rouge_n(cand, ref, 1);
  CHECK(r1.precision == 1.0);
  CHECK(r1.recall == 0.75);
  CHECK(r1.f1 == doctest::Approx(6.0 / 7.0).epsilon(1e-15));

  const RougeScore r2 = rouge_n(cand, ref, 2);
  CHECK(r2.precision == 0.5);
  CHECK(r2.recall == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r2.f1 == doctest::Approx(0.4).epsilon(1e-15));

  CHECK(rouge_n(Tokens{}, ref, 1) == RougeScore{0.0, 0.0, 0.0});
}

TEST_CASE("lcs_length and rouge_l anchors") {
  CHECK(lcs_length(words("a b c"), words("a b c")) == 3);
  CHECK(lcs_length(words("a b c d e"), words("a c e")) == 3);
  CHECK(lcs_length(words("a b c"), Tokens{}) == 0);

  CHECK(rouge_l(words("x y"), words("x y")) == RougeScore{1.0, 1.0, 1.0});
  const RougeScore l = rouge_l(words("the cat sat"), words("the cat was sat"));
  CHECK(l.precision == 1.0);
  CHECK(l.recall == 0.75);
  CHECK(l.f1 == doctest::Approx(6.0 / 7.0).epsilon(1e-15));
  CHECK(rouge_l(words("a b"), words("c d")) == RougeScore{0.0, 0.0, 0.0});
}

TEST_CASE("make_score") {
  CHECK(make_score(0.0, 0.0).f1 == 0.0);
  CHECK(make_score(1.0, 0.5).f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("scores agree with brute-force oracles on random pairs") {
  RngStream rng(77, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Tokens a = random_tokens(rng);
    const Tokens b = random_tokens(rng);
    for (std::size_t n : {1, 2, 3}) {
      const RougeScore s = rouge_n(a, b, n);
      const auto [p, r] = oracle::rouge_n(a, b, n);

      CHECK(s.precision == p);
      CHECK(s.recall == r);
      CHECK(s.f1 == doctest::Approx(p + r > 0 ? 2 * p * r / (p + r) : 0.0).epsilon(1e-15));
      check_f1_bounds(s);

      const RougeScore swapped = rouge_n(b, a, n);
      CHECK(swapped.precision == s.recall);
      CHECK(swapped.recall == s.precision);
    }
    const std::size_t l = lcs_length(a, b);
    CHECK(l == oracle::lcs_length(a, b));
    CHECK(l <= std::min(a.size(), b.size()));
    CHECK(lcs_length(a, a) == a.size());
    const RougeScore rl = rouge_l(a, b);
    const RougeScore rl_swapped = rouge_l(b, a);
    CHECK(rl_swapped.precision == rl.recall);
    CHECK(rl_swapped.recall == rl.precision);
    check_f1_bounds(rl);
  }
}

TEST_CASE("line scoring") {
  CHECK(split_lines("a\nb\n") == Tokens{"a", "b"});
  CHECK(split_lines("a\r\nb") == Tokens{"a", "b"});
  CHECK(split_lines("a\n\nb\n") == Tokens{"a", "", "b"});
  CHECK(split_lines("").empty());

  const auto rows = score_lines("the cat sat\nx y\n", "the cat was sat\nx y\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].id == "1");
  CHECK(rows[1].r2 == RougeScore{1.0, 1.0, 1.0});
  CHECK(rows[2].id == "mean");
  CHECK(rows[2].r1.recall == doctest::Approx((0.75 + 1.0) / 2).epsilon(1e-15));
  CHECK(rows[2].r1.f1 == doctest::Approx((6.0 / 7.0 + 1.0) / 2).epsilon(1e-15));

  const std::string csv = rouge_csv(rows);
  CHECK(csv.rfind("id,r1_p,r1_r,r1_f,r2_p,r2_r,r2_f,rl_p,rl_r,rl_f\n1,1,0.75,", 0) == 0);
  CHECK(csv.find("\nmean,") != std::string::npos);

  CHECK(kind_of([] { score_lines("a\nb\n", "a\n"); }) == ErrorKind::kLineCountMismatch);
}
