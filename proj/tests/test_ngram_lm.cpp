#include <doctest.h>

#include <cmath>
#include <random>

#include "semsimp/error.hpp"
#include "semsimp/ngram_lm.hpp"
#include "semsimp/text.hpp"
#include "test_util.hpp"

using namespace semsimp;
using semsimp::testing::scratch_file;

namespace {
const std::vector<std::vector<std::string>> kTiny = {
    {"the", "cat", "sat"}, {"the", "dog", "sat"}};
}

TEST_CASE("bigram conditionals match hand counts with add-k") {
    // vocab = {the, cat, sat, dog, </s>}, event space size 6 with <unk>,
    // k = 0.01. Hand-computed from the 6-token corpus.
    auto m = NgramModel::train(kTiny, 2);
    CHECK(m.cond_prob({"<s>"}, "the") == doctest::Approx(2.01 / 2.06).epsilon(1e-12));
    CHECK(m.cond_prob({"the"}, "cat") == doctest::Approx(1.01 / 2.06).epsilon(1e-12));
    CHECK(m.cond_prob({"the"}, "dog") == doctest::Approx(1.01 / 2.06).epsilon(1e-12));
    CHECK(m.cond_prob({"the"}, "zzz") == doctest::Approx(0.01 / 2.06).epsilon(1e-12));
    CHECK(m.cond_prob({"sat"}, "</s>") == doctest::Approx(2.01 / 2.06).epsilon(1e-12));
    // unseen history backs off to the smoothed unigram: c(sat)=2, total=8
    CHECK(m.cond_prob({"zzz"}, "sat") == doctest::Approx(2.01 / 8.06).epsilon(1e-12));
}

TEST_CASE("sentence_logprob equals the hand-rolled sum") {
    auto m = NgramModel::train(kTiny, 2);
    double expected = std::log(2.01 / 2.06)   // the | <s>
                      + std::log(1.01 / 2.06) // cat | the
                      + std::log(1.01 / 1.06) // sat | cat
                      + std::log(2.01 / 2.06); // </s> | sat
    CHECK(m.sentence_logprob({"the", "cat", "sat"}) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("unigram corpus: the seen word dominates, unk is finite") {
    auto m = NgramModel::train({{"a", "a", "a"}}, 1);
    // vocab {a, </s>}, total counted tokens = 4 (three a, one </s>)
    CHECK(m.cond_prob({}, "a") == doctest::Approx(3.01 / 4.03).epsilon(1e-12));
    CHECK(m.cond_prob({}, "zzz") == doctest::Approx(0.01 / 4.03).epsilon(1e-12));
    double lp = m.sentence_logprob({"a", "never-seen", "a"});
    CHECK(std::isfinite(lp));
}

TEST_CASE("conditionals over vocab + unk sum to one") {
    auto m = NgramModel::train(
        {{"a", "b", "c", "a"}, {"b", "c", "d"}, {"d", "a", "a", "b"}}, 3);
    auto events = m.event_space();
    std::vector<std::string> pool = {"a",   "b",   "c",     "d",
                                     "zzz", "<s>", "a"};
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> len(0, 2);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::vector<std::string> hist;
        for (int i = 0, L = len(rng); i < L; ++i) hist.push_back(pool[pick(rng)]);
        double sum = 0.0;
        for (const auto& w : events) sum += m.cond_prob(hist, w);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("empty sentence scores the boundary transition") {
    auto m = NgramModel::train(kTiny, 2);
    CHECK(m.sentence_logprob({}) ==
          doctest::Approx(std::log(m.cond_prob({"<s>"}, "</s>"))).epsilon(1e-12));
}

TEST_CASE("appending an improbable token lowers the total") {
    auto m = NgramModel::train(kTiny, 3);
    double base = m.sentence_logprob({"the", "cat", "sat"});
    double extended = m.sentence_logprob({"the", "cat", "sat", "zzz"});
    CHECK(extended < base);
}

TEST_CASE("training is case-folded and rejects bad input") {
    auto m = NgramModel::train({{"The", "CAT"}}, 2);
    CHECK(m.cond_prob({"the"}, "cat") == m.cond_prob({"The"}, "CAT"));
    CHECK_THROWS_AS(NgramModel::train({}, 2), DataError);
    CHECK_THROWS_AS(NgramModel::train({{"a"}}, 0), DataError);
    CHECK_THROWS_AS(NgramModel::train({{"a"}}, 6), DataError);
}

TEST_CASE("model files round-trip byte-identically") {
    auto m = NgramModel::train(kTiny, 3);
    std::string p1 = scratch_file("lm1.counts"), p2 = scratch_file("lm2.counts");
    m.save(p1);
    auto loaded = NgramModel::load(p1);
    loaded.save(p2);
    CHECK(read_file(p1) == read_file(p2));
    CHECK(loaded.sentence_logprob({"the", "cat", "sat"}) ==
          m.sentence_logprob({"the", "cat", "sat"}));
}
