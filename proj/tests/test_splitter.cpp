#include <doctest.h>

#include <algorithm>
#include <map>

#include "semsimp/drs_json.hpp"
#include "semsimp/error.hpp"
#include "semsimp/splitter.hpp"
#include "semsimp/text.hpp"
#include "test_util.hpp"

using namespace semsimp;
using semsimp::testing::GraphBuilder;
using semsimp::testing::fixture_path;
using semsimp::testing::load_higgs;

namespace {

// Independent oracle: recursively place each element into an existing block
// or a new one.
void oracle_partitions(int i, int n, std::vector<std::vector<int>>& acc,
                       std::vector<std::vector<std::vector<int>>>& out) {
    if (i == n) {
        auto sorted = acc;
        for (auto& b : sorted) std::sort(b.begin(), b.end());
        std::sort(sorted.begin(), sorted.end());
        out.push_back(sorted);
        return;
    }
    for (std::size_t b = 0; b < acc.size(); ++b) {
        acc[b].push_back(i);
        oracle_partitions(i + 1, n, acc, out);
        acc[b].pop_back();
    }
    acc.push_back({i});
    oracle_partitions(i + 1, n, acc, out);
    acc.pop_back();
}

std::vector<std::vector<std::vector<int>>> oracle(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> acc;
    oracle_partitions(0, n, acc, out);
    std::sort(out.begin(), out.end());
    return out;
}

// The Higgs worked example after preprocessing and modifier lifting.
SemanticGraph higgs_graph() { return lift_modifiers(preprocess(load_higgs())); }

NgramModel higgs_lm() {
    return NgramModel::train_file(fixture_path("higgs_lm.txt"), 3);
}

SplitFeatureTable higgs_sft() {
    return SplitFeatureTable::load(fixture_path("higgs_sft.tsv"));
}

}  // namespace

TEST_CASE("enumerate_partitions matches the recursive oracle (Bell numbers)") {
    const long bell[] = {1, 2, 5, 15, 52, 203};
    for (int n = 1; n <= 6; ++n) {
        auto got = enumerate_partitions(n, 8);
        auto want = oracle(n);
        CHECK(got.size() == static_cast<std::size_t>(bell[n - 1]));
        CHECK(got == want);
    }
}

TEST_CASE("three events yield exactly the five candidate splits") {
    auto parts = enumerate_partitions(3, 8);
    REQUIRE(parts.size() == 5);
    // includes the non-contiguous grouping {0,2},{1}
    std::vector<std::vector<int>> noncontig = {{0, 2}, {1}};
    CHECK(std::count(parts.begin(), parts.end(), noncontig) == 1);
}

TEST_CASE("enumerate_partitions refuses event counts over the cap") {
    CHECK_THROWS_AS(enumerate_partitions(9, 8), TooManyEvents);
    CHECK_THROWS_AS(enumerate_partitions(0, 8), DataError);
}

TEST_CASE("block_closure: shared element shows up in both blocks") {
    auto g = higgs_graph();
    auto left = block_closure(g, {"X3", "X11"});
    auto right = block_closure(g, {"X10"});
    CHECK(left.count("X7"));   // Higgs mechanism
    CHECK(right.count("X7"));
    CHECK(left.count("X6"));
    CHECK(right.count("X6"));
    CHECK(!left.count("X10"));  // foreign event blocked
    CHECK(!right.count("X3"));
    CHECK(!right.count("X4"));  // Physical Review Letters only reachable via X3
}

TEST_CASE("block_closure: single block covers every node") {
    auto g = higgs_graph();
    auto closure = block_closure(g, {"X3", "X11", "X10"});
    CHECK(closure == all_vars(g));
}

TEST_CASE("block_closure: disconnected decorative node is in no closure") {
    GraphBuilder b("deco", {"the", "dog", "ran", "gone"});
    b.node("E1", NodeKind::Event, {{"ran", {2}}})
        .node("N1", NodeKind::Entity, {{"dog", {1}}})
        .node("D1", NodeKind::Entity, {{"gone", {3}}})
        .edge("E1", "N1", "agent");
    auto closure = block_closure(b.g, {"E1"});
    CHECK(closure.count("E1"));
    CHECK(closure.count("N1"));
    CHECK(!closure.count("D1"));
}

TEST_CASE("score_split: no-split candidate reduces to lm x SFT") {
    auto g = higgs_graph();
    auto lm = higgs_lm();
    auto sft = higgs_sft();
    auto cand = score_split(g, {{0, 1, 2}}, lm, sft);
    REQUIRE(cand.blocks.size() == 1);
    const auto& blk = cand.blocks[0];
    CHECK(blk.length_factor == 1.0);
    CHECK(cand.score == blk.lm * blk.sft);
}

TEST_CASE("score_split is invariant under block permutation") {
    auto g = higgs_graph();
    auto lm = higgs_lm();
    auto sft = higgs_sft();
    auto a = score_split(g, {{0, 1}, {2}}, lm, sft);
    auto b = score_split(g, {{2}, {1, 0}}, lm, sft);
    CHECK(a.score == b.score);
    CHECK(a.signature == b.signature);
}

TEST_CASE("no token is lost or invented across any higgs partition") {
    auto g = higgs_graph();
    auto lm = higgs_lm();
    auto sft = higgs_sft();
    for (const auto& part : enumerate_partitions(3, 8)) {
        auto cand = score_split(g, part, lm, sft);
        std::map<int, int> seen;
        std::vector<int> dropped;
        for (const auto& blk : cand.blocks) {
            for (int p : blk.native_positions) ++seen[p];
            for (int p : blk.dropped_orphan_positions) dropped.push_back(p);
        }
        for (int p : dropped) CHECK(seen.count(p) == 0);
        // native positions partition the sentence minus dropped orphans
        CHECK(seen.size() + dropped.size() == g.tokens.size());
        for (const auto& [pos, count] : seen) CHECK(count == 1);
    }
}

TEST_CASE("higgs golden split: predicted-block separates, orphan which drops") {
    auto g = higgs_graph();
    auto lm = higgs_lm();
    auto sft = higgs_sft();
    auto winner = choose_split(g, lm, sft);
    CHECK(winner.signature == "0,1|2");
    auto sentences = choose_and_realize(g, lm, sft);
    REQUIRE(sentences.size() == 2);
    CHECK(join(sentences[0]) ==
          "In 1964 Peter Higgs published his second paper in Physical Review "
          "Letters describing Higgs mechanism .");
    CHECK(join(sentences[1]) ==
          "Higgs mechanism predicted a new massive spin-zero boson for the "
          "first time .");
    for (const auto& s : sentences)
        for (const auto& t : s) CHECK(t != "which");
}

TEST_CASE("choose_and_realize: single event is the identity") {
    GraphBuilder b("one", {"the", "dog", "ran", "."});
    b.node("E1", NodeKind::Event, {{"ran", {2}}})
        .node("N1", NodeKind::Entity, {{"dog", {1}}})
        .edge("E1", "N1", "agent");
    auto g = lift_modifiers(preprocess(b.g));
    auto lm = higgs_lm();
    auto sft = higgs_sft();
    auto sentences = choose_and_realize(g, lm, sft);
    REQUIRE(sentences.size() == 1);
    CHECK(sentences[0] == g.tokens);
}

TEST_CASE("choose_and_realize: over-cap event counts fall back to no-split") {
    auto g = higgs_graph();
    auto lm = higgs_lm();
    auto sft = higgs_sft();
    SplitOptions opts;
    opts.max_events = 2;  // higgs has 3 events
    auto sentences = choose_and_realize(g, lm, sft, opts);
    REQUIRE(sentences.size() == 1);
    CHECK(sentences[0] == g.tokens);
}

TEST_CASE("zero-event graphs pass through unchanged") {
    GraphBuilder b("none", {"just", "words", "."});
    b.node("N1", NodeKind::Entity, {{"words", {1}}});
    auto g = preprocess(b.g);
    auto lm = higgs_lm();
    auto sft = higgs_sft();
    auto sentences = choose_and_realize(g, lm, sft);
    REQUIRE(sentences.size() == 1);
    CHECK(sentences[0] == g.tokens);
}


TEST_CASE("no token lost across partitions of the multi-event fixtures") {
    auto lm = higgs_lm();
    auto sft = higgs_sft();
    for (const auto& raw : parse_drs_file(fixture_path("roundtrip_50.jsonl"))) {
        auto g = lift_modifiers(preprocess(raw));
        auto events = events_of(g);
        if (events.size() < 2) continue;
        for (const auto& part :
             enumerate_partitions(static_cast<int>(events.size()), 8)) {
            auto cand = score_split(g, part, lm, sft);
            std::map<int, int> seen;
            std::vector<int> dropped;
            for (const auto& blk : cand.blocks) {
                for (int p : blk.native_positions) ++seen[p];
                for (int p : blk.dropped_orphan_positions) dropped.push_back(p);
            }
            for (int p : dropped) CHECK(seen.count(p) == 0);
            CHECK(seen.size() + dropped.size() == g.tokens.size());
            for (const auto& [pos, count] : seen) CHECK(count == 1);
        }
    }
}

TEST_CASE("exact score ties resolve to the smallest signature") {
    // Three single-patient events; an LM trained on unrelated text maps every
    // block token to <unk>, so same-shape blocks score identically and the
    // two-block candidates tie bitwise.
    GraphBuilder b("tie", {"v0", "p0", "v1", "p1", "v2", "p2"});
    for (int i = 0; i < 3; ++i) {
        std::string ev = "E" + std::to_string(i), nn = "N" + std::to_string(i);
        b.node(ev, NodeKind::Event, {{b.g.tokens[2 * i], {2 * i}}});
        b.node(nn, NodeKind::Entity, {{b.g.tokens[2 * i + 1], {2 * i + 1}}});
        b.edge(ev, nn, "patient");
    }
    auto g = b.g;
    auto lm = NgramModel::train({{"z", "z", "z"}}, 2);
    auto sft = SplitFeatureTable::from_counts({{"patient", 1}, {"patient|patient", 9}});

    auto two_a = score_split(g, {{0}, {1, 2}}, lm, sft);
    auto two_b = score_split(g, {{0, 1}, {2}}, lm, sft);
    auto two_c = score_split(g, {{0, 2}, {1}}, lm, sft);
    CHECK(two_a.score == two_b.score);
    CHECK(two_b.score == two_c.score);

    auto winner = choose_split(g, lm, sft);
    CHECK(winner.n() == 2);
    CHECK(winner.signature == "0,1|2");
}

TEST_CASE("shared-element duplication can pronominalize long duplicates") {
    // Shared node with a 5-token nn-of/modifier subtree.
    GraphBuilder b("pron", {"alpha", "beta", "gamma", "delta", "epsilon",
                            "verbed", "thing", "verbing", "other"});
    b.node("S", NodeKind::Entity, {{"epsilon", {4}}})
        .node("M1", NodeKind::Entity, {{"alpha", {0}}})
        .node("M2", NodeKind::Entity, {{"beta", {1}}})
        .node("M3", NodeKind::Entity, {{"gamma", {2}}})
        .node("M4", NodeKind::Entity, {{"delta", {3}}})
        .node("E1", NodeKind::Event, {{"verbed", {5}}})
        .node("N1", NodeKind::Entity, {{"thing", {6}}})
        .node("E2", NodeKind::Event, {{"verbing", {7}}})
        .node("N2", NodeKind::Entity, {{"other", {8}}})
        .edge("S", "M1", "nn-of")
        .edge("S", "M2", "nn-of")
        .edge("S", "M3", "modifier")
        .edge("S", "M4", "modifier")
        .edge("E1", "S", "agent")
        .edge("E1", "N1", "patient")
        .edge("E2", "S", "agent")
        .edge("E2", "N2", "patient");
    auto g = preprocess(b.g);
    auto lm = NgramModel::train({{"z"}}, 2);
    auto sft = SplitFeatureTable::from_counts({{"agent+patient", 1}});

    SplitOptions plain;
    auto cand = score_split(g, {{0}, {1}}, lm, sft, plain);
    REQUIRE(cand.blocks.size() == 2);
    CHECK(join(cand.blocks[1].realized) ==
          "alpha beta gamma delta epsilon verbing other");

    SplitOptions pron;
    pron.pronominalize = true;
    auto cand2 = score_split(g, {{0}, {1}}, lm, sft, pron);
    CHECK(join(cand2.blocks[1].realized) == "It verbing other");
}
