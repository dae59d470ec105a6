#include <doctest.h>

#include "semsimp/drs_json.hpp"
#include "semsimp/error.hpp"
#include "semsimp/pipeline.hpp"
#include "semsimp/text.hpp"
#include "test_util.hpp"

using namespace semsimp;
using semsimp::testing::fixture_path;
using semsimp::testing::load_higgs;
using semsimp::testing::scratch_file;

namespace {

PipelineConfig golden_config() {
    PipelineConfig c;
    c.rules_path = fixture_path("higgs_rules.tsv");
    c.sft_path = fixture_path("higgs_sft.tsv");
    c.relprobs_path = fixture_path("higgs_relprobs.tsv");
    c.lm_path = scratch_file("higgs_lm.counts");
    static bool trained = false;
    if (!trained) {
        NgramModel::train_file(fixture_path("higgs_lm.txt"), 3).save(c.lm_path);
        trained = true;
    }
    c.min_deleted_tokens = 6;
    return c;
}

const char* kS1 =
    "In 1964 Peter Higgs wrote his second paper in Physical Review Letters "
    "explaining Higgs mechanism which predicted a new massive elementary "
    "particle for the first time .";
const char* kS2 =
    "In 1964 Peter Higgs wrote his second paper in Physical Review Letters "
    "explaining Higgs mechanism . Higgs mechanism predicted a new massive "
    "elementary particle for the first time .";
const char* kS =
    "In 1964 Peter Higgs wrote his paper explaining Higgs mechanism . "
    "Higgs mechanism predicted a new elementary particle .";

}  // namespace

TEST_CASE("config: at least one stage, stage strings round-trip") {
    PipelineConfig c = golden_config();
    c.set_stages("lex,delete");
    CHECK(c.stages_string() == "lex,delete");
    c.set_stages("");
    CHECK_THROWS_AS(c.validate(), DataError);
    CHECK_THROWS_AS(c.set_stages("lex,nosuch"), DataError);
}

TEST_CASE("config: missing model file for an enabled stage is an error") {
    PipelineConfig c = golden_config();
    c.rules_path = "/nonexistent/rules.tsv";
    c.set_stages("lex");
    CHECK_THROWS_AS(c.validate(), DataError);
}

TEST_CASE("config file parsing with unknown keys rejected") {
    std::string path = scratch_file("conf.txt");
    write_file(path,
               "stages = lex,split\n"
               "max-events = 5\n"
               "kappa = 0.1\n"
               "# comment line\n"
               "lm-normalize = none\n");
    PipelineConfig c;
    c.apply_config_file(path);
    CHECK(c.stage_lex);
    CHECK(c.stage_split);
    CHECK(!c.stage_delete);
    CHECK(c.max_events == 5);
    CHECK(c.kappa == 0.1);
    CHECK(c.lm_normalize == LmNormalize::None);
    write_file(path, "no-such-key = 3\n");
    CHECK_THROWS_AS(c.apply_config_file(path), DataError);
}

TEST_CASE("apply_lexical_to_graph: equal-length spans remap in place") {
    auto g = lift_modifiers(preprocess(load_higgs()));
    auto table = LexRuleTable::load(fixture_path("higgs_rules.tsv"));
    table.load_vectors(fixture_path("higgs_rules.tsv.vec"));
    auto subs = plan_substitutions(g.tokens, table);
    REQUIRE(subs.size() == 3);
    auto out = apply_lexical_to_graph(g, subs);
    CHECK(join(out.tokens) == kS1);
    CHECK(out.tokens.size() == g.tokens.size());
    // lemmas follow the surface rewrite
    CHECK(head_predicate(out.node("X3")).lemma == "wrote");
    CHECK(head_predicate(out.node("X11")).lemma == "explaining");
    CHECK(head_predicate(out.node("X8")).lemma == "particle");
    // coverage invariant still holds
    CHECK(covered_positions(out).size() == out.tokens.size());
}

TEST_CASE("apply_lexical_to_graph: shrinking and growing spans keep coverage") {
    SemanticGraph g;
    g.id = "spans";
    g.tokens = {"alpha", "beta", "gamma", "delta"};
    // a lemma that differs from its surface form must survive pure shifts
    Node n1{"N1", NodeKind::Entity, {{"alpha", {0}}, {"beta", {1}}}, {}, {}};
    Node n2{"N2", NodeKind::Entity, {{"gam", {2}}}, {}, {}};
    Node n3{"N3", NodeKind::Entity, {{"delta", {3}}}, {}, {}};
    g.nodes = {n1, n2, n3};
    g.edges = {{"N1", "N2", "of"}, {"N2", "N3", "of"}};

    LexRule shrink;
    shrink.complex_key = "alpha beta";
    shrink.complex_tokens = {"alpha", "beta"};
    shrink.simple = "ab";
    shrink.similarity = 1.0;
    LexRule grow;
    grow.complex_key = "delta";
    grow.complex_tokens = {"delta"};
    grow.simple = "d e f";
    grow.similarity = 1.0;

    Substitution s1{0, 2, &shrink, 1.0};
    Substitution s2{3, 1, &grow, 1.0};
    auto out = apply_lexical_to_graph(g, {s1, s2});
    CHECK(join(out.tokens) == "ab gamma d e f");
    auto covered = covered_positions(out);
    CHECK(covered.size() == out.tokens.size());
    REQUIRE(out.has_node("N2"));
    CHECK(out.node("N2").preds[0].lemma == "gam");
}

TEST_CASE("golden pipeline: the worked derivation S1, S2, S") {
    auto config = golden_config();
    auto models = PipelineModels::load(config);
    auto res = simplify_sentence(load_higgs(), models, config);
    CHECK(res.trace.lex == kS1);
    CHECK(res.trace.split == kS2);
    CHECK(res.output == kS);
}

TEST_CASE("stage isolation: split only on a one-event sentence is identity") {
    auto config = golden_config();
    config.set_stages("split");
    auto models = PipelineModels::load(config);
    auto raw = parse_drs_record(
        R"({"id":"one","tokens":["the","dog","ran","."],)"
        R"("nodes":[{"var":"E1","kind":"event","preds":[{"lemma":"ran","pos":[2]}]},)"
        R"({"var":"N1","kind":"entity","preds":[{"lemma":"dog","pos":[1]}]}],)"
        R"("edges":[{"from":"E1","to":"N1","label":"agent"}]})",
        1);
    auto res = simplify_sentence(raw, models, config);
    CHECK(res.output == "the dog ran .");
}

TEST_CASE("stage isolation: lex only rewrites tokens and nothing else") {
    auto config = golden_config();
    config.set_stages("lex");
    auto models = PipelineModels::load(config);
    auto res = simplify_sentence(load_higgs(), models, config);
    CHECK(res.output == kS1);
}

TEST_CASE("delete only compresses the whole sentence") {
    auto config = golden_config();
    config.set_stages("delete");
    config.min_deleted_tokens = 0;  // default forced-deletion constraint
    auto models = PipelineModels::load(config);
    auto res = simplify_sentence(load_higgs(), models, config);
    // Exactly one cheapest edge goes. Without the lexical stage the heads
    // keep their complex lemmas, so "massive" under head "boson" bottoms out
    // at the relation floor and is the cheapest deletion.
    CHECK(res.output ==
          "In 1964 Peter Higgs published his second paper in Physical Review "
          "Letters describing Higgs mechanism which predicted a new spin-zero "
          "boson for the first time .");
}


TEST_CASE("non-tree edges and cross-component graphs survive the pipeline") {
    auto config = golden_config();
    auto models = PipelineModels::load(config);
    // a cycle between entities plus a second connected component
    auto raw = parse_drs_record(
        R"({"id":"cyc","tokens":["crews","fixed","roads","near","towns","fast","."],)"
        R"("nodes":[{"var":"E1","kind":"event","preds":[{"lemma":"fixed","pos":[1]}]},)"
        R"({"var":"N1","kind":"entity","preds":[{"lemma":"crews","pos":[0]}]},)"
        R"({"var":"N2","kind":"entity","preds":[{"lemma":"roads","pos":[2]}]},)"
        R"({"var":"N3","kind":"entity","preds":[{"lemma":"towns","pos":[4]}]},)"
        R"({"var":"E2","kind":"event","preds":[{"lemma":"fast","pos":[5]}]}],)"
        R"("edges":[{"from":"E1","to":"N1","label":"agent"},)"
        R"({"from":"E1","to":"N2","label":"patient"},)"
        R"({"from":"N2","to":"N3","label":"near"},)"
        R"({"from":"N3","to":"N1","label":"of"},)"
        R"({"from":"E2","to":"N3","label":"agent"}]})",
        1);
    auto res = simplify_sentence(raw, models, config);
    CHECK(res.ok);
    CHECK(!res.output.empty());
    auto res2 = simplify_sentence(raw, models, config);
    CHECK(res.output == res2.output);
}

TEST_CASE("batch: malformed lines echo through, the rest still process") {
    auto config = golden_config();
    config.set_stages("lex");
    auto models = PipelineModels::load(config);
    std::vector<std::string> lines = {
        "this is not json",
        read_lines(fixture_path("higgs.jsonl"))[0],
    };
    auto results = simplify_lines(lines, models, config);
    REQUIRE(results.size() == 2);
    CHECK(!results[0].ok);
    CHECK(results[0].output == "this is not json");
    CHECK(results[1].ok);
    CHECK(results[1].output == kS1);
}

TEST_CASE("batch results are identical across thread counts") {
    auto config = golden_config();
    auto models = PipelineModels::load(config);
    auto higgs_line = read_lines(fixture_path("higgs.jsonl"))[0];
    std::vector<std::string> lines;
    for (const auto& l : read_lines(fixture_path("roundtrip_50.jsonl")))
        lines.push_back(l);
    lines.push_back(higgs_line);

    config.threads = 1;
    auto seq = simplify_lines(lines, models, config);
    config.threads = 8;
    auto par = simplify_lines(lines, models, config);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i)
        CHECK(seq[i].output == par[i].output);
}
