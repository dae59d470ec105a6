#ifndef SEMSIMP_PIPELINE_HPP
#define SEMSIMP_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "semsimp/compressor.hpp"
#include "semsimp/lexsimp.hpp"
#include "semsimp/metrics.hpp"
#include "semsimp/ngram_lm.hpp"
#include "semsimp/semantic_graph.hpp"
#include "semsimp/sft.hpp"
#include "semsimp/splitter.hpp"

namespace semsimp {

struct PipelineConfig {
    bool stage_lex = true;
    bool stage_split = true;
    bool stage_delete = true;

    std::string sft_path, lm_path, rules_path, relprobs_path;
    std::string rules_vectors_path;  // defaults to rules_path + ".vec"
    std::string stopwords_path;

    int max_events = 8;
    LmNormalize lm_normalize = LmNormalize::PerWord;
    bool pronominalize = false;
    double theta = 0.1;
    long f_min = 10;
    double kappa = 0.05;
    int min_deleted_tokens = 0;
    int threads = 1;
    bool trace = false;

    // Fills unset model paths from the directory (sft.tsv, lm.counts,
    // rules.tsv, relprobs.tsv); the SEMSIMP_MODELS env var supplies it.
    void apply_model_dir(const std::string& dir);
    // Flat key = value overrides; unknown keys are errors.
    void apply_config_file(const std::string& path);
    void set_stages(const std::string& spec);  // "lex,split,delete"
    std::string stages_string() const;
    void validate() const;  // at least one stage; model paths for enabled stages
};

struct PipelineModels {
    std::optional<LexRuleTable> rules;
    std::optional<SplitFeatureTable> sft;
    std::optional<NgramModel> lm;
    std::optional<RelProbTable> relprobs;

    static PipelineModels load(const PipelineConfig& config);
};

struct SentenceTrace {
    std::string lex;
    std::string split;
    std::string deletion;
};

struct SentenceResult {
    std::string output;
    bool ok = true;
    std::string error;
    SentenceTrace trace;
};

// Rewrites tokens and predicate lemmas/positions in place on the graph so
// later stages see the substituted sentence.
SemanticGraph apply_lexical_to_graph(const SemanticGraph& g,
                                     const std::vector<Substitution>& subs);

// Induced subgraph on the node subset; tokens and id are shared.
SemanticGraph induced_subgraph(const SemanticGraph& g,
                               const std::set<std::string>& vars);

// Fixed stage order: lexical -> split -> delete. The input graph is raw
// (parse output); preprocessing and modifier lifting happen here.
SentenceResult simplify_sentence(const SemanticGraph& raw,
                                 const PipelineModels& models,
                                 const PipelineConfig& config);

// One output line per input line; malformed lines echo through unmodified
// with ok=false. Parallel over sentences, results in input order.
std::vector<SentenceResult> simplify_lines(const std::vector<std::string>& lines,
                                           const PipelineModels& models,
                                           const PipelineConfig& config);

}  // namespace semsimp

#endif
