// semsimp: train models, simplify DRS-JSON sentences, evaluate outputs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "semsimp/drs_json.hpp"
#include "semsimp/error.hpp"
#include "semsimp/pipeline.hpp"
#include "semsimp/text.hpp"

namespace {

using namespace semsimp;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_file(path, content);
}

int cmd_train_sft(const std::string& drs_path, const std::string& out_path) {
    std::vector<SemanticGraph> corpus;
    for (const auto& g : parse_drs_file(drs_path))
        corpus.push_back(lift_modifiers(preprocess(g)));
    SplitFeatureTable sft = SplitFeatureTable::train(corpus);
    sft.save(out_path);
    std::cerr << "sft: " << sft.counts().size() << " patterns over "
              << sft.total() << " sentences -> " << out_path << "\n";
    return kExitOk;
}

int cmd_train_lm(const std::string& text_path, int order,
                 const std::string& out_path) {
    NgramModel lm = NgramModel::train_file(text_path, order);
    lm.save(out_path);
    std::cerr << "lm: order " << lm.order() << ", vocab "
              << lm.event_space().size() - 1 << " -> " << out_path << "\n";
    return kExitOk;
}

int cmd_train_rules(const std::string& complex_path, const std::string& simple_path,
                    double theta, long f_min, const std::string& stopwords_path,
                    const std::string& out_path) {
    std::set<std::string> stop = stopwords_path.empty()
                                     ? default_stopwords()
                                     : load_stopwords(stopwords_path);
    CorpusStats complex_stats = build_corpus_stats_file(complex_path, f_min, stop);
    CorpusStats simple_stats = build_corpus_stats_file(simple_path, f_min, stop);
    LexRuleTable table = extract_rules(complex_stats, simple_stats, theta, f_min, stop);
    table.save(out_path);
    table.save_vectors(out_path + ".vec");
    std::cerr << "rules: " << table.rules().size() << " rules -> " << out_path
              << " (+ .vec)\n";
    return kExitOk;
}

int cmd_train_relprobs(const std::string& drs_path, const std::string& text_path,
                       const std::string& out_path) {
    RelProbTable t = RelProbTable::train_files(drs_path, text_path);
    t.save(out_path);
    std::cerr << "relprobs: " << t.rel().size() << " (relation,head) pairs, "
              << t.word().size() << " words -> " << out_path << "\n";
    return kExitOk;
}

int cmd_simplify(PipelineConfig config, const std::string& input_path,
                 const std::string& out_path) {
    config.validate();
    PipelineModels models = PipelineModels::load(config);

    std::vector<std::string> lines;
    if (input_path.empty() || input_path == "-") {
        std::string line;
        while (std::getline(std::cin, line)) lines.push_back(line);
    } else {
        lines = read_lines(input_path);
    }

    auto results = simplify_lines(lines, models, config);
    std::ostringstream out;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        out << r.output << "\n";
        if (!r.ok) {
            ++failures;
            std::cerr << "line " << i + 1 << ": " << r.error
                      << " (passed through)\n";
        } else if (config.trace) {
            if (config.stage_lex)
                std::cerr << "TRACE " << i + 1 << " lex: " << r.trace.lex << "\n";
            if (config.stage_split)
                std::cerr << "TRACE " << i + 1 << " split: " << r.trace.split
                          << "\n";
            if (config.stage_delete)
                std::cerr << "TRACE " << i + 1 << " delete: " << r.trace.deletion
                          << "\n";
        }
    }
    write_or_print(out_path, out.str());
    std::cerr << "simplified " << results.size() - failures << "/"
              << results.size() << " sentences";
    if (failures) std::cerr << " (" << failures << " passed through unmodified)";
    std::cerr << "\n";
    return kExitOk;
}

int cmd_evaluate(const std::string& system_path, const std::string& complex_path,
                 const std::string& simple_path, bool char_ld,
                 const std::string& out_path) {
    EvalOptions opts;
    opts.char_level_ld = char_ld;
    auto report = evaluate(read_lines(system_path), read_lines(complex_path),
                           read_lines(simple_path), opts);
    std::cout << report.table();
    if (!out_path.empty()) write_file(out_path, report.key_values());
    return kExitOk;
}

int cmd_evaluate_ablation(PipelineConfig base, const std::string& input_path,
                          const std::string& complex_path,
                          const std::string& simple_path, bool char_ld,
                          const std::string& out_path) {
    static const std::vector<std::string> combos = {
        "lex", "split", "delete", "lex,split", "lex,delete", "split,delete",
        "lex,split,delete"};
    auto lines = read_lines(input_path);
    auto complex_ref = read_lines(complex_path);
    auto simple_ref = read_lines(simple_path);
    EvalOptions eopts;
    eopts.char_level_ld = char_ld;

    std::ostringstream table, kv;
    bool header_done = false;
    for (const auto& combo : combos) {
        PipelineConfig config = base;
        config.set_stages(combo);
        config.validate();
        PipelineModels models = PipelineModels::load(config);
        auto results = simplify_lines(lines, models, config);
        std::vector<std::string> system_out;
        for (const auto& r : results) system_out.push_back(r.output);
        EvalReport report = evaluate(system_out, complex_ref, simple_ref, eopts);
        std::string row = report.table(combo);
        if (header_done) {
            auto nl = row.find('\n');
            row = row.substr(nl + 1);
        }
        header_done = true;
        table << row;
        kv << "[" << combo << "]\n" << report.key_values();
    }
    std::cout << table.str();
    if (!out_path.empty()) write_file(out_path, kv.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semsimp: semantics-based sentence simplification toolkit"};
    app.require_subcommand(1);

    // train
    auto* train = app.add_subcommand("train", "train a model from corpora");
    train->require_subcommand(1);

    std::string drs_path, text_path, out_path;
    int lm_order = 3;
    auto* t_sft = train->add_subcommand("sft", "split feature table from DRS-JSON");
    t_sft->add_option("--drs", drs_path, "DRS-JSON lines")->required();
    t_sft->add_option("-o,--output", out_path, "output model")->required();

    auto* t_lm = train->add_subcommand("lm", "n-gram language model");
    t_lm->add_option("--text", text_path, "token-line corpus")->required();
    t_lm->add_option("-n,--order", lm_order, "n-gram order (1..5)");
    t_lm->add_option("-o,--output", out_path, "output model")->required();

    std::string complex_path, simple_path, stopwords_path;
    double theta = 0.1;
    long f_min = 10;
    auto* t_rules =
        train->add_subcommand("rules", "lexical simplification rules");
    t_rules->add_option("--complex", complex_path, "complex corpus")->required();
    t_rules->add_option("--simple", simple_path, "simple corpus")->required();
    t_rules->add_option("--theta", theta, "cosine threshold");
    t_rules->add_option("--fmin", f_min, "minimum word frequency");
    t_rules->add_option("--stopwords", stopwords_path, "custom stopword file");
    t_rules->add_option("-o,--output", out_path, "output rules")->required();

    auto* t_rel = train->add_subcommand("relprobs", "deletion probabilities");
    t_rel->add_option("--drs", drs_path, "simple DRS-JSON lines")->required();
    t_rel->add_option("--text", text_path, "simple token-line corpus")->required();
    t_rel->add_option("-o,--output", out_path, "output model")->required();

    // simplify
    PipelineConfig config;
    std::string stages = "lex,split,delete", lm_normalize = "perword";
    std::string config_path, input_path;
    auto* simplify = app.add_subcommand("simplify", "run the pipeline");
    simplify->add_option("-i,--input", input_path, "DRS-JSON lines ('-' = stdin)");
    simplify->add_option("-o,--output", out_path, "output file ('-' = stdout)");
    simplify->add_option("--config", config_path, "key = value config file");
    simplify->add_option("--stages", stages, "subset of lex,split,delete");
    simplify->add_option("--sft", config.sft_path, "SFT model");
    simplify->add_option("--lm", config.lm_path, "LM model");
    simplify->add_option("--rules", config.rules_path, "rules model");
    simplify->add_option("--rules-vectors", config.rules_vectors_path,
                         "rules vector sidecar");
    simplify->add_option("--relprobs", config.relprobs_path, "relprob model");
    simplify->add_option("--stopwords", config.stopwords_path, "stopword file");
    simplify->add_option("--max-events", config.max_events,
                         "partition cap before no-split fallback");
    simplify->add_option("--lm-normalize", lm_normalize, "none|perword");
    simplify->add_flag("--pronominalize", config.pronominalize,
                       "pronoun instead of long duplicates");
    simplify->add_option("--theta", config.theta, "rule cosine threshold");
    simplify->add_option("--fmin", config.f_min, "minimum word frequency");
    simplify->add_option("--kappa", config.kappa, "keep-decision score");
    simplify->add_option("--min-deleted-tokens", config.min_deleted_tokens,
                         "require at least this many deleted tokens");
    simplify->add_option("--threads", config.threads, "worker threads");
    simplify->add_flag("--trace", config.trace, "dump per-stage intermediates");

    // evaluate
    std::string system_path;
    bool char_ld = false, ablation = false;
    auto* eval = app.add_subcommand("evaluate", "automatic evaluation");
    eval->add_option("--system", system_path, "system output lines");
    eval->add_option("--complex", complex_path, "complex reference")->required();
    eval->add_option("--simple", simple_path, "simple reference")->required();
    eval->add_option("-o,--output", out_path, "key-value report file");
    eval->add_flag("--char-ld", char_ld, "character-level edit distance");
    eval->add_flag("--ablation", ablation, "run all 7 stage combinations");
    eval->add_option("-i,--input", input_path, "DRS-JSON input (ablation)");
    eval->add_option("--config", config_path, "pipeline config (ablation)");
    eval->add_option("--sft", config.sft_path, "SFT model (ablation)");
    eval->add_option("--lm", config.lm_path, "LM model (ablation)");
    eval->add_option("--rules", config.rules_path, "rules model (ablation)");
    eval->add_option("--relprobs", config.relprobs_path, "relprob model (ablation)");
    eval->add_option("--threads", config.threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!config_path.empty()) {
            PipelineConfig from_file;
            from_file.apply_config_file(config_path);
            // flags win over the config file
            PipelineConfig flags = config;
            config = from_file;
            auto prefer = [](const std::string& flag_value, std::string& slot) {
                if (!flag_value.empty()) slot = flag_value;
            };
            prefer(flags.sft_path, config.sft_path);
            prefer(flags.lm_path, config.lm_path);
            prefer(flags.rules_path, config.rules_path);
            prefer(flags.rules_vectors_path, config.rules_vectors_path);
            prefer(flags.relprobs_path, config.relprobs_path);
            prefer(flags.stopwords_path, config.stopwords_path);
            if (simplify->count("--max-events")) config.max_events = flags.max_events;
            if (simplify->count("--theta")) config.theta = flags.theta;
            if (simplify->count("--fmin")) config.f_min = flags.f_min;
            if (simplify->count("--kappa")) config.kappa = flags.kappa;
            if (simplify->count("--min-deleted-tokens"))
                config.min_deleted_tokens = flags.min_deleted_tokens;
            if (simplify->count("--threads") || eval->count("--threads"))
                config.threads = flags.threads;
            if (simplify->count("--pronominalize"))
                config.pronominalize = flags.pronominalize;
            config.trace = flags.trace;
        }
        if (simplify->count("--stages") || config_path.empty())
            config.set_stages(stages);
        if (simplify->count("--lm-normalize") || config_path.empty()) {
            if (lm_normalize == "none")
                config.lm_normalize = LmNormalize::None;
            else if (lm_normalize == "perword")
                config.lm_normalize = LmNormalize::PerWord;
            else
                throw CLI::ValidationError("--lm-normalize must be none or perword");
        }
        if (const char* env = std::getenv("SEMSIMP_MODELS"))
            config.apply_model_dir(env);

        if (t_sft->parsed()) return cmd_train_sft(drs_path, out_path);
        if (t_lm->parsed()) return cmd_train_lm(text_path, lm_order, out_path);
        if (t_rules->parsed())
            return cmd_train_rules(complex_path, simple_path, theta, f_min,
                                   stopwords_path, out_path);
        if (t_rel->parsed()) return cmd_train_relprobs(drs_path, text_path, out_path);
        if (simplify->parsed()) return cmd_simplify(config, input_path, out_path);
        if (eval->parsed()) {
            if (ablation) {
                if (input_path.empty())
                    throw DataError("--ablation needs -i DRS-JSON input");
                return cmd_evaluate_ablation(config, input_path, complex_path,
                                             simple_path, char_ld, out_path);
            }
            if (system_path.empty())
                throw DataError("evaluate needs --system (or --ablation)");
            return cmd_evaluate(system_path, complex_path, simple_path, char_ld,
                                out_path);
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
