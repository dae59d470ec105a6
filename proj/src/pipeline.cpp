#include "semsimp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <map>
#include <thread>

#include "semsimp/drs_json.hpp"
#include "semsimp/error.hpp"
#include "semsimp/text.hpp"

namespace semsimp {

void PipelineConfig::apply_model_dir(const std::string& dir) {
    if (dir.empty()) return;
    auto fill = [&](std::string& path, const char* name) {
        if (path.empty()) path = dir + "/" + name;
    };
    fill(sft_path, "sft.tsv");
    fill(lm_path, "lm.counts");
    fill(rules_path, "rules.tsv");
    fill(relprobs_path, "relprobs.tsv");
}

void PipelineConfig::set_stages(const std::string& spec) {
    stage_lex = stage_split = stage_delete = false;
    for (const auto& part : split_on(spec, ',')) {
        if (part.empty()) continue;
        if (part == "lex")
            stage_lex = true;
        else if (part == "split")
            stage_split = true;
        else if (part == "delete")
            stage_delete = true;
        else
            throw DataError("unknown stage '" + part +
                            "' (expected lex, split, delete)");
    }
}

std::string PipelineConfig::stages_string() const {
    std::vector<std::string> on;
    if (stage_lex) on.push_back("lex");
    if (stage_split) on.push_back("split");
    if (stage_delete) on.push_back("delete");
    return join(on, ",");
}

void PipelineConfig::apply_config_file(const std::string& path) {
    std::size_t line_no = 0;
    for (const auto& raw : read_lines(path)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (!split_ws(line).empty())
                throw DataError(msg(path, ":", line_no, ": expected key = value"));
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "stages")
            set_stages(value);
        else if (key == "sft")
            sft_path = value;
        else if (key == "lm")
            lm_path = value;
        else if (key == "rules")
            rules_path = value;
        else if (key == "rules-vectors")
            rules_vectors_path = value;
        else if (key == "relprobs")
            relprobs_path = value;
        else if (key == "stopwords")
            stopwords_path = value;
        else if (key == "max-events")
            max_events = std::stoi(value);
        else if (key == "lm-normalize") {
            if (value == "none")
                lm_normalize = LmNormalize::None;
            else if (value == "perword")
                lm_normalize = LmNormalize::PerWord;
            else
                throw DataError(msg(path, ":", line_no,
                                    ": lm-normalize must be none or perword"));
        } else if (key == "pronominalize")
            pronominalize = (value == "1" || value == "true" || value == "yes");
        else if (key == "theta")
            theta = std::stod(value);
        else if (key == "fmin")
            f_min = std::stol(value);
        else if (key == "kappa")
            kappa = std::stod(value);
        else if (key == "min-deleted-tokens")
            min_deleted_tokens = std::stoi(value);
        else if (key == "threads")
            threads = std::stoi(value);
        else
            throw DataError(msg(path, ":", line_no, ": unknown key '", key, "'"));
    }
}

void PipelineConfig::validate() const {
    if (!stage_lex && !stage_split && !stage_delete)
        throw DataError("no pipeline stage enabled");
    auto need = [](const std::string& path, const char* what) {
        if (path.empty())
            throw DataError(msg("stage enabled but no ", what, " model given"));
        if (!std::filesystem::exists(path))
            throw DataError(msg(what, " model file does not exist: ", path));
    };
    if (stage_lex) need(rules_path, "rules");
    if (stage_split) {
        need(sft_path, "sft");
        need(lm_path, "lm");
    }
    if (stage_delete) need(relprobs_path, "relprobs");
}

PipelineModels PipelineModels::load(const PipelineConfig& config) {
    PipelineModels m;
    if (config.stage_lex) {
        LexRuleTable table = LexRuleTable::load(config.rules_path);
        table.theta = config.theta;
        table.f_min = config.f_min;
        table.kappa = config.kappa;
        if (!config.stopwords_path.empty())
            table.stopwords = load_stopwords(config.stopwords_path);
        std::string vec = config.rules_vectors_path.empty()
                              ? config.rules_path + ".vec"
                              : config.rules_vectors_path;
        if (std::filesystem::exists(vec)) table.load_vectors(vec);
        m.rules = std::move(table);
    }
    if (config.stage_split) {
        m.sft = SplitFeatureTable::load(config.sft_path);
        m.lm = NgramModel::load(config.lm_path);
    }
    if (config.stage_delete) m.relprobs = RelProbTable::load(config.relprobs_path);
    return m;
}

SemanticGraph induced_subgraph(const SemanticGraph& g,
                               const std::set<std::string>& vars) {
    SemanticGraph out;
    out.id = g.id;
    out.tokens = g.tokens;
    for (const auto& n : g.nodes)
        if (vars.count(n.var)) out.nodes.push_back(n);
    for (const auto& e : g.edges)
        if (vars.count(e.from) && vars.count(e.to)) out.edges.push_back(e);
    return out;
}

SemanticGraph apply_lexical_to_graph(const SemanticGraph& g,
                                     const std::vector<Substitution>& subs) {
    if (subs.empty()) return g;

    // New token sequence and old->new position mapping. Replaced spans map
    // one to one as far as lengths allow; surplus new tokens attach to the
    // owner of the last replaced position.
    std::vector<std::string> new_tokens;
    std::map<int, std::vector<int>> remap;
    std::size_t i = 0, next = 0;
    while (i < g.tokens.size()) {
        if (next < subs.size() && subs[next].pos == i) {
            const Substitution& s = subs[next];
            auto repl = split_ws(s.rule->simple);
            std::size_t start = new_tokens.size();
            for (const auto& w : repl) new_tokens.push_back(w);
            for (std::size_t k = 0; k < s.len; ++k) {
                if (k < repl.size())
                    remap[static_cast<int>(i + k)] = {static_cast<int>(start + k)};
                else
                    remap[static_cast<int>(i + k)] = {};
            }
            for (std::size_t k = s.len; k < repl.size(); ++k)
                remap[static_cast<int>(i + s.len - 1)].push_back(
                    static_cast<int>(start + k));
            i += s.len;
            ++next;
        } else {
            remap[static_cast<int>(i)] = {static_cast<int>(new_tokens.size())};
            new_tokens.push_back(g.tokens[i]);
            ++i;
        }
    }

    SemanticGraph out;
    out.id = g.id;
    out.tokens = new_tokens;
    std::set<std::string> dropped;
    for (const auto& n : g.nodes) {
        Node nn = n;
        nn.preds.clear();
        for (const auto& p : n.preds) {
            Predicate np;
            np.lemma = p.lemma;
            bool touched = false;
            for (int pos : p.positions) {
                const auto& mapped = remap.at(pos);
                for (int m : mapped) np.positions.push_back(m);
                // a pure index shift is not a rewrite; only surface changes
                // retarget the lemma
                if (mapped.size() != 1 ||
                    new_tokens[mapped[0]] != g.tokens[pos])
                    touched = true;
            }
            std::sort(np.positions.begin(), np.positions.end());
            if (np.positions.empty()) continue;  // fully absorbed span tail
            if (touched)
                np.lemma = lowercase(new_tokens[np.positions.back()]);
            nn.preds.push_back(std::move(np));
        }
        if (nn.preds.empty() && !n.preds.empty()) {
            dropped.insert(n.var);
            continue;
        }
        out.nodes.push_back(std::move(nn));
    }

    // Edges of an absorbed node move to the node that kept the span's first
    // replaced position, so the graph stays connected.
    std::map<std::string, std::string> redirect;
    if (!dropped.empty()) {
        std::map<int, std::string> old_owner;
        for (const auto& n : g.nodes)
            for (const auto& p : n.preds)
                for (int pos : p.positions) old_owner.emplace(pos, n.var);
        for (const auto& var : dropped) {
            int first_old = -1;
            for (const auto& p : g.node(var).preds)
                for (int pos : p.positions)
                    if (first_old < 0 || pos < first_old) first_old = pos;
            std::string target;
            for (const auto& s : subs) {
                if (first_old >= static_cast<int>(s.pos) &&
                    first_old < static_cast<int>(s.pos + s.len)) {
                    target = old_owner.at(static_cast<int>(s.pos));
                    break;
                }
            }
            if (!target.empty() && !dropped.count(target)) redirect[var] = target;
        }
    }
    for (const auto& e : g.edges) {
        Edge ne = e;
        if (auto it = redirect.find(ne.from); it != redirect.end())
            ne.from = it->second;
        if (auto it = redirect.find(ne.to); it != redirect.end())
            ne.to = it->second;
        if (dropped.count(ne.from) || dropped.count(ne.to)) continue;
        if (ne.from == ne.to) continue;
        out.edges.push_back(ne);
    }
    return out;
}

namespace {

struct EmissionBlock {
    std::vector<std::string> events;
    std::set<std::string> closure;
    std::vector<int> prefix;
    std::vector<int> native;
};

std::vector<std::string> emit_block(const SemanticGraph& g,
                                    const EmissionBlock& b,
                                    const std::set<int>* surviving) {
    std::vector<std::string> out;
    auto push = [&](const std::vector<int>& positions) {
        for (int p : positions)
            if (!surviving || surviving->count(p)) out.push_back(g.tokens[p]);
    };
    push(b.prefix);
    push(b.native);
    return out;
}

}  // namespace

SentenceResult simplify_sentence(const SemanticGraph& raw,
                                 const PipelineModels& models,
                                 const PipelineConfig& config) {
    SentenceResult res;
    SemanticGraph g = lift_modifiers(preprocess(raw));

    if (config.stage_lex) {
        auto subs = plan_substitutions(g.tokens, *models.rules);
        g = apply_lexical_to_graph(g, subs);
        res.trace.lex = join(g.tokens);
    }

    // Split: emission blocks, either the winning candidate's or the whole
    // sentence as one block.
    std::vector<EmissionBlock> blocks;
    if (config.stage_split) {
        SplitOptions opts;
        opts.max_events = config.max_events;
        opts.lm_normalize = config.lm_normalize;
        opts.pronominalize = config.pronominalize;
        SplitCandidate cand = choose_split(g, *models.lm, *models.sft, opts);
        if (cand.n() > 1) {
            for (const auto& blk : cand.blocks) {
                EmissionBlock b;
                b.events = blk.events;
                b.closure = blk.closure;
                b.prefix = blk.prefix_positions;
                b.native = blk.native_positions;
                blocks.push_back(std::move(b));
            }
        }
    }
    if (blocks.empty()) {
        EmissionBlock b;
        b.closure = all_vars(g);
        for (int p : covered_positions(g)) b.native.push_back(p);
        blocks.push_back(std::move(b));
    }

    bool multi = blocks.size() > 1;
    auto emit_all = [&](const std::vector<std::set<int>>* surviving) {
        std::vector<std::string> sentences;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            auto toks =
                emit_block(g, blocks[i], surviving ? &(*surviving)[i] : nullptr);
            if (toks.empty()) continue;
            if (multi && !is_sentence_terminator(toks.back()))
                toks.push_back(".");
            sentences.push_back(join(toks));
        }
        return join(sentences);
    };

    if (config.stage_split) res.trace.split = emit_all(nullptr);

    if (config.stage_delete) {
        std::vector<std::set<int>> surviving;
        CompressionOptions copts;
        copts.min_deleted_tokens = config.min_deleted_tokens;
        for (const auto& b : blocks) {
            SemanticGraph sub = induced_subgraph(g, b.closure);
            SemanticGraph compressed = compress(sub, *models.relprobs, copts);
            surviving.push_back(covered_positions(compressed));
        }
        res.output = emit_all(&surviving);
        res.trace.deletion = res.output;
    } else {
        res.output = emit_all(nullptr);
    }

    // Stageless identity guard: with only lex enabled the output is just the
    // substituted token sequence.
    if (!config.stage_split && !config.stage_delete) res.output = join(g.tokens);
    return res;
}

std::vector<SentenceResult> simplify_lines(const std::vector<std::string>& lines,
                                           const PipelineModels& models,
                                           const PipelineConfig& config) {
    std::vector<SentenceResult> results(lines.size());
    auto work = [&](std::size_t i) {
        const std::string& line = lines[i];
        if (split_ws(line).empty()) {
            results[i].output = "";
            return;
        }
        try {
            SemanticGraph raw = parse_drs_record(line, i + 1);
            results[i] = simplify_sentence(raw, models, config);
        } catch (const std::exception& e) {
            results[i].ok = false;
            results[i].error = e.what();
            results[i].output = line;  // echo through unmodified
        }
    };
    int threads = std::max(1, config.threads);
    if (threads == 1 || lines.size() <= 1) {
        for (std::size_t i = 0; i < lines.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        int n = std::min<std::size_t>(threads, lines.size());
        for (int t = 0; t < n; ++t)
            pool.emplace_back([&]() {
                while (true) {
                    std::size_t i = cursor.fetch_add(1);
                    if (i >= lines.size()) break;
                    work(i);
                }
            });
        for (auto& th : pool) th.join();
    }
    return results;
}

}  // namespace semsimp
