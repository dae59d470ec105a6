#include "semsimp/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "semsimp/drs_json.hpp"
#include "semsimp/error.hpp"
#include "semsimp/text.hpp"

namespace semsimp {

const std::set<std::string>& mandatory_relations() {
    static const std::set<std::string> m = {"agent", "patient", "theme", "eq"};
    return m;
}

RelProbTable RelProbTable::train(const std::vector<SemanticGraph>& corpus,
                                 const std::vector<std::vector<std::string>>& text) {
    if (corpus.empty()) throw DataError("relprob DRS corpus is empty");
    std::map<std::pair<std::string, std::string>, long> pair_counts;
    std::map<std::string, long> head_counts;
    for (const auto& g : corpus) {
        for (const auto& e : g.edges) {
            const Node& head = g.node(e.from);
            if (head.preds.empty()) continue;
            std::string h = lowercase(head_predicate(head).lemma);
            ++pair_counts[{e.label, h}];
            ++head_counts[h];
        }
    }

    RelProbTable t;
    for (const auto& [key, c] : pair_counts)
        t.rel_[key] = static_cast<double>(c) / static_cast<double>(head_counts[key.second]);

    std::map<std::string, long> word_counts;
    long total = 0;
    for (const auto& sent : text)
        for (const auto& tok : sent) {
            ++word_counts[lowercase(tok)];
            ++total;
        }
    if (total == 0) throw DataError("relprob text corpus is empty");
    t.word_total_ = total;
    for (const auto& [w, c] : word_counts)
        t.word_[w] = static_cast<double>(c) / static_cast<double>(total);
    return t;
}

RelProbTable RelProbTable::train_files(const std::string& drs_path,
                                       const std::string& text_path) {
    std::vector<SemanticGraph> corpus;
    for (const auto& g : parse_drs_file(drs_path))
        corpus.push_back(lift_modifiers(preprocess(g)));
    std::vector<std::vector<std::string>> text;
    for (const auto& line : read_lines(text_path)) text.push_back(split_ws(line));
    return train(corpus, text);
}

double RelProbTable::rel_prob(const std::string& relation,
                              const std::string& head) const {
    auto it = rel_.find({relation, lowercase(head)});
    return it == rel_.end() ? kRelFloor : it->second;
}

double RelProbTable::word_prob(const std::string& word) const {
    auto it = word_.find(lowercase(word));
    if (it != word_.end()) return it->second;
    return 1.0 / static_cast<double>(word_total_ + 1);
}

void RelProbTable::save(const std::string& path) const {
    std::ostringstream os;
    os << "#wordtotal=" << word_total_ << "\n";
    for (const auto& [key, p] : rel_)
        os << "REL " << key.first << "\t" << key.second << "\t" << format_prob(p)
           << "\n";
    for (const auto& [w, p] : word_)
        os << "WORD " << w << "\t" << format_prob(p) << "\n";
    write_file(path, os.str());
}

RelProbTable RelProbTable::load(const std::string& path) {
    RelProbTable t;
    std::size_t line_no = 0;
    for (const auto& line : read_lines(path)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.rfind("#wordtotal=", 0) == 0) {
            t.word_total_ = std::stol(line.substr(11));
            continue;
        }
        auto cols = split_on(line, '\t');
        if (cols[0].rfind("REL ", 0) == 0) {
            if (cols.size() != 3)
                throw DataError(msg(path, ":", line_no, ": REL lines take "
                                    "relation<TAB>head<TAB>prob"));
            t.rel_[{cols[0].substr(4), cols[1]}] = std::stod(cols[2]);
        } else if (cols[0].rfind("WORD ", 0) == 0) {
            if (cols.size() != 2)
                throw DataError(msg(path, ":", line_no, ": WORD lines take "
                                    "word<TAB>prob"));
            t.word_[cols[0].substr(5)] = std::stod(cols[1]);
        } else {
            throw DataError(msg(path, ":", line_no, ": expected REL or WORD"));
        }
    }
    if (t.word_total_ == 0) t.word_total_ = static_cast<long>(t.word_.size());
    return t;
}

namespace {

struct TreeEdge {
    std::string parent_node;  // BFS parent
    std::string child_node;   // BFS child (root of the detachable subtree)
    const Edge* edge = nullptr;
};

// BFS spanning forest; each component is rooted at its first event node
// (first node in graph order when it has none).
std::vector<TreeEdge> spanning_forest(const SemanticGraph& g,
                                      std::map<std::string, std::string>* parent_of) {
    std::map<std::string, std::vector<const Edge*>> adj;
    for (const auto& e : g.edges) {
        adj[e.from].push_back(&e);
        adj[e.to].push_back(&e);
    }
    std::vector<std::string> events = events_of(g);
    std::set<std::string> visited;
    std::vector<TreeEdge> tree;
    auto bfs = [&](const std::string& root) {
        std::vector<std::string> frontier{root};
        visited.insert(root);
        while (!frontier.empty()) {
            std::vector<std::string> next;
            for (const auto& v : frontier) {
                auto it = adj.find(v);
                if (it == adj.end()) continue;
                for (const Edge* e : it->second) {
                    const std::string& other = e->from == v ? e->to : e->from;
                    if (visited.count(other)) continue;
                    visited.insert(other);
                    tree.push_back({v, other, e});
                    (*parent_of)[other] = v;
                    next.push_back(other);
                }
            }
            frontier = std::move(next);
        }
    };

    // Components containing events first, rooted at the earliest event.
    for (const auto& ev : events)
        if (!visited.count(ev)) bfs(ev);
    for (const auto& n : g.nodes)
        if (!visited.count(n.var)) bfs(n.var);
    return tree;
}

std::set<int> node_position_set(const Node& n) {
    std::set<int> out;
    for (const auto& p : n.preds) out.insert(p.positions.begin(), p.positions.end());
    return out;
}

}  // namespace

DeletionProgram build_program(const SemanticGraph& g, const RelProbTable& probs,
                              const CompressionOptions& opts) {
    std::map<std::string, std::string> parent_of;
    std::vector<TreeEdge> tree = spanning_forest(g, &parent_of);

    // BFS children per node, for subtree walks.
    std::map<std::string, std::vector<const TreeEdge*>> children;
    for (const auto& te : tree) children[te.parent_node].push_back(&te);

    auto subtree_nodes = [&](const std::string& root) {
        std::vector<std::string> out{root};
        for (std::size_t i = 0; i < out.size(); ++i) {
            auto it = children.find(out[i]);
            if (it == children.end()) continue;
            for (const TreeEdge* te : it->second) out.push_back(te->child_node);
        }
        return out;
    };

    DeletionProgram prog;
    prog.min_deleted_tokens = opts.min_deleted_tokens;
    std::map<std::string, std::size_t> var_by_child;  // BFS child node -> var index
    for (const auto& te : tree) {
        if (mandatory_relations().count(te.edge->label)) continue;
        DeletionVariable v;
        v.from = te.edge->from;
        v.to = te.edge->to;
        v.label = te.edge->label;
        const Node& head = g.node(te.edge->from);
        v.head_lemma =
            head.preds.empty() ? "" : lowercase(head_predicate(head).lemma);
        const Node& child = g.node(te.child_node);
        v.subtree_word =
            child.preds.empty() ? "" : lowercase(head_predicate(child).lemma);
        v.weight = probs.rel_prob(v.label, v.head_lemma) *
                   probs.word_prob(v.subtree_word);
        v.subtree_nodes = subtree_nodes(te.child_node);
        prog.vars.push_back(std::move(v));
    }
    std::sort(prog.vars.begin(), prog.vars.end(),
              [](const DeletionVariable& a, const DeletionVariable& b) {
                  return std::tie(a.from, a.label, a.to) <
                         std::tie(b.from, b.label, b.to);
              });
    for (std::size_t i = 0; i < prog.vars.size(); ++i) {
        // child node of the variable's tree edge is the subtree root
        var_by_child[prog.vars[i].subtree_nodes.front()] = i;
    }

    // Nearest variable edge at or above a node, walking BFS parents.
    auto nearest_var = [&](std::string cur) -> int {
        while (true) {
            auto vit = var_by_child.find(cur);
            if (vit != var_by_child.end()) return static_cast<int>(vit->second);
            auto pit = parent_of.find(cur);
            if (pit == parent_of.end()) return -1;
            cur = pit->second;
        }
    };
    for (auto& v : prog.vars) {
        const std::string& child_root = v.subtree_nodes.front();
        auto pit = parent_of.find(child_root);
        v.parent = pit == parent_of.end() ? -1 : nearest_var(pit->second);
    }
    // exclusive tokens: positions whose nearest enclosing variable is v
    std::vector<std::set<int>> excl(prog.vars.size());
    for (const auto& n : g.nodes) {
        int v = nearest_var(n.var);
        if (v < 0) continue;
        excl[v].merge(node_position_set(n));
    }
    for (std::size_t i = 0; i < prog.vars.size(); ++i)
        prog.vars[i].exclusive_tokens = static_cast<int>(excl[i].size());

    prog.feasible_for_deletion = !prog.vars.empty();
    prog.max_kept = prog.vars.empty() ? 0 : static_cast<long>(prog.vars.size()) - 1;
    return prog;
}

double objective(const DeletionProgram& p, const std::vector<char>& keep) {
    double obj = 0.0;
    for (std::size_t i = 0; i < p.vars.size(); ++i)
        if (keep[i]) obj += p.vars[i].weight;
    return obj;
}

namespace {

class BranchAndBound {
public:
    explicit BranchAndBound(const DeletionProgram& p) : p_(p) {
        n_ = p.vars.size();
        // Suffix weight lists sorted descending, for the cardinality bound.
        suffix_sorted_.assign(n_ + 1, {});
        for (std::size_t i = n_; i-- > 0;) {
            suffix_sorted_[i] = suffix_sorted_[i + 1];
            if (p_.vars[i].weight > 0.0) {
                suffix_sorted_[i].push_back(p_.vars[i].weight);
                std::sort(suffix_sorted_[i].begin(), suffix_sorted_[i].end(),
                          std::greater<>());
            }
        }
        suffix_tokens_.assign(n_ + 1, 0);
        for (std::size_t i = n_; i-- > 0;)
            suffix_tokens_[i] = suffix_tokens_[i + 1] + p_.vars[i].exclusive_tokens;
    }

    std::vector<char> run() {
        assignment_.assign(n_, 0);
        best_found_ = false;
        dfs(0, 0.0, 0, 0);
        return best_found_ ? best_ : std::vector<char>{};
    }

private:
    double bound(std::size_t idx, double acc, long kept) const {
        const auto& ws = suffix_sorted_[idx];
        std::size_t budget = ws.size();
        if (p_.min_deleted_tokens == 0) {
            long room = p_.max_kept - kept;
            if (room < 0) room = 0;
            budget = std::min<std::size_t>(budget, static_cast<std::size_t>(room));
        }
        double b = acc;
        for (std::size_t i = 0; i < budget; ++i) b += ws[i];
        return b;
    }

    bool deletion_satisfiable(std::size_t idx, long kept, long deleted_tokens) const {
        if (p_.min_deleted_tokens > 0)
            return deleted_tokens + suffix_tokens_[idx] >= p_.min_deleted_tokens;
        // cardinality form: enough suffix vars left to push kept under the cap
        return kept <= p_.max_kept;
    }

    void dfs(std::size_t idx, double acc, long kept, long deleted_tokens) {
        if (!deletion_satisfiable(idx, kept, deleted_tokens)) return;
        // An equal bound cannot strictly improve, and the incumbent found
        // first by the keep-first search is the lexicographically largest
        // optimum, so <= is safe.
        if (best_found_ && bound(idx, acc, kept) <= best_obj_) return;
        if (idx == n_) {
            bool ok = p_.min_deleted_tokens > 0
                          ? deleted_tokens >= p_.min_deleted_tokens
                          : kept <= p_.max_kept;
            if (!ok) return;
            if (!best_found_ || acc > best_obj_) {
                best_found_ = true;
                best_obj_ = acc;
                best_ = assignment_;
            }
            return;
        }
        const DeletionVariable& v = p_.vars[idx];
        bool parent_kept = v.parent < 0 || assignment_[v.parent] == 1;
        bool cardinality_ok =
            p_.min_deleted_tokens > 0 || kept + 1 <= p_.max_kept;
        if (parent_kept && cardinality_ok) {
            assignment_[idx] = 1;
            dfs(idx + 1, acc + v.weight, kept + 1, deleted_tokens);
        }
        assignment_[idx] = 0;
        dfs(idx + 1, acc, kept, deleted_tokens + v.exclusive_tokens);
    }

    const DeletionProgram& p_;
    std::size_t n_ = 0;
    std::vector<std::vector<double>> suffix_sorted_;
    std::vector<long> suffix_tokens_;
    std::vector<char> assignment_, best_;
    double best_obj_ = 0.0;
    bool best_found_ = false;
};

}  // namespace

std::vector<char> solve(const DeletionProgram& p) {
    if (p.vars.empty()) return {};
    BranchAndBound bb(p);
    return bb.run();
}

SemanticGraph compress(const SemanticGraph& g, const RelProbTable& probs,
                       const CompressionOptions& opts) {
    DeletionProgram prog = build_program(g, probs, opts);
    if (!prog.feasible_for_deletion) return g;
    std::vector<char> keep = solve(prog);
    if (keep.empty()) return g;  // no feasible deletion under the constraints

    std::set<std::string> deleted;
    for (std::size_t i = 0; i < prog.vars.size(); ++i)
        if (!keep[i])
            deleted.insert(prog.vars[i].subtree_nodes.begin(),
                           prog.vars[i].subtree_nodes.end());

    SemanticGraph out;
    out.id = g.id;
    out.tokens = g.tokens;
    for (const auto& n : g.nodes)
        if (!deleted.count(n.var)) out.nodes.push_back(n);
    for (const auto& e : g.edges)
        if (!deleted.count(e.from) && !deleted.count(e.to)) out.edges.push_back(e);
    return out;
}

}  // namespace semsimp
