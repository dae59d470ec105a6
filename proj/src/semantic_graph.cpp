#include "semsimp/semantic_graph.hpp"

#include <algorithm>
#include <cstdlib>

#include "semsimp/error.hpp"
#include "semsimp/text.hpp"

namespace semsimp {

const Node* SemanticGraph::find_node(const std::string& var) const {
    for (const auto& n : nodes)
        if (n.var == var) return &n;
    return nullptr;
}

const Node& SemanticGraph::node(const std::string& var) const {
    const Node* n = find_node(var);
    if (!n) throw DataError(msg("graph ", id, ": unknown node var ", var));
    return *n;
}

const Predicate& head_predicate(const Node& n) {
    if (n.preds.empty())
        throw DataError(msg("node ", n.var, " has no predicates"));
    const Predicate* head = &n.preds.front();
    int best = -1;
    for (const auto& p : n.preds) {
        int right = p.positions.empty() ? -1 : p.positions.back();
        if (right > best) {
            best = right;
            head = &p;
        }
    }
    return *head;
}

int min_position(const Node& n) {
    int best = -1;
    for (const auto& p : n.preds)
        for (int pos : p.positions)
            if (best < 0 || pos < best) best = pos;
    return best;
}

std::set<int> covered_positions(const SemanticGraph& g) {
    std::set<int> covered;
    for (const auto& n : g.nodes)
        for (const auto& p : n.preds)
            covered.insert(p.positions.begin(), p.positions.end());
    return covered;
}

namespace {

// Owner of each covered position; positions are unique across predicates.
std::map<int, std::string> position_owners(const SemanticGraph& g) {
    std::map<int, std::string> owner;
    for (const auto& n : g.nodes)
        for (const auto& p : n.preds)
            for (int pos : p.positions) owner.emplace(pos, n.var);
    return owner;
}

std::string fresh_var(const SemanticGraph& g, const std::string& base) {
    std::string var = base;
    int suffix = 1;
    while (g.has_node(var)) var = base + "_" + std::to_string(suffix++);
    return var;
}

void check_coverage(const SemanticGraph& g) {
    std::vector<int> seen(g.tokens.size(), 0);
    for (const auto& n : g.nodes)
        for (const auto& p : n.preds)
            for (int pos : p.positions) {
                if (pos < 0 || pos >= static_cast<int>(g.tokens.size()))
                    throw DataError(msg("graph ", g.id, ": predicate position ",
                                        pos, " out of range"));
                ++seen[pos];
            }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i] == 0)
            throw DataError(msg("graph ", g.id, ": token ", i,
                                " not covered after preprocessing"));
        if (seen[i] > 1)
            throw DataError(msg("graph ", g.id, ": token ", i,
                                " covered by multiple predicates"));
    }
}

}  // namespace

SemanticGraph preprocess(const SemanticGraph& g) {
    SemanticGraph out = g;

    // named(x,w) and timex(x)=v become unary predicates on x.
    for (auto& n : out.nodes) {
        for (const auto& [word, pos] : n.named)
            n.preds.push_back({word, {pos}});
        for (const auto& [value, pos] : n.timex)
            n.preds.push_back({value, {pos}});
        n.named.clear();
        n.timex.clear();
        for (auto& p : n.preds) std::sort(p.positions.begin(), p.positions.end());
    }

    // Invert nn so the modified noun heads the modifier noun.
    for (auto& e : out.edges) {
        if (e.label == "nn") {
            std::swap(e.from, e.to);
            e.label = "nn-of";
        }
    }

    // Orphan nodes for uncovered tokens, attached to the node owning the
    // nearest covered position (tie: the left neighbour's node).
    auto owner = position_owners(out);
    int next_orphan = 1;
    for (int pos = 0; pos < static_cast<int>(out.tokens.size()); ++pos) {
        if (owner.count(pos)) continue;
        int best_dist = -1;
        std::string attach;
        for (const auto& [cov, var] : owner) {
            int dist = std::abs(cov - pos);
            if (best_dist < 0 || dist < best_dist ||
                (dist == best_dist && cov < pos)) {
                best_dist = dist;
                attach = var;
            }
        }
        if (attach.empty())
            throw DataError(msg("graph ", g.id,
                                ": no covered position to attach orphan token ",
                                pos, " ('", out.tokens[pos], "')"));
        std::string var = fresh_var(out, "O" + std::to_string(next_orphan++));
        Node orphan;
        orphan.var = var;
        orphan.kind = NodeKind::Orphan;
        orphan.preds.push_back({out.tokens[pos], {pos}});
        out.nodes.push_back(orphan);
        out.edges.push_back({attach, var, "orphan"});
    }

    check_coverage(out);
    return out;
}

SemanticGraph lift_modifiers(const SemanticGraph& g) {
    SemanticGraph out;
    out.id = g.id;
    out.tokens = g.tokens;
    out.edges = g.edges;
    int next_mod = 1;
    SemanticGraph scratch = g;  // fresh_var needs visibility of new nodes
    for (const auto& n : g.nodes) {
        if (n.preds.size() <= 1) {
            out.nodes.push_back(n);
            continue;
        }
        const Predicate& head = head_predicate(n);
        Node kept = n;
        kept.preds.clear();
        kept.preds.push_back(head);
        out.nodes.push_back(kept);
        for (const auto& p : n.preds) {
            if (&p == &head) continue;
            std::string var =
                fresh_var(scratch, n.var + "m" + std::to_string(next_mod++));
            Node child;
            child.var = var;
            child.kind = NodeKind::Entity;
            child.preds.push_back(p);
            scratch.nodes.push_back(child);
            out.nodes.push_back(child);
            out.edges.push_back({n.var, var, "modifier"});
        }
    }
    return out;
}

std::vector<std::string> realize_tokens(const SemanticGraph& g,
                                        const std::set<std::string>& node_subset) {
    std::set<int> positions;
    for (const auto& n : g.nodes) {
        if (!node_subset.count(n.var)) continue;
        for (const auto& p : n.preds)
            positions.insert(p.positions.begin(), p.positions.end());
    }
    std::vector<std::string> out;
    for (int pos : positions) {
        if (pos < 0 || pos >= static_cast<int>(g.tokens.size()))
            throw DataError(msg("graph ", g.id, ": position ", pos,
                                " outside token range"));
        out.push_back(g.tokens[pos]);
    }
    return out;
}

std::string realize(const SemanticGraph& g, const std::set<std::string>& node_subset) {
    return join(realize_tokens(g, node_subset));
}

std::set<std::string> all_vars(const SemanticGraph& g) {
    std::set<std::string> vars;
    for (const auto& n : g.nodes) vars.insert(n.var);
    return vars;
}

std::vector<std::string> events_of(const SemanticGraph& g) {
    std::vector<std::pair<int, std::string>> keyed;
    for (const auto& n : g.nodes) {
        if (n.kind != NodeKind::Event) continue;
        const Predicate& head = head_predicate(n);
        if (head.positions.empty())
            throw DataError(msg("graph ", g.id, ": event ", n.var,
                                " has a predicate without positions"));
        keyed.emplace_back(head.positions.front(), n.var);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 1; i < keyed.size(); ++i)
        if (keyed[i].first == keyed[i - 1].first)
            throw DataError(msg("graph ", g.id, ": events ", keyed[i - 1].second,
                                " and ", keyed[i].second,
                                " share the anchor position ", keyed[i].first));
    std::vector<std::string> out;
    for (const auto& [pos, var] : keyed) out.push_back(var);
    return out;
}

}  // namespace semsimp
