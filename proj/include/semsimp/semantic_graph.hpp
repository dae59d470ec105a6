#ifndef SEMSIMP_SEMANTIC_GRAPH_HPP
#define SEMSIMP_SEMANTIC_GRAPH_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

namespace semsimp {

enum class NodeKind { Event, Entity, Orphan };

struct Predicate {
    std::string lemma;
    std::vector<int> positions;  // sorted, 0-based token indices
};

struct Node {
    std::string var;
    NodeKind kind = NodeKind::Entity;
    std::vector<Predicate> preds;
    // Raw named/timex facts from the input record; preprocess() folds them
    // into preds and clears them.
    std::vector<std::pair<std::string, int>> named;
    std::vector<std::pair<std::string, int>> timex;
};

struct Edge {
    std::string from;   // head
    std::string to;     // dependent
    std::string label;  // agent, patient, theme, in, of, eq, nn, modifier, ...
};

// One sentence's DRS flattened into a labelled graph. Values are immutable
// after construction; all operations return fresh graphs.
struct SemanticGraph {
    std::string id;
    std::vector<std::string> tokens;
    std::vector<Node> nodes;  // stable order; lookup via index map below
    std::vector<Edge> edges;

    const Node* find_node(const std::string& var) const;
    const Node& node(const std::string& var) const;  // throws if absent
    bool has_node(const std::string& var) const { return find_node(var) != nullptr; }
};

// Head predicate of a node: the one anchoring the rightmost token position.
const Predicate& head_predicate(const Node& n);
// Smallest position covered by any predicate of the node; -1 if none.
int min_position(const Node& n);

// Folds named/timex facts into unary predicates, reverses every `nn` edge
// into `nn-of`, and introduces an orphan node for every token position not
// covered by any predicate. Orphans attach to the node owning the nearest
// covered position (ties go left). Verifies the position-coverage invariant
// on the result. Idempotent.
SemanticGraph preprocess(const SemanticGraph& g);

// Moves every non-head predicate of a multi-predicate node onto a fresh
// child node linked by a `modifier` edge. The rightmost predicate stays as
// the head. Idempotent.
SemanticGraph lift_modifiers(const SemanticGraph& g);

// Tokens covered by predicates of the node subset, ascending positions.
std::vector<std::string> realize_tokens(const SemanticGraph& g,
                                        const std::set<std::string>& node_subset);
// Same, joined with single spaces.
std::string realize(const SemanticGraph& g, const std::set<std::string>& node_subset);

std::set<std::string> all_vars(const SemanticGraph& g);

// Event nodes ordered by the minimum token position of their head predicate.
// Two events anchored at the same position are invalid input.
std::vector<std::string> events_of(const SemanticGraph& g);

// Positions covered by any predicate of any node (orphans included).
std::set<int> covered_positions(const SemanticGraph& g);

}  // namespace semsimp

#endif
