#ifndef SEMSIMP_COMPRESSOR_HPP
#define SEMSIMP_COMPRESSOR_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "semsimp/semantic_graph.hpp"

namespace semsimp {

// Relations whose edges are never deletion candidates.
const std::set<std::string>& mandatory_relations();

// P(r|h) over a DRS corpus plus word relative frequencies over the simple
// text corpus. Immutable after training.
class RelProbTable {
public:
    static RelProbTable train(const std::vector<SemanticGraph>& corpus,
                              const std::vector<std::vector<std::string>>& text);
    static RelProbTable train_files(const std::string& drs_path,
                                    const std::string& text_path);

    double rel_prob(const std::string& relation, const std::string& head) const;
    double word_prob(const std::string& word) const;

    static constexpr double kRelFloor = 1e-6;

    const std::map<std::pair<std::string, std::string>, double>& rel() const {
        return rel_;
    }
    const std::map<std::string, double>& word() const { return word_; }
    long word_total() const { return word_total_; }

    // Two sorted sections: "REL <relation>\t<head>\t<prob>" then
    // "WORD <word>\t<prob>", probabilities with 9 significant digits.
    void save(const std::string& path) const;
    static RelProbTable load(const std::string& path);

private:
    std::map<std::pair<std::string, std::string>, double> rel_;  // (relation, head)
    std::map<std::string, double> word_;
    long word_total_ = 0;
};

struct CompressionOptions {
    // 0 keeps the default "some deletion takes place" constraint
    // (kept edges <= optional edges - 1). A positive value instead requires
    // at least this many tokens deleted.
    int min_deleted_tokens = 0;
};

// One 0-1 variable per optional spanning-tree edge; x=1 keeps the edge,
// x=0 deletes its whole subtree.
struct DeletionVariable {
    std::string from, to, label;
    std::string head_lemma;     // lowercased head-predicate lemma of `from`
    std::string subtree_word;   // head word of the dependent subtree
    double weight = 0.0;        // P(label|head) * P(subtree_word)
    int parent = -1;            // nearest ancestor variable, -1 at the top
    int exclusive_tokens = 0;   // subtree positions not under a deeper variable
    std::vector<std::string> subtree_nodes;  // deleted with this edge
};

struct DeletionProgram {
    std::vector<DeletionVariable> vars;  // sorted by (from, label, to)
    long max_kept = 0;                   // sum x <= max_kept
    int min_deleted_tokens = 0;          // sum over deleted exclusive_tokens >= this
    bool feasible_for_deletion = false;  // false when no optional edges exist
};

// Spanning trees are grown per connected component from the component's
// first event node (first node in graph order otherwise); non-tree edges are
// kept unconditionally.
DeletionProgram build_program(const SemanticGraph& g, const RelProbTable& probs,
                              const CompressionOptions& opts = {});

// Exact optimum by branch and bound with a sort-free additive bound; ties
// resolve to the lexicographically largest keep-vector in variable order.
std::vector<char> solve(const DeletionProgram& p);

double objective(const DeletionProgram& p, const std::vector<char>& keep);

// Applies the optimal deletion: removes deleted subtrees' nodes (and their
// token positions) from the graph. Identity when no optional edge exists.
SemanticGraph compress(const SemanticGraph& g, const RelProbTable& probs,
                       const CompressionOptions& opts = {});

}  // namespace semsimp

#endif
