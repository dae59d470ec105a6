#ifndef SEMSIMP_SPLITTER_HPP
#define SEMSIMP_SPLITTER_HPP

#include <set>
#include <string>
#include <vector>

#include "semsimp/ngram_lm.hpp"
#include "semsimp/semantic_graph.hpp"
#include "semsimp/sft.hpp"

namespace semsimp {

enum class LmNormalize { None, PerWord };

struct SplitOptions {
    int max_events = 8;  // Bell(8) = 4140 candidates
    LmNormalize lm_normalize = LmNormalize::PerWord;
    bool pronominalize = false;
    int pronominalize_over = 4;  // replace duplicates longer than this
};

// All set partitions of {0..n-1} in canonical form: within a block indices
// ascend, blocks are ordered by their smallest element. Throws TooManyEvents
// if n exceeds max_events; callers then keep the no-split candidate.
std::vector<std::vector<std::vector<int>>> enumerate_partitions(int n,
                                                                int max_events);

// Nodes reachable from the block's events without passing through another
// block's event node. Shared non-event nodes appear in every closure that
// reaches them.
std::set<std::string> block_closure(const SemanticGraph& g,
                                    const std::set<std::string>& block_events);

// One output sentence of a split candidate.
struct SplitBlock {
    std::vector<std::string> events;  // position order
    std::set<std::string> closure;
    // Duplicated shared-element tokens emitted at the start of this block
    // (empty for the block that owns them natively).
    std::vector<int> prefix_positions;
    std::vector<int> native_positions;
    std::vector<int> dropped_orphan_positions;
    std::vector<std::string> realized;  // without the final period append
    std::string pattern;
    double length_factor = 0.0;
    double lm = 0.0;
    double sft = 0.0;
};

struct SplitCandidate {
    std::vector<SplitBlock> blocks;  // emission order
    std::string signature;           // canonical partition, e.g. "0,1|2"
    double score = 0.0;
    std::size_t n() const { return blocks.size(); }
};

// Scores one partition (blocks of indices into events_of(g)) with the mean
// over blocks of length-balance x LM probability x pattern likelihood.
SplitCandidate score_split(const SemanticGraph& g,
                           const std::vector<std::vector<int>>& partition,
                           const NgramModel& lm, const SplitFeatureTable& sft,
                           const SplitOptions& opts = {});

// Argmax over all partitions; ties prefer fewer blocks, then the smallest
// canonical signature. Graphs with zero events or more than max_events keep
// the no-split candidate.
SplitCandidate choose_split(const SemanticGraph& g, const NgramModel& lm,
                            const SplitFeatureTable& sft,
                            const SplitOptions& opts = {});

// Winning candidate realized as sentences. Multi-block outputs end each
// sentence with a period token; the single-block output is the input
// token sequence unchanged.
std::vector<std::vector<std::string>> choose_and_realize(
    const SemanticGraph& g, const NgramModel& lm, const SplitFeatureTable& sft,
    const SplitOptions& opts = {});

}  // namespace semsimp

#endif
