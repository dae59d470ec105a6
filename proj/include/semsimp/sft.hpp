#ifndef SEMSIMP_SFT_HPP
#define SEMSIMP_SFT_HPP

#include <map>
#include <string>
#include <vector>

#include "semsimp/semantic_graph.hpp"

namespace semsimp {

// Multiset of outgoing relation labels of one event (orphan/modifier edges
// excluded), kept sorted so equal multisets compare equal.
using RoleSet = std::vector<std::string>;
// Role sets of a sentence's events, ordered by event position.
using SemanticPattern = std::vector<RoleSet>;

// "agent+in+in+patient"
std::string serialize_role_set(const RoleSet& rs);
// "agent+patient|agent+in+in+patient"
std::string serialize_pattern(const SemanticPattern& p);
SemanticPattern parse_pattern(const std::string& s);

// Role set of one event node from its outgoing edges.
RoleSet role_set_of(const SemanticGraph& g, const std::string& event_var);
// Pattern over the given events (must be in position order).
SemanticPattern pattern_of(const SemanticGraph& g,
                           const std::vector<std::string>& events);

// Relative-frequency table of semantic patterns observed in a simple-corpus
// DRS collection. Unseen patterns back off to 0.1 x the product of per-event
// role-set unigram probabilities, floored at 1e-9.
class SplitFeatureTable {
public:
    static SplitFeatureTable from_counts(
        const std::map<std::string, long>& pattern_counts);
    static SplitFeatureTable train(const std::vector<SemanticGraph>& corpus);

    double probability(const SemanticPattern& p) const;
    double probability(const std::string& serialized_pattern) const;

    long total() const { return total_; }
    const std::map<std::string, long>& counts() const { return counts_; }
    static constexpr double kFloor = 1e-9;
    static constexpr double kBackoffWeight = 0.1;

    // "#total=N" header, then "<pattern>\t<count>" lines, sorted. Bit-exact.
    void save(const std::string& path) const;
    static SplitFeatureTable load(const std::string& path);

private:
    std::map<std::string, long> counts_;
    long total_ = 0;
    // Derived from counts_: per-role-set occurrence counts over all events.
    std::map<std::string, long> roleset_counts_;
    long roleset_total_ = 0;

    void rebuild_unigrams();
};

}  // namespace semsimp

#endif
