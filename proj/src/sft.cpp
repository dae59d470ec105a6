#include "semsimp/sft.hpp"

#include <algorithm>
#include <sstream>

#include "semsimp/error.hpp"
#include "semsimp/text.hpp"

namespace semsimp {

std::string serialize_role_set(const RoleSet& rs) {
    return join(rs, "+");
}

std::string serialize_pattern(const SemanticPattern& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += '|';
        out += serialize_role_set(p[i]);
    }
    return out;
}

SemanticPattern parse_pattern(const std::string& s) {
    SemanticPattern p;
    for (const auto& part : split_on(s, '|')) {
        RoleSet rs;
        if (!part.empty())
            for (const auto& role : split_on(part, '+')) rs.push_back(role);
        std::sort(rs.begin(), rs.end());
        p.push_back(rs);
    }
    return p;
}

RoleSet role_set_of(const SemanticGraph& g, const std::string& event_var) {
    RoleSet rs;
    for (const auto& e : g.edges) {
        if (e.from != event_var) continue;
        if (e.label == "orphan" || e.label == "modifier") continue;
        rs.push_back(e.label);
    }
    std::sort(rs.begin(), rs.end());
    return rs;
}

SemanticPattern pattern_of(const SemanticGraph& g,
                           const std::vector<std::string>& events) {
    SemanticPattern p;
    for (const auto& ev : events) p.push_back(role_set_of(g, ev));
    return p;
}

SplitFeatureTable SplitFeatureTable::from_counts(
    const std::map<std::string, long>& pattern_counts) {
    SplitFeatureTable t;
    t.counts_ = pattern_counts;
    for (const auto& [pat, c] : t.counts_) {
        if (c <= 0) throw DataError("SFT counts must be positive: " + pat);
        t.total_ += c;
    }
    if (t.total_ == 0) throw DataError("SFT has no counted sentences");
    t.rebuild_unigrams();
    return t;
}

SplitFeatureTable SplitFeatureTable::train(const std::vector<SemanticGraph>& corpus) {
    std::map<std::string, long> counts;
    for (const auto& g : corpus) {
        auto events = events_of(g);
        if (events.empty()) continue;  // unscorable sentence
        ++counts[serialize_pattern(pattern_of(g, events))];
    }
    if (counts.empty())
        throw DataError("SFT training corpus contains no sentences with events");
    return from_counts(counts);
}

void SplitFeatureTable::rebuild_unigrams() {
    roleset_counts_.clear();
    roleset_total_ = 0;
    for (const auto& [pat, c] : counts_) {
        for (const auto& rs : split_on(pat, '|')) {
            roleset_counts_[rs] += c;
            roleset_total_ += c;
        }
    }
}

double SplitFeatureTable::probability(const std::string& serialized) const {
    auto it = counts_.find(serialized);
    if (it != counts_.end())
        return static_cast<double>(it->second) / static_cast<double>(total_);
    // Unseen pattern: damped product of role-set unigram probabilities.
    double p = kBackoffWeight;
    for (const auto& rs : split_on(serialized, '|')) {
        auto ru = roleset_counts_.find(rs);
        long c = ru == roleset_counts_.end() ? 0 : ru->second;
        p *= static_cast<double>(c) / static_cast<double>(roleset_total_);
    }
    return std::max(p, kFloor);
}

double SplitFeatureTable::probability(const SemanticPattern& p) const {
    return probability(serialize_pattern(p));
}

void SplitFeatureTable::save(const std::string& path) const {
    std::ostringstream os;
    os << "#total=" << total_ << "\n";
    for (const auto& [pat, c] : counts_) os << pat << "\t" << c << "\n";
    write_file(path, os.str());
}

SplitFeatureTable SplitFeatureTable::load(const std::string& path) {
    auto lines = read_lines(path);
    if (lines.empty() || lines[0].rfind("#total=", 0) != 0)
        throw DataError(path + ": expected '#total=<N>' header");
    long declared = std::stol(lines[0].substr(7));
    std::map<std::string, long> counts;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto tab = lines[i].find('\t');
        if (tab == std::string::npos)
            throw DataError(msg(path, ":", i + 1, ": malformed SFT line"));
        counts[lines[i].substr(0, tab)] = std::stol(lines[i].substr(tab + 1));
    }
    auto t = from_counts(counts);
    if (t.total_ != declared)
        throw DataError(msg(path, ": header total ", declared,
                            " does not match summed counts ", t.total_));
    return t;
}

}  // namespace semsimp
