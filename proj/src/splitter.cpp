#include "semsimp/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "semsimp/error.hpp"
#include "semsimp/text.hpp"

namespace semsimp {

std::vector<std::vector<std::vector<int>>> enumerate_partitions(int n,
                                                                int max_events) {
    if (n < 1) throw DataError("enumerate_partitions needs at least one event");
    if (n > max_events)
        throw TooManyEvents(static_cast<std::size_t>(n),
                            static_cast<std::size_t>(max_events));
    // Restricted-growth strings: a[i] <= 1 + max(a[0..i-1]).
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> a(n, 0);
    while (true) {
        int blocks = *std::max_element(a.begin(), a.end()) + 1;
        std::vector<std::vector<int>> part(blocks);
        for (int i = 0; i < n; ++i) part[a[i]].push_back(i);
        out.push_back(std::move(part));
        // next restricted-growth string
        int i = n - 1;
        for (; i > 0; --i) {
            int prefix_max = *std::max_element(a.begin(), a.begin() + i);
            if (a[i] <= prefix_max) break;
        }
        if (i == 0) break;
        ++a[i];
        std::fill(a.begin() + i + 1, a.end(), 0);
    }
    // Canonical order: blocks already sorted by smallest element (growth
    // strings assign block ids by first appearance). Sort candidates for a
    // stable enumeration order.
    std::sort(out.begin(), out.end());
    return out;
}

std::set<std::string> block_closure(const SemanticGraph& g,
                                    const std::set<std::string>& block_events) {
    std::set<std::string> foreign_events;
    for (const auto& ev : events_of(g))
        if (!block_events.count(ev)) foreign_events.insert(ev);

    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& e : g.edges) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    std::set<std::string> closure;
    std::vector<std::string> frontier(block_events.begin(), block_events.end());
    for (const auto& v : frontier) closure.insert(v);
    while (!frontier.empty()) {
        std::vector<std::string> next;
        for (const auto& v : frontier) {
            auto it = adj.find(v);
            if (it == adj.end()) continue;
            for (const auto& nb : it->second) {
                if (closure.count(nb) || foreign_events.count(nb)) continue;
                closure.insert(nb);
                next.push_back(nb);
            }
        }
        frontier = std::move(next);
    }
    return closure;
}

namespace {

std::set<int> node_positions(const Node& n) {
    std::set<int> out;
    for (const auto& p : n.preds) out.insert(p.positions.begin(), p.positions.end());
    return out;
}

// Positions of var's subtree restricted to nn-of/modifier edges.
std::set<int> duplication_subtree(const SemanticGraph& g, const std::string& var,
                                  std::set<std::string>* members = nullptr) {
    std::set<int> out;
    std::set<std::string> seen{var};
    std::vector<std::string> frontier{var};
    while (!frontier.empty()) {
        std::vector<std::string> next;
        for (const auto& v : frontier) {
            out.merge(node_positions(g.node(v)));
            if (members) members->insert(v);
            for (const auto& e : g.edges) {
                if (e.from != v) continue;
                if (e.label != "nn-of" && e.label != "modifier") continue;
                if (seen.insert(e.to).second) next.push_back(e.to);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

std::string partition_signature(const std::vector<std::vector<int>>& partition) {
    std::string sig;
    for (std::size_t b = 0; b < partition.size(); ++b) {
        if (b) sig += '|';
        for (std::size_t i = 0; i < partition[b].size(); ++i) {
            if (i) sig += ',';
            sig += std::to_string(partition[b][i]);
        }
    }
    return sig;
}

}  // namespace

SplitCandidate score_split(const SemanticGraph& g,
                           const std::vector<std::vector<int>>& partition,
                           const NgramModel& lm, const SplitFeatureTable& sft,
                           const SplitOptions& opts) {
    auto events = events_of(g);
    std::map<std::string, int> event_min_pos;
    for (const auto& ev : events)
        event_min_pos[ev] = head_predicate(g.node(ev)).positions.front();

    // Canonicalize so block order and the final sum are input-order free.
    std::vector<std::vector<int>> canon = partition;
    for (auto& b : canon) std::sort(b.begin(), b.end());
    std::sort(canon.begin(), canon.end());

    SplitCandidate cand;
    cand.signature = partition_signature(canon);

    struct WorkBlock {
        std::vector<std::string> events;
        std::set<std::string> closure;
        int min_pos = 0;
        int min_event_pos = 0;
    };
    std::vector<WorkBlock> work;
    for (const auto& block : canon) {
        WorkBlock wb;
        std::set<std::string> evset;
        for (int idx : block) {
            if (idx < 0 || idx >= static_cast<int>(events.size()))
                throw DataError(msg("graph ", g.id, ": partition event index ",
                                    idx, " out of range"));
            wb.events.push_back(events[idx]);
            evset.insert(events[idx]);
        }
        wb.closure = block_closure(g, evset);
        wb.min_pos = static_cast<int>(g.tokens.size());
        wb.min_event_pos = event_min_pos[wb.events.front()];
        for (const auto& v : wb.closure) {
            int mp = min_position(g.node(v));
            if (mp >= 0) wb.min_pos = std::min(wb.min_pos, mp);
        }
        work.push_back(std::move(wb));
    }
    std::sort(work.begin(), work.end(), [](const WorkBlock& a, const WorkBlock& b) {
        return std::tie(a.min_pos, a.min_event_pos) <
               std::tie(b.min_pos, b.min_event_pos);
    });

    // First block (in emission order) that reaches a node owns it; later
    // blocks duplicate shared non-orphan material.
    std::map<std::string, std::size_t> owner;
    for (std::size_t i = 0; i < work.size(); ++i)
        for (const auto& v : work[i].closure) owner.emplace(v, i);

    bool multi = work.size() > 1;
    for (std::size_t i = 0; i < work.size(); ++i) {
        SplitBlock blk;
        blk.events = work[i].events;
        blk.closure = work[i].closure;

        std::set<int> native;
        std::set<int> own_orphans;  // candidate orphan positions of this block
        std::set<std::string> shared;
        for (const auto& v : blk.closure) {
            const Node& n = g.node(v);
            if (owner[v] != i) {
                if (n.kind != NodeKind::Orphan) shared.insert(v);
                continue;
            }
            if (n.kind == NodeKind::Orphan)
                own_orphans.merge(node_positions(n));
            else
                native.merge(node_positions(n));
        }

        std::set<int> prefix;
        if (!shared.empty()) {
            for (const auto& v : shared) prefix.merge(duplication_subtree(g, v));
        }

        // Orphans at a split boundary are dropped: both original neighbours
        // must stay inside this block. Dropping cascades through orphan runs.
        std::set<int> kept_orphans = own_orphans;
        if (multi) {
            bool changed = true;
            while (changed) {
                changed = false;
                for (auto it = kept_orphans.begin(); it != kept_orphans.end();) {
                    int p = *it;
                    auto inside = [&](int q) {
                        if (q < 0 || q >= static_cast<int>(g.tokens.size()))
                            return true;  // sentence edge is not a boundary
                        return native.count(q) > 0 || kept_orphans.count(q) > 0;
                    };
                    if (!inside(p - 1) || !inside(p + 1)) {
                        blk.dropped_orphan_positions.push_back(p);
                        it = kept_orphans.erase(it);
                        changed = true;
                    } else {
                        ++it;
                    }
                }
            }
        }
        native.merge(std::set<int>(kept_orphans));
        std::sort(blk.dropped_orphan_positions.begin(),
                  blk.dropped_orphan_positions.end());

        blk.native_positions.assign(native.begin(), native.end());
        blk.prefix_positions.assign(prefix.begin(), prefix.end());

        bool pronominal =
            opts.pronominalize &&
            static_cast<int>(blk.prefix_positions.size()) > opts.pronominalize_over;
        if (pronominal) {
            // Count shared roots: shared nodes not inside another shared
            // node's duplication subtree.
            std::set<std::string> covered;
            for (const auto& v : shared) {
                std::set<std::string> members;
                duplication_subtree(g, v, &members);
                members.erase(v);
                for (const auto& m : members) covered.insert(m);
            }
            std::size_t roots = 0;
            for (const auto& v : shared)
                if (!covered.count(v)) ++roots;
            blk.realized.push_back(roots > 1 ? "They" : "It");
        } else {
            for (int p : blk.prefix_positions) blk.realized.push_back(g.tokens[p]);
        }
        for (int p : blk.native_positions) blk.realized.push_back(g.tokens[p]);

        cand.blocks.push_back(std::move(blk));
    }

    // P_split: mean over blocks of length-balance x lm x pattern likelihood.
    double n = static_cast<double>(cand.blocks.size());
    double sentence_len = static_cast<double>(g.tokens.size());
    double target_len = sentence_len / n;
    double sum = 0.0;
    bool empty_block = false;
    for (auto& blk : cand.blocks) {
        double len = static_cast<double>(blk.realized.size());
        if (len == 0.0) {
            empty_block = true;
            break;
        }
        blk.length_factor = target_len / (target_len + std::fabs(target_len - len));
        double lp = lm.sentence_logprob(blk.realized);
        blk.lm = opts.lm_normalize == LmNormalize::PerWord ? std::exp(lp / len)
                                                           : std::exp(lp);
        blk.pattern = serialize_pattern(pattern_of(g, blk.events));
        blk.sft = sft.probability(blk.pattern);
        sum += blk.length_factor * blk.lm * blk.sft;
    }
    cand.score = empty_block ? 0.0 : sum / n;
    return cand;
}

SplitCandidate choose_split(const SemanticGraph& g, const NgramModel& lm,
                            const SplitFeatureTable& sft,
                            const SplitOptions& opts) {
    auto events = events_of(g);
    auto no_split_partition = [&]() {
        std::vector<int> all(events.size());
        for (std::size_t i = 0; i < events.size(); ++i) all[i] = static_cast<int>(i);
        return std::vector<std::vector<int>>{all};
    };
    if (events.empty()) {
        // Nothing to split on; the caller keeps the input sentence.
        SplitCandidate cand;
        SplitBlock blk;
        for (std::size_t i = 0; i < g.tokens.size(); ++i)
            blk.native_positions.push_back(static_cast<int>(i));
        blk.realized = g.tokens;
        blk.closure = all_vars(g);
        cand.blocks.push_back(std::move(blk));
        cand.signature = "";
        return cand;
    }

    std::vector<std::vector<std::vector<int>>> partitions;
    try {
        partitions = enumerate_partitions(static_cast<int>(events.size()),
                                          opts.max_events);
    } catch (const TooManyEvents&) {
        partitions.push_back(no_split_partition());
    }

    const SplitCandidate* best = nullptr;
    std::vector<SplitCandidate> scored;
    scored.reserve(partitions.size());
    for (const auto& part : partitions)
        scored.push_back(score_split(g, part, lm, sft, opts));
    for (const auto& cand : scored) {
        if (!best) {
            best = &cand;
            continue;
        }
        if (cand.score > best->score ||
            (cand.score == best->score &&
             (cand.n() < best->n() ||
              (cand.n() == best->n() && cand.signature < best->signature))))
            best = &cand;
    }
    return *best;
}

std::vector<std::vector<std::string>> choose_and_realize(
    const SemanticGraph& g, const NgramModel& lm, const SplitFeatureTable& sft,
    const SplitOptions& opts) {
    SplitCandidate cand = choose_split(g, lm, sft, opts);
    std::vector<std::vector<std::string>> out;
    if (cand.n() <= 1) {
        out.push_back(g.tokens);
        return out;
    }
    for (const auto& blk : cand.blocks) {
        std::vector<std::string> sent = blk.realized;
        if (sent.empty() || !is_sentence_terminator(sent.back()))
            sent.push_back(".");
        out.push_back(std::move(sent));
    }
    return out;
}

}  // namespace semsimp
