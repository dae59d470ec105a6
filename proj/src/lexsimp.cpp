#include "semsimp/lexsimp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "semsimp/error.hpp"
#include "semsimp/text.hpp"

namespace semsimp {

double ContextVector::norm() const {
    double s = 0.0;
    for (const auto& [w, c] : counts) s += static_cast<double>(c) * c;
    return std::sqrt(s);
}

double cosine(const ContextVector& a, const ContextVector& b) {
    if (a.counts.empty() || b.counts.empty()) return 0.0;
    const ContextVector& small = a.counts.size() <= b.counts.size() ? a : b;
    const ContextVector& large = a.counts.size() <= b.counts.size() ? b : a;
    double dot = 0.0;
    for (const auto& [w, c] : small.counts) {
        auto it = large.counts.find(w);
        if (it != large.counts.end())
            dot += static_cast<double>(c) * static_cast<double>(it->second);
    }
    if (dot == 0.0) return 0.0;
    return dot / (a.norm() * b.norm());
}

CorpusStats build_corpus_stats(
    const std::vector<std::vector<std::string>>& sentences, long f_min,
    const std::set<std::string>& stopwords) {
    bool any = false;
    CorpusStats stats;
    for (const auto& sent : sentences) {
        if (!sent.empty()) any = true;
        for (const auto& tok : sent) ++stats.freq[lowercase(tok)];
        stats.total_tokens += static_cast<long>(sent.size());
    }
    if (!any) throw DataError("context-vector corpus is empty");

    for (const auto& raw : sentences) {
        std::vector<std::string> sent = lowercase(raw);
        int len = static_cast<int>(sent.size());
        for (int i = 0; i < len; ++i) {
            const std::string& w = sent[i];
            if (stopwords.count(w)) continue;
            if (stats.freq[w] < f_min) continue;
            ContextVector& vec = stats.vectors[w];
            int lo = std::max(0, i - kContextWindow);
            int hi = std::min(len - 1, i + kContextWindow);
            for (int j = lo; j <= hi; ++j) {
                if (j == i) continue;
                if (stopwords.count(sent[j])) continue;
                ++vec.counts[sent[j]];
            }
        }
    }
    return stats;
}

std::map<std::string, ContextVector> build_context_vectors(
    const std::vector<std::vector<std::string>>& sentences, long f_min,
    const std::set<std::string>& stopwords) {
    return build_corpus_stats(sentences, f_min, stopwords).vectors;
}

CorpusStats build_corpus_stats_file(const std::string& path, long f_min,
                                    const std::set<std::string>& stopwords) {
    std::vector<std::vector<std::string>> sentences;
    for (const auto& line : read_lines(path)) sentences.push_back(split_ws(line));
    return build_corpus_stats(sentences, f_min, stopwords);
}

double word_complexity(const std::string& word, long freq_complex,
                       long freq_simple) {
    double ratio = static_cast<double>(freq_complex + 1) /
                   static_cast<double>(freq_simple + 1);
    return ratio * static_cast<double>(word.size());
}

void LexRuleTable::set_rules(std::vector<LexRule> rules) {
    rules_ = std::move(rules);
    for (auto& r : rules_) {
        if (r.complex_tokens.empty()) r.complex_tokens = split_ws(r.complex_key);
        if (r.complex_key.empty()) r.complex_key = join(r.complex_tokens);
    }
    std::sort(rules_.begin(), rules_.end(), [](const LexRule& a, const LexRule& b) {
        if (a.complex_key != b.complex_key) return a.complex_key < b.complex_key;
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.simple < b.simple;
    });
    reindex();
}

void LexRuleTable::reindex() {
    by_first_token_.clear();
    for (std::size_t i = 0; i < rules_.size(); ++i)
        by_first_token_[rules_[i].complex_tokens.front()].push_back(i);
    // Longest-first matching within one anchor token.
    for (auto& [tok, idxs] : by_first_token_)
        std::stable_sort(idxs.begin(), idxs.end(), [&](std::size_t a, std::size_t b) {
            return rules_[a].complex_tokens.size() > rules_[b].complex_tokens.size();
        });
}

std::vector<const LexRule*> LexRuleTable::match_at(
    const std::vector<std::string>& tokens, std::size_t pos) const {
    std::vector<const LexRule*> out;
    std::string anchor = lowercase(tokens[pos]);
    auto it = by_first_token_.find(anchor);
    if (it == by_first_token_.end()) return out;
    for (std::size_t idx : it->second) {
        const LexRule& r = rules_[idx];
        if (pos + r.complex_tokens.size() > tokens.size()) continue;
        bool match = true;
        for (std::size_t k = 0; k < r.complex_tokens.size(); ++k)
            if (lowercase(tokens[pos + k]) != r.complex_tokens[k]) {
                match = false;
                break;
            }
        if (match) out.push_back(&r);
    }
    return out;
}

const ContextVector* LexRuleTable::simple_vector(const std::string& simple) const {
    auto it = simple_vectors_.find(simple);
    return it == simple_vectors_.end() ? nullptr : &it->second;
}

void LexRuleTable::set_simple_vector(const std::string& simple, ContextVector v) {
    simple_vectors_[simple] = std::move(v);
}

void LexRuleTable::save(const std::string& path) const {
    std::ostringstream os;
    char buf[64];
    for (const auto& r : rules_) {
        std::snprintf(buf, sizeof(buf), "%.6f\t%.6f", r.similarity,
                      r.complexity_gain);
        os << r.complex_key << "\t" << r.simple << "\t" << buf << "\n";
    }
    write_file(path, os.str());
}

void LexRuleTable::save_vectors(const std::string& path) const {
    std::ostringstream os;
    for (const auto& [word, vec] : simple_vectors_) {
        os << word;
        for (const auto& [ctx, c] : vec.counts) os << "\t" << ctx << "\t" << c;
        os << "\n";
    }
    write_file(path, os.str());
}

LexRuleTable LexRuleTable::load(const std::string& path) {
    LexRuleTable table;
    std::vector<LexRule> rules;
    std::size_t line_no = 0;
    for (const auto& line : read_lines(path)) {
        ++line_no;
        if (line.empty()) continue;
        auto cols = split_on(line, '\t');
        if (cols.size() != 4)
            throw DataError(msg(path, ":", line_no, ": expected 4 tab-separated "
                                "columns, got ", cols.size()));
        LexRule r;
        r.complex_key = cols[0];
        r.complex_tokens = split_ws(cols[0]);
        r.simple = cols[1];
        r.similarity = std::stod(cols[2]);
        r.complexity_gain = std::stod(cols[3]);
        if (r.complex_tokens.empty())
            throw DataError(msg(path, ":", line_no, ": empty complex side"));
        if (split_ws(r.simple).empty())
            throw DataError(msg(path, ":", line_no, ": empty simple side"));
        rules.push_back(std::move(r));
    }
    table.set_rules(std::move(rules));
    return table;
}

void LexRuleTable::load_vectors(const std::string& path) {
    for (const auto& line : read_lines(path)) {
        if (line.empty()) continue;
        auto cols = split_on(line, '\t');
        if (cols.size() % 2 != 1)
            throw DataError(path + ": malformed vector line: " + line);
        ContextVector vec;
        for (std::size_t i = 1; i + 1 < cols.size(); i += 2)
            vec.counts[cols[i]] = std::stol(cols[i + 1]);
        simple_vectors_[cols[0]] = std::move(vec);
    }
}

LexRuleTable extract_rules(const CorpusStats& complex_stats,
                           const CorpusStats& simple_stats, double theta,
                           long f_min, const std::set<std::string>& stopwords) {
    auto freq_of = [](const std::map<std::string, long>& m, const std::string& w) {
        auto it = m.find(w);
        return it == m.end() ? 0L : it->second;
    };
    LexRuleTable table;
    table.theta = theta;
    table.f_min = f_min;
    table.stopwords = stopwords;
    std::vector<LexRule> rules;
    for (const auto& [cword, cvec] : complex_stats.vectors) {
        double c_complexity = word_complexity(
            cword, freq_of(complex_stats.freq, cword),
            freq_of(simple_stats.freq, cword));
        for (const auto& [sword, svec] : simple_stats.vectors) {
            if (cword == sword) continue;
            double s_complexity = word_complexity(
                sword, freq_of(complex_stats.freq, sword),
                freq_of(simple_stats.freq, sword));
            if (c_complexity <= s_complexity) continue;
            double sim = cosine(cvec, svec);
            if (sim < theta) continue;
            LexRule r;
            r.complex_key = cword;
            r.complex_tokens = {cword};
            r.simple = sword;
            r.similarity = sim;
            r.complexity_gain = c_complexity / s_complexity;
            rules.push_back(std::move(r));
        }
    }
    table.set_rules(std::move(rules));
    for (const auto& r : table.rules())
        if (!table.simple_vector(r.simple))
            table.set_simple_vector(r.simple, simple_stats.vectors.at(r.simple));
    return table;
}

namespace {

ContextVector instance_context(const std::vector<std::string>& sentence,
                               std::size_t pos, std::size_t len,
                               const std::set<std::string>& stopwords) {
    ContextVector vec;
    int lo = std::max(0, static_cast<int>(pos) - kContextWindow);
    int hi = std::min(static_cast<int>(sentence.size()) - 1,
                      static_cast<int>(pos + len - 1) + kContextWindow);
    for (int j = lo; j <= hi; ++j) {
        if (j >= static_cast<int>(pos) && j < static_cast<int>(pos + len)) continue;
        std::string w = lowercase(sentence[j]);
        if (stopwords.count(w)) continue;
        ++vec.counts[w];
    }
    return vec;
}

struct Candidate {
    Substitution sub;
    double adjusted = 0.0;  // score - kappa * len
};

// True when one substitution replaces a token the other's score counted.
bool interacts(const Candidate& a, const Candidate& b,
               const std::vector<std::string>& sentence,
               const LexRuleTable& table) {
    auto overlap = [](const Candidate& x, const Candidate& y) {
        return x.sub.pos < y.sub.pos + y.sub.len && y.sub.pos < x.sub.pos + x.sub.len;
    };
    if (overlap(a, b)) return true;
    auto depends = [&](const Candidate& scorer, const Candidate& replacer) {
        const ContextVector* vec = table.simple_vector(scorer.sub.rule->simple);
        if (!vec) return false;
        int lo = std::max(0, static_cast<int>(scorer.sub.pos) - kContextWindow);
        int hi = std::min(static_cast<int>(sentence.size()) - 1,
                          static_cast<int>(scorer.sub.pos + scorer.sub.len - 1) +
                              kContextWindow);
        for (std::size_t q = replacer.sub.pos;
             q < replacer.sub.pos + replacer.sub.len; ++q) {
            if (static_cast<int>(q) < lo || static_cast<int>(q) > hi) continue;
            std::string w = lowercase(sentence[q]);
            if (table.stopwords.count(w)) continue;  // never scored
            if (vec->counts.count(w)) return true;
        }
        return false;
    };
    return depends(a, b) || depends(b, a);
}

class SubstitutionSearch {
public:
    SubstitutionSearch(std::vector<Candidate> cands,
                       std::vector<std::vector<bool>> conflict)
        : cands_(std::move(cands)), conflict_(std::move(conflict)) {
        suffix_gain_.assign(cands_.size() + 1, 0.0);
        for (std::size_t i = cands_.size(); i-- > 0;)
            suffix_gain_[i] =
                suffix_gain_[i + 1] + std::max(0.0, cands_[i].adjusted);
    }

    std::vector<std::size_t> run() {
        best_ = 0.0;  // taking nothing is always feasible
        best_set_.clear();
        std::vector<std::size_t> chosen;
        dfs(0, 0.0, chosen);
        return best_set_;
    }

private:
    void dfs(std::size_t idx, double acc, std::vector<std::size_t>& chosen) {
        if (acc + suffix_gain_[idx] < best_) return;
        if (idx == cands_.size()) {
            if (acc > best_) {
                best_ = acc;
                best_set_ = chosen;
            }
            return;
        }
        bool compatible = true;
        for (std::size_t c : chosen)
            if (conflict_[c][idx]) {
                compatible = false;
                break;
            }
        if (compatible) {
            chosen.push_back(idx);
            dfs(idx + 1, acc + cands_[idx].adjusted, chosen);
            chosen.pop_back();
        }
        dfs(idx + 1, acc, chosen);
    }

    std::vector<Candidate> cands_;
    std::vector<std::vector<bool>> conflict_;
    std::vector<double> suffix_gain_;
    double best_ = 0.0;
    std::vector<std::size_t> best_set_;
};

}  // namespace

double score_substitution(const LexRule& rule,
                          const std::vector<std::string>& sentence,
                          std::size_t pos, const LexRuleTable& table) {
    const ContextVector* simple_vec = table.simple_vector(rule.simple);
    if (!simple_vec) return 0.0;
    ContextVector local = instance_context(sentence, pos,
                                           rule.complex_tokens.size(),
                                           table.stopwords);
    return cosine(*simple_vec, local) * rule.similarity;
}

std::vector<Substitution> plan_substitutions(
    const std::vector<std::string>& tokens, const LexRuleTable& table) {
    std::vector<Candidate> cands;
    for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
        for (const LexRule* rule : table.match_at(tokens, pos)) {
            Candidate c;
            c.sub.pos = pos;
            c.sub.len = rule->complex_tokens.size();
            c.sub.rule = rule;
            c.sub.score = score_substitution(*rule, tokens, pos, table);
            c.adjusted = c.sub.score - table.kappa * static_cast<double>(c.sub.len);
            cands.push_back(c);
        }
    }
    if (cands.empty()) return {};
    std::vector<std::vector<bool>> conflict(cands.size(),
                                            std::vector<bool>(cands.size(), false));
    for (std::size_t i = 0; i < cands.size(); ++i)
        for (std::size_t j = i + 1; j < cands.size(); ++j)
            conflict[i][j] = conflict[j][i] =
                interacts(cands[i], cands[j], tokens, table);

    SubstitutionSearch search(cands, conflict);
    std::vector<Substitution> out;
    for (std::size_t idx : search.run()) out.push_back(cands[idx].sub);
    std::sort(out.begin(), out.end(),
              [](const Substitution& a, const Substitution& b) {
                  return a.pos < b.pos;
              });
    return out;
}

std::vector<std::string> apply_substitutions(
    const std::vector<std::string>& tokens,
    const std::vector<Substitution>& subs) {
    std::vector<std::string> out;
    std::size_t i = 0;
    std::size_t next = 0;
    while (i < tokens.size()) {
        if (next < subs.size() && subs[next].pos == i) {
            for (const auto& w : split_ws(subs[next].rule->simple))
                out.push_back(w);
            i += subs[next].len;
            ++next;
        } else {
            out.push_back(tokens[i]);
            ++i;
        }
    }
    return out;
}

std::vector<std::string> simplify_lexical(const std::vector<std::string>& tokens,
                                          const LexRuleTable& table) {
    return apply_substitutions(tokens, plan_substitutions(tokens, table));
}

}  // namespace semsimp
