#ifndef SEMSIMP_LEXSIMP_HPP
#define SEMSIMP_LEXSIMP_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "semsimp/stopwords.hpp"

namespace semsimp {

// Sparse co-occurrence counts within a +-10 token window.
struct ContextVector {
    std::map<std::string, long> counts;
    double norm() const;
};

double cosine(const ContextVector& a, const ContextVector& b);

constexpr int kContextWindow = 10;

// Per-corpus statistics: windowed context vectors for content words at or
// above the frequency threshold, plus raw token frequencies for everything.
struct CorpusStats {
    std::map<std::string, ContextVector> vectors;
    std::map<std::string, long> freq;
    long total_tokens = 0;
};

// Context vectors over a tokenized, one-sentence-per-line corpus. Windows
// do not cross sentence boundaries; stopwords are excluded from both the
// keyed words and the context counts.
std::map<std::string, ContextVector> build_context_vectors(
    const std::vector<std::vector<std::string>>& sentences, long f_min,
    const std::set<std::string>& stopwords = default_stopwords());

CorpusStats build_corpus_stats(
    const std::vector<std::vector<std::string>>& sentences, long f_min,
    const std::set<std::string>& stopwords = default_stopwords());
CorpusStats build_corpus_stats_file(const std::string& path, long f_min,
                                    const std::set<std::string>& stopwords =
                                        default_stopwords());

struct LexRule {
    std::vector<std::string> complex_tokens;  // usually one token
    std::string complex_key;                  // tokens joined by spaces
    std::string simple;                       // may be multiword
    double similarity = 0.0;                  // cosine of corpus vectors
    double complexity_gain = 0.0;             // complexity(C)/complexity(S), > 1
};

// Laplace-smoothed frequency-ratio complexity: (fc+1)/(fs+1) x word length.
double word_complexity(const std::string& word, long freq_complex,
                       long freq_simple);

class LexRuleTable {
public:
    double theta = 0.1;
    long f_min = 10;
    double kappa = 0.05;  // keep-decision score per position
    std::set<std::string> stopwords = default_stopwords();

    const std::vector<LexRule>& rules() const { return rules_; }
    void set_rules(std::vector<LexRule> rules);

    // Rules whose complex key matches tokens at pos, longest key first.
    std::vector<const LexRule*> match_at(const std::vector<std::string>& tokens,
                                         std::size_t pos) const;

    const ContextVector* simple_vector(const std::string& simple) const;
    void set_simple_vector(const std::string& simple, ContextVector v);

    // "<complex>\t<simple>\t<similarity>\t<gain>" sorted by complex word then
    // descending similarity. Context vectors travel in a sidecar file.
    void save(const std::string& path) const;
    void save_vectors(const std::string& path) const;
    static LexRuleTable load(const std::string& path);
    void load_vectors(const std::string& path);

private:
    std::vector<LexRule> rules_;
    std::map<std::string, std::vector<std::size_t>> by_first_token_;
    std::map<std::string, ContextVector> simple_vectors_;

    void reindex();
};

// Rules (C,S) with cosine(vec_C complex-side, vec_S simple-side) >= theta,
// complexity(C) > complexity(S), S attested in the simple corpus.
LexRuleTable extract_rules(const CorpusStats& complex_stats,
                           const CorpusStats& simple_stats, double theta,
                           long f_min,
                           const std::set<std::string>& stopwords =
                               default_stopwords());

// Adequacy of one substitution instance: cosine between the rule's
// simple-word corpus vector and the instance's local context window,
// scaled by the rule similarity.
double score_substitution(const LexRule& rule,
                          const std::vector<std::string>& sentence,
                          std::size_t pos, const LexRuleTable& table);

struct Substitution {
    std::size_t pos = 0;
    std::size_t len = 1;
    const LexRule* rule = nullptr;
    double score = 0.0;
};

// Optimal substitution set under the DP: maximizes the summed instance
// scores plus kappa for every untouched position, with at most one
// substitution per position and no two interacting substitutions within a
// shared context window.
std::vector<Substitution> plan_substitutions(
    const std::vector<std::string>& tokens, const LexRuleTable& table);

std::vector<std::string> apply_substitutions(
    const std::vector<std::string>& tokens, const std::vector<Substitution>& subs);

std::vector<std::string> simplify_lexical(const std::vector<std::string>& tokens,
                                          const LexRuleTable& table);

}  // namespace semsimp

#endif
