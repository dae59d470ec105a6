#ifndef SEMSIMP_METRICS_HPP
#define SEMSIMP_METRICS_HPP

#include <string>
#include <vector>

namespace semsimp {

// Token-level edit distance with unit costs.
int levenshtein(const std::vector<std::string>& a,
                const std::vector<std::string>& b);
// Character-level variant, behind the evaluate flag.
int levenshtein_chars(const std::string& a, const std::string& b);

// Corpus BLEU-4 percentage, multi-bleu conventions: clipped n-gram
// precisions, geometric mean, brevity penalty, 0 when any order has no
// matches. One reference per candidate.
double bleu(const std::vector<std::vector<std::string>>& candidates,
            const std::vector<std::vector<std::string>>& references);

struct EvalReport {
    std::size_t corpus_size = 0;
    double ld_complex_to_system = 0.0;
    double ld_system_to_simple = 0.0;
    long noedit_complex_to_system = 0;  // raw counts...
    long noedit_system_to_simple = 0;
    double noedit_complex_pct = 0.0;  // ...and percentages
    double noedit_simple_pct = 0.0;
    double bleu_vs_simple = 0.0;
    double bleu_vs_complex = 0.0;
    long sentences_with_splits = 0;
    double avg_sentence_length = 0.0;  // words per output line
    double avg_token_length = 0.0;     // characters per output token

    std::string table(const std::string& label = "system") const;
    std::string key_values() const;
};

struct EvalOptions {
    bool char_level_ld = false;
};

// Lines are pre-tokenized sentences; all three corpora must align.
EvalReport evaluate(const std::vector<std::string>& system_out,
                    const std::vector<std::string>& complex_ref,
                    const std::vector<std::string>& simple_ref,
                    const EvalOptions& opts = {});

}  // namespace semsimp

#endif
