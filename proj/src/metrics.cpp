#include "semsimp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "semsimp/error.hpp"
#include "semsimp/text.hpp"

namespace semsimp {

namespace {

template <typename Seq>
int edit_distance(const Seq& a, const Seq& b) {
    std::size_t n = a.size(), m = b.size();
    std::vector<int> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= m; ++j) {
            int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

}  // namespace

int levenshtein(const std::vector<std::string>& a,
                const std::vector<std::string>& b) {
    return edit_distance(a, b);
}

int levenshtein_chars(const std::string& a, const std::string& b) {
    return edit_distance(a, b);
}

double bleu(const std::vector<std::vector<std::string>>& candidates,
            const std::vector<std::vector<std::string>>& references) {
    if (candidates.empty()) throw DataError("bleu: empty corpus");
    if (candidates.size() != references.size())
        throw DataError(msg("bleu: ", candidates.size(), " candidates vs ",
                            references.size(), " references"));
    constexpr int kMaxOrder = 4;
    long match[kMaxOrder] = {0, 0, 0, 0};
    long total[kMaxOrder] = {0, 0, 0, 0};
    long cand_len = 0, ref_len = 0;
    for (std::size_t s = 0; s < candidates.size(); ++s) {
        const auto& cand = candidates[s];
        const auto& ref = references[s];
        cand_len += static_cast<long>(cand.size());
        ref_len += static_cast<long>(ref.size());
        for (int n = 1; n <= kMaxOrder; ++n) {
            if (static_cast<int>(cand.size()) < n) continue;
            std::map<std::string, long> ref_grams;
            for (std::size_t i = 0; i + n <= ref.size(); ++i) {
                std::string gram;
                for (int k = 0; k < n; ++k) gram += ref[i + k] + "\x1f";
                ++ref_grams[gram];
            }
            std::map<std::string, long> cand_grams;
            for (std::size_t i = 0; i + n <= cand.size(); ++i) {
                std::string gram;
                for (int k = 0; k < n; ++k) gram += cand[i + k] + "\x1f";
                ++cand_grams[gram];
            }
            for (const auto& [gram, c] : cand_grams) {
                total[n - 1] += c;
                auto it = ref_grams.find(gram);
                if (it != ref_grams.end()) match[n - 1] += std::min(c, it->second);
            }
        }
    }
    double log_precision = 0.0;
    for (int n = 0; n < kMaxOrder; ++n) {
        if (match[n] == 0 || total[n] == 0) return 0.0;
        log_precision += std::log(static_cast<double>(match[n]) /
                                  static_cast<double>(total[n]));
    }
    double bp = 1.0;
    if (cand_len < ref_len && cand_len > 0)
        bp = std::exp(1.0 - static_cast<double>(ref_len) /
                                static_cast<double>(cand_len));
    return 100.0 * bp * std::exp(log_precision / kMaxOrder);
}

EvalReport evaluate(const std::vector<std::string>& system_out,
                    const std::vector<std::string>& complex_ref,
                    const std::vector<std::string>& simple_ref,
                    const EvalOptions& opts) {
    if (system_out.size() != complex_ref.size() ||
        system_out.size() != simple_ref.size())
        throw DataError(msg("evaluate: misaligned corpora (system ",
                            system_out.size(), ", complex ", complex_ref.size(),
                            ", simple ", simple_ref.size(), ")"));
    if (system_out.empty()) throw DataError("evaluate: empty corpus");

    EvalReport r;
    r.corpus_size = system_out.size();
    std::vector<std::vector<std::string>> sys_toks, cx_toks, sp_toks;
    for (std::size_t i = 0; i < system_out.size(); ++i) {
        sys_toks.push_back(split_ws(system_out[i]));
        cx_toks.push_back(split_ws(complex_ref[i]));
        sp_toks.push_back(split_ws(simple_ref[i]));
    }

    double sum_ld_cs = 0.0, sum_ld_ss = 0.0;
    long token_count = 0, char_count = 0;
    long word_total = 0;
    for (std::size_t i = 0; i < sys_toks.size(); ++i) {
        if (opts.char_level_ld) {
            sum_ld_cs += levenshtein_chars(complex_ref[i], system_out[i]);
            sum_ld_ss += levenshtein_chars(system_out[i], simple_ref[i]);
        } else {
            sum_ld_cs += levenshtein(cx_toks[i], sys_toks[i]);
            sum_ld_ss += levenshtein(sys_toks[i], sp_toks[i]);
        }
        if (sys_toks[i] == cx_toks[i]) ++r.noedit_complex_to_system;
        if (sys_toks[i] == sp_toks[i]) ++r.noedit_system_to_simple;
        long terminators = 0;
        for (const auto& t : sys_toks[i]) {
            ++token_count;
            char_count += static_cast<long>(t.size());
            if (is_sentence_terminator(t)) ++terminators;
        }
        if (terminators >= 2) ++r.sentences_with_splits;
        word_total += static_cast<long>(sys_toks[i].size());
    }
    double n = static_cast<double>(r.corpus_size);
    r.ld_complex_to_system = sum_ld_cs / n;
    r.ld_system_to_simple = sum_ld_ss / n;
    r.noedit_complex_pct = 100.0 * static_cast<double>(r.noedit_complex_to_system) / n;
    r.noedit_simple_pct = 100.0 * static_cast<double>(r.noedit_system_to_simple) / n;
    r.bleu_vs_simple = bleu(sys_toks, sp_toks);
    r.bleu_vs_complex = bleu(sys_toks, cx_toks);
    r.avg_sentence_length = static_cast<double>(word_total) / n;
    r.avg_token_length =
        token_count == 0 ? 0.0
                         : static_cast<double>(char_count) /
                               static_cast<double>(token_count);
    return r;
}

std::string EvalReport::table(const std::string& label) const {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "system                  | LD c->s | NoEd | LD s->t | NoEd | "
          "BLEU cx | BLEU sp | splits | avg sent | avg tok\n";
    os << std::left << std::setw(23) << label << std::right << " | "
       << std::setw(7) << ld_complex_to_system << " | " << std::setw(4)
       << noedit_complex_to_system << " | " << std::setw(7)
       << ld_system_to_simple << " | " << std::setw(4) << noedit_system_to_simple
       << " | " << std::setw(7) << bleu_vs_complex << " | " << std::setw(7)
       << bleu_vs_simple << " | " << std::setw(6) << sentences_with_splits
       << " | " << std::setw(8) << avg_sentence_length << " | " << std::setw(7)
       << avg_token_length << "\n";
    return os.str();
}

std::string EvalReport::key_values() const {
    std::ostringstream os;
    os << "corpus_size=" << corpus_size << "\n";
    os << "ld_complex_to_system=" << format_prob(ld_complex_to_system) << "\n";
    os << "noedit_complex_to_system=" << noedit_complex_to_system << "\n";
    os << "noedit_complex_pct=" << format_prob(noedit_complex_pct) << "\n";
    os << "ld_system_to_simple=" << format_prob(ld_system_to_simple) << "\n";
    os << "noedit_system_to_simple=" << noedit_system_to_simple << "\n";
    os << "noedit_simple_pct=" << format_prob(noedit_simple_pct) << "\n";
    os << "bleu_vs_complex=" << format_prob(bleu_vs_complex) << "\n";
    os << "bleu_vs_simple=" << format_prob(bleu_vs_simple) << "\n";
    os << "sentences_with_splits=" << sentences_with_splits << "\n";
    os << "avg_sentence_length=" << format_prob(avg_sentence_length) << "\n";
    os << "avg_token_length=" << format_prob(avg_token_length) << "\n";
    return os.str();
}

}  // namespace semsimp
