#ifndef SEMSIMP_NGRAM_LM_HPP
#define SEMSIMP_NGRAM_LM_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

namespace semsimp {

// Add-k smoothed n-gram model with backoff to shorter histories when a
// history is unseen. Case folding is applied at train and query time.
// Immutable after training.
class NgramModel {
public:
    static constexpr const char* kBos = "<s>";
    static constexpr const char* kEos = "</s>";
    static constexpr const char* kUnk = "<unk>";

    static NgramModel train(const std::vector<std::vector<std::string>>& sentences,
                            int order, double k = 0.01);
    static NgramModel train_file(const std::string& path, int order, double k = 0.01);

    int order() const { return order_; }
    double add_k() const { return k_; }

    // P(word | history); history may be any length, only the last order-1
    // tokens matter. Falls back to shorter histories with zero counts and
    // ultimately to the smoothed unigram. Out-of-vocabulary tokens map to
    // <unk>. Never zero.
    double cond_prob(const std::vector<std::string>& history,
                     const std::string& word) const;

    // Sum of conditional log probabilities with boundary symbols: n-1 <s>
    // history pads and a final </s> event. Empty input scores the bare
    // boundary transition.
    double sentence_logprob(const std::vector<std::string>& tokens) const;

    // Predicted-event space: vocabulary (includes </s>, excludes <s>) + <unk>.
    std::vector<std::string> event_space() const;

    void save(const std::string& path) const;
    static NgramModel load(const std::string& path);

private:
    int order_ = 3;
    double k_ = 0.01;
    // counts_[i]: (i+1)-gram counts keyed by space-joined tokens, counted
    // only at predicted positions.
    std::vector<std::map<std::string, long>> counts_;
    // hists_[i]: i-token context counts, derived from counts_[i].
    std::vector<std::map<std::string, long>> hists_;
    std::set<std::string> vocab_;  // excludes <s>, includes </s>
    long unigram_total_ = 0;       // predicted positions (= sum of unigrams)

    void finalize();
    std::string fold(const std::string& token) const;
};

}  // namespace semsimp

#endif
