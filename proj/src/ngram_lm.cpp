#include "semsimp/ngram_lm.hpp"

#include <cmath>
#include <sstream>

#include "semsimp/error.hpp"
#include "semsimp/text.hpp"

namespace semsimp {

namespace {

std::string join_gram(const std::vector<std::string>& toks, std::size_t begin,
                      std::size_t len) {
    std::string out;
    for (std::size_t i = 0; i < len; ++i) {
        if (i) out += ' ';
        out += toks[begin + i];
    }
    return out;
}

}  // namespace

std::string NgramModel::fold(const std::string& token) const {
    return lowercase(token);
}

NgramModel NgramModel::train(const std::vector<std::vector<std::string>>& sentences,
                             int order, double k) {
    if (order < 1 || order > 5)
        throw DataError(msg("LM order must be in 1..5, got ", order));
    bool any = false;
    for (const auto& s : sentences)
        if (!s.empty()) any = true;
    if (!any) throw DataError("LM training corpus is empty");

    NgramModel m;
    m.order_ = order;
    m.k_ = k;
    m.counts_.assign(order, {});
    for (const auto& sent : sentences) {
        if (sent.empty()) continue;
        std::vector<std::string> padded;
        padded.reserve(sent.size() + order);
        for (int i = 0; i < order - 1; ++i) padded.push_back(kBos);
        for (const auto& t : sent) padded.push_back(m.fold(t));
        padded.push_back(kEos);
        // Grams are counted only where they end at a predicted position, so
        // every history count equals the sum of its continuations and the
        // smoothed conditionals normalize exactly.
        for (std::size_t i = static_cast<std::size_t>(order - 1);
             i < padded.size(); ++i)
            for (int n = 1; n <= order; ++n)
                ++m.counts_[n - 1][join_gram(padded, i - n + 1, n)];
    }
    m.finalize();
    return m;
}

NgramModel NgramModel::train_file(const std::string& path, int order, double k) {
    std::vector<std::vector<std::string>> sentences;
    for (const auto& line : read_lines(path)) sentences.push_back(split_ws(line));
    return train(sentences, order, k);
}

void NgramModel::finalize() {
    vocab_.clear();
    unigram_total_ = 0;
    for (const auto& [gram, count] : counts_[0]) {
        if (gram == kBos) continue;
        vocab_.insert(gram);
        unigram_total_ += count;
    }
    // History counts: sum of continuations per (n-1)-token context.
    hists_.assign(order_, {});
    for (int n = 2; n <= order_; ++n)
        for (const auto& [gram, count] : counts_[n - 1]) {
            auto cut = gram.rfind(' ');
            hists_[n - 1][gram.substr(0, cut)] += count;
        }
}

std::vector<std::string> NgramModel::event_space() const {
    std::vector<std::string> out(vocab_.begin(), vocab_.end());
    out.push_back(kUnk);
    return out;
}

double NgramModel::cond_prob(const std::vector<std::string>& history,
                             const std::string& word) const {
    std::string w = fold(word);
    if (w != kEos && !vocab_.count(w)) w = kUnk;
    std::vector<std::string> hist;
    std::size_t max_hist = static_cast<std::size_t>(order_ - 1);
    std::size_t start = history.size() > max_hist ? history.size() - max_hist : 0;
    for (std::size_t i = start; i < history.size(); ++i) {
        std::string h = fold(history[i]);
        if (h != kBos && h != kEos && !vocab_.count(h)) h = kUnk;
        hist.push_back(h);
    }
    // |event space| = vocab (with </s>) + <unk>
    double space = static_cast<double>(vocab_.size()) + 1.0;
    for (std::size_t drop = 0; drop < hist.size(); ++drop) {
        std::size_t len = hist.size() - drop;
        std::string h = join_gram(hist, drop, len);
        auto it = hists_[len].find(h);
        long ch = it == hists_[len].end() ? 0 : it->second;
        if (ch == 0) continue;  // unseen history: back off
        auto itw = counts_[len].find(h + " " + w);
        long chw = itw == counts_[len].end() ? 0 : itw->second;
        return (chw + k_) / (ch + k_ * space);
    }
    auto itw = counts_[0].find(w);
    long cw = itw == counts_[0].end() ? 0 : itw->second;
    return (cw + k_) / (unigram_total_ + k_ * space);
}

double NgramModel::sentence_logprob(const std::vector<std::string>& tokens) const {
    std::vector<std::string> padded;
    for (int i = 0; i < order_ - 1; ++i) padded.push_back(kBos);
    for (const auto& t : tokens) padded.push_back(fold(t));
    padded.push_back(kEos);
    double lp = 0.0;
    std::size_t first = static_cast<std::size_t>(order_ - 1);
    for (std::size_t i = first; i < padded.size(); ++i) {
        std::vector<std::string> hist(padded.begin() + (i - first),
                                      padded.begin() + i);
        lp += std::log(cond_prob(hist, padded[i]));
    }
    return lp;
}

void NgramModel::save(const std::string& path) const {
    std::ostringstream os;
    os << "#addk=" << format_prob(k_) << "\n";
    for (int n = 1; n <= order_; ++n) {
        os << "ORDER " << n << "\n";
        for (const auto& [gram, count] : counts_[n - 1])
            os << gram << "\t" << count << "\n";
    }
    write_file(path, os.str());
}

NgramModel NgramModel::load(const std::string& path) {
    NgramModel m;
    m.counts_.clear();
    int current = 0;
    std::size_t line_no = 0;
    for (const auto& line : read_lines(path)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.rfind("#addk=", 0) == 0) {
            m.k_ = std::stod(line.substr(6));
            continue;
        }
        if (line.rfind("ORDER ", 0) == 0) {
            current = std::stoi(line.substr(6));
            if (current != static_cast<int>(m.counts_.size()) + 1)
                throw DataError(msg(path, ":", line_no,
                                    ": ORDER sections must be consecutive"));
            m.counts_.emplace_back();
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos || current == 0)
            throw DataError(msg(path, ":", line_no, ": malformed LM line"));
        m.counts_[current - 1][line.substr(0, tab)] =
            std::stol(line.substr(tab + 1));
    }
    if (m.counts_.empty()) throw DataError(msg(path, ": no ORDER sections"));
    m.order_ = static_cast<int>(m.counts_.size());
    m.finalize();
    return m;
}

}  // namespace semsimp
