#ifndef SEMSIMP_STOPWORDS_HPP
#define SEMSIMP_STOPWORDS_HPP

#include <set>
#include <string>

namespace semsimp {

// The standard 127-word English stopword list. A copy ships in
// data/stopwords.txt; load_stopwords reads a file in the same one-word-per-line
// format for custom lists.
const std::set<std::string>& default_stopwords();
std::set<std::string> load_stopwords(const std::string& path);

}  // namespace semsimp

#endif
