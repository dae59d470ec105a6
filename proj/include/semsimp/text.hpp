#ifndef SEMSIMP_TEXT_HPP
#define SEMSIMP_TEXT_HPP

#include <string>
#include <vector>

namespace semsimp {

std::vector<std::string> split_ws(const std::string& line);
std::string join(const std::vector<std::string>& tokens, const std::string& sep = " ");
std::vector<std::string> split_on(const std::string& s, char sep);

std::string lowercase(const std::string& s);
std::vector<std::string> lowercase(const std::vector<std::string>& tokens);

// Reads a whole file as lines (without trailing newlines). Throws DataError
// if the file cannot be opened.
std::vector<std::string> read_lines(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Formats a double with 9 significant digits ("%.9g"), the fixed width used
// by the probability model files.
std::string format_prob(double value);

bool is_sentence_terminator(const std::string& token);

}  // namespace semsimp

#endif
