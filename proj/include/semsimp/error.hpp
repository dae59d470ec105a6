#ifndef SEMSIMP_ERROR_HPP
#define SEMSIMP_ERROR_HPP

#include <sstream>
#include <stdexcept>
#include <string>

namespace semsimp {

// Data/format errors raised by parsers, trainers and model loaders.
// The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by enumerate_partitions when the event count exceeds the cap;
// callers fall back to the no-split candidate.
class TooManyEvents : public std::runtime_error {
public:
    TooManyEvents(std::size_t events, std::size_t max_events)
        : std::runtime_error("sentence has " + std::to_string(events) +
                             " events, more than the partition cap " +
                             std::to_string(max_events) +
                             "; fall back to no-split") {}
};

namespace detail {
inline void msg_append(std::ostringstream&) {}
template <typename T, typename... Rest>
void msg_append(std::ostringstream& os, const T& v, const Rest&... rest) {
    os << v;
    msg_append(os, rest...);
}
}  // namespace detail

template <typename... Args>
std::string msg(const Args&... args) {
    std::ostringstream os;
    detail::msg_append(os, args...);
    return os.str();
}

}  // namespace semsimp

#endif
