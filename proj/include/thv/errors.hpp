#ifndef THV_ERRORS_HPP
#define THV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thv {

// Exit-code contract: usage/parse -> 2, precondition -> 3, verification -> 1.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace thv

#endif
