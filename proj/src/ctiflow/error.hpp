#ifndef CTIFLOW_ERROR_HPP
#define CTIFLOW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ctiflow {

enum class Errc {
    io,
    parse,
    invalid,
    not_found,
    http,
};

// Fatal conditions only. Expected rejects (bad feed lines, skipped
// indicators) travel as data, not exceptions.
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace ctiflow

#endif
