#ifndef SEATARR_ERRORS_HPP
#define SEATARR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace seatarr {

/// Solver was asked to run on an instance that violates its preconditions
/// (wrong seat-graph class, wrong preference class, ...).
class DispatchError : public std::invalid_argument {
public:
    explicit DispatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured resource cap would be exceeded: oracle enumeration too
/// large, Monte Carlo trial budget too large, or too many seat partitions.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace seatarr

#endif
