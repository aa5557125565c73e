#pragma once

#include <stdexcept>
#include <string>

namespace ringchord {

/// Numerical failure (eigensolver non-convergence, root finder stuck, ...).
/// Distinct from std::invalid_argument so callers can map the two classes
/// to different exit codes.
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ringchord
