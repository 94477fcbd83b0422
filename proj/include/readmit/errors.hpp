#ifndef READMIT_ERRORS_HPP
#define READMIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace readmit {

// Thrown for bad command lines or unusable configuration. CLI exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an input artifact is missing, corrupt, the wrong version,
// or inconsistent with the configuration. CLI exit code 3.
struct ArtifactError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a computation produces non-finite values. CLI exit code 4.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace readmit

#endif
