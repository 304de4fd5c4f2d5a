#ifndef FLAGROCK_ERRORS_HPP
#define FLAGROCK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flagrock {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameters outside the admissible range (p >= 1, q >= 1, 1 <= p1 <= p, ...).
struct InvalidParameterError : Error {
    explicit InvalidParameterError(const std::string& msg) : Error(msg) {}
};

// A coadjoint form that the requested operation cannot handle
// (nonpositive weight, support on horizontal directions, ...).
struct InvalidFormError : Error {
    explicit InvalidFormError(const std::string& msg) : Error(msg) {}
};

// The block A of B_l fails to have maximal rank.
struct HypothesisFailedError : Error {
    explicit HypothesisFailedError(const std::string& msg) : Error(msg) {}
};

// The ladder recursion annihilated its vector; the chosen form is
// degenerate for this instance and a different weight vector is needed.
struct ZeroCollapseError : Error {
    explicit ZeroCollapseError(const std::string& msg) : Error(msg) {}
};

// A cross-checked invariant failed.  Carries the name of the invariant so
// the command line can surface it.  Must not occur on a healthy build.
struct InternalConsistencyError : Error {
    std::string invariant;
    InternalConsistencyError(std::string inv, const std::string& msg)
        : Error(inv + ": " + msg), invariant(std::move(inv)) {}
};

}  // namespace flagrock

#endif
