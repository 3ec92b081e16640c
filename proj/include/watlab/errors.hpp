#pragma once

#include <stdexcept>
#include <string>

namespace watlab {

/// Malformed input: bad dimensions, out-of-range parameters, unresolved grids.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A hypothesis of the decay theorem does not hold for the supplied data
/// (f^(0) = 0, nu outside -S, sup norm above one, spectrum meeting S).
class HypothesisViolation : public std::domain_error {
public:
    HypothesisViolation(std::string hypothesis, const std::string& what)
        : std::domain_error(what), hypothesis_(std::move(hypothesis)) {}

    const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
    std::string hypothesis_;
};

}  // namespace watlab
