#pragma once

#include <stdexcept>
#include <string>

namespace cmtwist {

/// Malformed input or a violated precondition on an argument.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A theorem hypothesis that does not hold for the supplied data.
///
/// `hypothesis()` carries the hypothesis name verbatim so callers (and the
/// CLI exit-code logic) can tell "the theorem does not apply" apart from bad
/// input.
class HypothesisError : public std::runtime_error {
public:
    HypothesisError(std::string hypothesis, const std::string& detail)
        : std::runtime_error("hypothesis failed: " + hypothesis + ": " + detail),
          hypothesis_(std::move(hypothesis)) {}

    const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
    std::string hypothesis_;
};

}  // namespace cmtwist
