#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace esnfb {

// Precondition violations on scalar arguments (bad ranges, negative std, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operand dimensions do not agree.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A matrix whose spectral radius is zero cannot be rescaled.
class DegenerateMatrix : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A computation produced a non-finite value or an iteration failed to converge.
class NumericalFailure : public std::runtime_error {
public:
    static constexpr std::size_t kNoStep = static_cast<std::size_t>(-1);

    explicit NumericalFailure(const std::string& what, std::size_t step = kNoStep)
        : std::runtime_error(step == kNoStep ? what : what + " (step " + std::to_string(step) + ")"),
          step_(step) {}

    [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace esnfb
