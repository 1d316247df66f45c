#pragma once

#include <stdexcept>

namespace ambinv {

// Bad configuration or violated precondition; maps to exit status 1 in the CLI.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure (divergent iteration, non-finite value, ill-posed policy);
// maps to exit status 2 in the CLI.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ambinv
