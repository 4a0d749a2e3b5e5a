#pragma once

#include <stdexcept>
#include <string>

namespace twinbeam {

// Input outside the physical or numerical domain of a function.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller broke a precondition (wrong grid, double weighting, ...).
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// Gaussian model cannot describe the configuration (r <= 1).
struct ModelInapplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace twinbeam
