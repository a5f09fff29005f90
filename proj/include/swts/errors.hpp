#pragma once

#include <stdexcept>
#include <string>

namespace swts {

/// A distribution or generator parameter lies outside its domain.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An experiment or policy configuration is inconsistent.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A caller violated an operation contract (e.g. a non-binary reward fed to Beta-SWTS).
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Reading or writing an external file failed.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace swts
