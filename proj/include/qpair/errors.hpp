#pragma once

#include <stdexcept>
#include <string>

namespace qpair {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid physical configuration (rates, dipoles, initial state).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The two-photon state does not factorize into photon pair x source state.
/// Signals that the detector placement conditions are violated.
class FactorizationError : public Error {
public:
    using Error::Error;
};

/// The initial state has no |22> component; a two-photon event is impossible.
class ZeroAmplitudeError : public Error {
public:
    using Error::Error;
};

/// Estimated quadrature truncation error exceeds the requested tolerance.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// A rejection-sampling proposal exceeded the stated envelope bound.
/// Indicates a bug in the bound; sampling must abort, never clip.
class EnvelopeViolation : public Error {
public:
    using Error::Error;
};

/// A state that must be unit-normalized is not.
class NormalizationError : public Error {
public:
    using Error::Error;
};

}  // namespace qpair
