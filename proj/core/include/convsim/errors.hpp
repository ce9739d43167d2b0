#pragma once

#include <stdexcept>
#include <string>

namespace convsim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument or value passed to an operation.
class InputError : public Error {
public:
    using Error::Error;
};

/// A document could not be parsed; keeps the offending text for diagnosis.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& message, std::string raw = {})
        : Error(message), raw_(std::move(raw)) {}

    const std::string& raw_text() const { return raw_; }

private:
    std::string raw_;
};

/// A document parsed but does not match the expected schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Contradictory or unknown constraints given to the randomizer.
class ConstraintError : public Error {
public:
    using Error::Error;
};

/// Transport, credential, or backend failure talking to a provider.
class ProviderError : public Error {
public:
    using Error::Error;
};

}  // namespace convsim
