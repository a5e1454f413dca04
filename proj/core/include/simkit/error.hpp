#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace simkit {

/// Base class of everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Schema-definition-time violations (empty field names, key collisions, ...).
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A value could not be serialized; the message names the offending field.
class EncodeError : public Error {
public:
    using Error::Error;
};

/// Malformed container frame: bad magic, truncation, or a field length
/// overrunning the payload. Carries the byte offset of the defect.
class FrameError : public Error {
public:
    FrameError(const std::string& message, std::size_t offset)
        : Error(message + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Configuration file / configuration set violations.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Socket-level failures of the live conference transport.
class TransportError : public Error {
public:
    using Error::Error;
};

/// A send that violates the transport contract (e.g. oversized frame).
class SendError : public Error {
public:
    using Error::Error;
};

/// Simulation assembly problems detected before the run starts.
class SetupError : public Error {
public:
    using Error::Error;
};

/// No supercomponent answered within the retry budget; the component
/// refuses to start.
class DiscoveryTimeout : public Error {
public:
    using Error::Error;
};

} // namespace simkit
