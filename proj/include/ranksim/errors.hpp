#pragma once

#include <stdexcept>
#include <string>

namespace ranksim {

// Error kinds map 1:1 onto CLI exit codes (see tools/ranksim.cpp).
enum class ErrorKind { Config, Data, Transport };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

class TransportError : public Error {
public:
    TransportError(const std::string& what, int attempts)
        : Error(ErrorKind::Transport, what), attempts_(attempts) {}
    int attempts() const { return attempts_; }

private:
    int attempts_;
};

// Replay cache miss is distinct from a live transport failure: the fixture
// store simply has no entry for the requested query digest.
class ReplayMissError : public DataError {
public:
    explicit ReplayMissError(const std::string& what) : DataError(what) {}
};

} // namespace ranksim
