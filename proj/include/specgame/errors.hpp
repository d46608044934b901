#pragma once

#include <stdexcept>
#include <string>

namespace specgame {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class EmptyResultSet : public Error {
public:
    EmptyResultSet() : Error("result set is empty") {}
    explicit EmptyResultSet(const std::string& what) : Error(what) {}
};

class OutOfDomain : public Error {
public:
    explicit OutOfDomain(const std::string& what) : Error(what) {}
};

class InvalidRange : public Error {
public:
    explicit InvalidRange(const std::string& what) : Error(what) {}
};

class OracleDomainError : public Error {
public:
    explicit OracleDomainError(const std::string& what) : Error(what) {}
};

class InsufficientLevelSetPairs : public Error {
public:
    explicit InsufficientLevelSetPairs(const std::string& what) : Error(what) {}
};

class NotConverged : public Error {
public:
    explicit NotConverged(const std::string& what) : Error(what) {}
};

/// Raised by the game loop when a strategy, objective, or loss goes
/// non-finite mid-run; carries the offending round in the message.
class NonFiniteLoss : public Error {
public:
    explicit NonFiniteLoss(const std::string& what) : Error(what) {}
};

class MissingGroup : public Error {
public:
    explicit MissingGroup(const std::string& what) : Error(what) {}
};

class EmptyGroup : public Error {
public:
    explicit EmptyGroup(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace specgame
