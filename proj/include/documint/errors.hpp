#pragma once

#include <stdexcept>
#include <string>

namespace documint {

// Root of every error the library throws on purpose. Catching this at the
// CLI boundary maps cleanly to exit code 1 (domain error).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- metric errors -------------------------------------------------------

class EmptyTextError : public Error {
public:
    explicit EmptyTextError(const std::string& what = "text is empty or whitespace-only")
        : Error(what) {}
};

class DimensionMismatchError : public Error {
public:
    explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

class ZeroVectorError : public Error {
public:
    explicit ZeroVectorError(const std::string& what = "embedding vector is all-zero")
        : Error(what) {}
};

class NonPositiveBaseError : public Error {
public:
    explicit NonPositiveBaseError(const std::string& what = "baseline value must be > 0")
        : Error(what) {}
};

class EmptyRunError : public Error {
public:
    explicit EmptyRunError(const std::string& what = "cannot aggregate an empty run")
        : Error(what) {}
};

// --- remote provider errors ----------------------------------------------

class TransportError : public Error {
public:
    explicit TransportError(const std::string& what) : Error(what) {}
};

class ContractViolationError : public Error {
public:
    explicit ContractViolationError(const std::string& what) : Error(what) {}
};

// --- benchmark errors -----------------------------------------------------

class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};

class TaskSetMismatchError : public Error {
public:
    explicit TaskSetMismatchError(const std::string& what) : Error(what) {}
};

class MissingGenerationError : public Error {
public:
    explicit MissingGenerationError(const std::string& what) : Error(what) {}
};

// --- filesystem errors ----------------------------------------------------

class WalkError : public Error {
public:
    explicit WalkError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace documint
