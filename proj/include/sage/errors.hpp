#pragma once
// Error types shared across the engine. Domain-level failures inside
// environments are reported as ExecutionResult values, never as exceptions;
// the types here cover misuse, malformed input, and belief-state collapse.

#include <stdexcept>
#include <string>

namespace sage {

// A caller violated a documented precondition (wrong argument shape,
// incompatible constraint/domain pair, misaligned inputs).
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Structured text (toolkit, scenario, call, record) failed to parse or
// validate. The message carries enough path context to locate the offender.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// normalize() was asked to normalize a belief whose weights are all zero.
class DegenerateBelief : public std::runtime_error {
public:
    explicit DegenerateBelief(const std::string& what) : std::runtime_error(what) {}
};

// A response eliminated every live candidate. Surfaced to the agent loop,
// which treats it as an error-recovery trigger rather than a crash.
class ContradictoryResponse : public std::runtime_error {
public:
    explicit ContradictoryResponse(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sage
