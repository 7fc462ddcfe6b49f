#pragma once
// Simulated tool environments. Five domains share one interface: execute a
// fully specified call against mutable state, expose the current domain of
// every parameter (data-dependent ones recomputed from state), and advertise
// which tools change which domains. Domain-level failures come back as Error
// results carrying one of six kinds; corruption heuristics produce calls that
// fail with a declared kind.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sage/belief.hpp"
#include "sage/schema.hpp"

namespace sage::envs {

enum class ErrorKind { OutOfRange, InvalidEnum, MissingEntity, Duplicate, Financial, Path };

std::string to_string(ErrorKind kind);
ErrorKind error_kind_from_string(const std::string& s); // throws ParseError

struct ExecutionResult {
    bool ok = false;
    std::string detail;   // success: human-readable outcome
    json payload;         // success: structured outcome for tests, may be null
    ErrorKind kind = ErrorKind::OutOfRange; // error only
    std::string message;  // error only
    std::string param;    // error: offending parameter when identifiable

    static ExecutionResult success(std::string detail, json payload = nullptr);
    static ExecutionResult failure(ErrorKind kind, std::string message, std::string param = "");

    json to_json() const;
};

// Which tools (triggers) change the current domains of which params.
// Rules with no triggers describe domains seeded purely from fixture state.
struct DomainUpdateRule {
    std::vector<std::string> triggers;
    std::vector<belief::AspectId> affected;
    std::string note;
};

class Environment {
public:
    virtual ~Environment() = default;

    const std::string& name() const { return name_; }
    const Toolkit& toolkit() const { return toolkit_; }
    const std::vector<DomainUpdateRule>& update_rules() const { return rules_; }

    // Executes a call. Unspecified required params, unknown tools, and every
    // domain-level failure return Error results; nothing here throws for
    // value-shaped input.
    ExecutionResult execute(const CandidateCall& call);

    // Current domain of (tool, param): the static schema domain unless the
    // environment recomputes it from state. Throws UsageError for unknown
    // tool/param names.
    ParamDomain current_domain(const std::string& tool, const std::string& param) const;

    // Deep copy, state included.
    virtual std::unique_ptr<Environment> clone() const = 0;

    // Debugging snapshot of the mutable state.
    virtual json state_snapshot() const = 0;

protected:
    Environment(std::string name, Toolkit toolkit, std::vector<DomainUpdateRule> rules);

    // State-derived domain for a data-dependent slot, nullopt for static ones.
    virtual std::optional<ParamDomain> dynamic_domain(const std::string& tool,
                                                      const std::string& param) const = 0;

    virtual ExecutionResult dispatch(const CandidateCall& call) = 0;

    // --- helpers for the concrete environments ---

    // Specified argument value, or nullptr when absent/Unknown.
    static const Value* arg(const CandidateCall& call, const std::string& name);

    // Specified argument value, falling back to the schema default.
    const Value* arg_or_default(const CandidateCall& call, const std::string& name) const;

    // Checks every specified argument of the call against its current domain,
    // in schema order, skipping the named params. Kind per domain shape:
    // numeric ranges report out-of-range, entity registries (data-dependent
    // finite sets) report missing-entity, everything else invalid-enum.
    std::optional<ExecutionResult> check_domains(const CandidateCall& call,
                                                 const std::set<std::string>& skip = {}) const;

private:
    std::string name_;
    Toolkit toolkit_;
    std::vector<DomainUpdateRule> rules_;
};

// The five domain names, in canonical order.
const std::vector<std::string>& environment_names();

// Canonical toolkit for a domain. Throws UsageError for unknown names.
Toolkit builtin_toolkit(const std::string& domain);

// Default fixture state for a domain, matching what make_environment expects.
json default_fixture(const std::string& domain);

// Builds an environment from a fixture document. Throws ParseError on a
// malformed fixture, UsageError on an unknown domain name.
std::unique_ptr<Environment> make_environment(const std::string& domain, const json& fixture);

// Factories used by make_environment; each validates its fixture.
std::unique_ptr<Environment> make_filesystem_env(const json& fixture);
std::unique_ptr<Environment> make_document_env(const json& fixture);
std::unique_ptr<Environment> make_vehicle_env(const json& fixture);
std::unique_ptr<Environment> make_travel_env(const json& fixture);
std::unique_ptr<Environment> make_trading_env(const json& fixture);

// A call rewritten so that executing it fails with a declared error kind.
struct CorruptedCall {
    CandidateCall call;
    ErrorKind expected_kind;
    std::string heuristic; // corruption family that produced it
    std::string param;     // the parameter that was corrupted
};

// Applies one of the domain's corruption heuristics to a call that succeeds
// on a fresh copy of the environment. Deterministic per seed. Returns nullopt
// when no heuristic applies to this tool (NotCorruptible).
std::optional<CorruptedCall> corrupt_call(const CandidateCall& call, const Environment& env,
                                          std::uint64_t seed);

} // namespace sage::envs
