#pragma once
// Parameter domains, tool schemas, candidate calls, and response constraints:
// the vocabulary every other module builds on. Domains describe the set of
// values a parameter may take; constraints narrow domains; candidate calls
// bind parameters to values or leave them Unknown.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sage/errors.hpp"

namespace sage {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Value: a concrete parameter value. Text, number, boolean, or list.
// Construction goes through the named factories; the raw variant would let
// a string literal silently convert to bool.
// ---------------------------------------------------------------------------

class Value {
public:
    enum class Kind { Text, Number, Boolean, List };
    using List = std::vector<Value>;

    static Value text(std::string s);
    static Value number(double n);
    static Value boolean(bool b);
    static Value list(List items);

    Kind kind() const;
    bool is_text() const { return kind() == Kind::Text; }
    bool is_number() const { return kind() == Kind::Number; }
    bool is_boolean() const { return kind() == Kind::Boolean; }
    bool is_list() const { return kind() == Kind::List; }

    const std::string& as_text() const;
    double as_number() const;
    bool as_boolean() const;
    const List& as_list() const;

    // Exact equality: text and boolean compare directly, numbers compare
    // tolerance-free. Ordering is lexicographic by (kind, payload) so values
    // can key ordered containers deterministically.
    bool operator==(const Value& other) const;
    bool operator<(const Value& other) const;

    json to_json() const;
    static Value from_json(const json& j); // throws ParseError on null/object

    std::string repr() const; // compact single-line form for messages

private:
    std::variant<std::string, double, bool, List> v_;
};

// ---------------------------------------------------------------------------
// Domains. Six shapes; ListOf boxes its element domain to close the cycle.
// Immutable after construction.
// ---------------------------------------------------------------------------

struct FiniteDomain {
    std::vector<Value> values; // duplicate-free; non-empty when parsed
};

struct EstimatedFiniteDomain {
    std::vector<Value> examples;  // known members, possibly empty
    std::uint64_t estimated_size; // >= examples.size(), >= 1
};

struct NumericRangeDomain {
    double lo;
    double hi;               // lo <= hi
    bool integer_valued;
};

struct BooleanDomain {};
struct TextDomain {};

struct ListOfDomain {
    std::shared_ptr<const struct ParamDomainBox> element;
};

class ParamDomain;
struct ParamDomainBox; // defined after ParamDomain

class ParamDomain {
public:
    ParamDomain() : v_(TextDomain{}) {}
    ParamDomain(FiniteDomain d) : v_(std::move(d)) {}
    ParamDomain(EstimatedFiniteDomain d) : v_(std::move(d)) {}
    ParamDomain(NumericRangeDomain d) : v_(d) {}
    ParamDomain(BooleanDomain d) : v_(d) {}
    ParamDomain(TextDomain d) : v_(d) {}
    ParamDomain(ListOfDomain d) : v_(std::move(d)) {}

    static ParamDomain finite(std::vector<Value> values);
    static ParamDomain estimated_finite(std::vector<Value> examples, std::uint64_t estimated_size);
    static ParamDomain numeric_range(double lo, double hi, bool integer_valued);
    static ParamDomain boolean();
    static ParamDomain text();
    static ParamDomain list_of(ParamDomain element);

    template <typename T> const T* get_if() const { return std::get_if<T>(&v_); }
    template <typename T> bool is() const { return std::holds_alternative<T>(v_); }

    bool operator==(const ParamDomain& other) const;

    json to_json() const;
    static ParamDomain from_json(const json& j, const std::string& path);

private:
    std::variant<FiniteDomain, EstimatedFiniteDomain, NumericRangeDomain,
                 BooleanDomain, TextDomain, ListOfDomain>
        v_;
};

struct ParamDomainBox {
    ParamDomain domain;
};

// Finite-or-infinite element count.
struct Cardinality {
    bool is_finite;
    std::uint64_t count; // meaningful only when is_finite

    static Cardinality finite(std::uint64_t n) { return {true, n}; }
    static Cardinality infinite() { return {false, 0}; }
    bool operator==(const Cardinality&) const = default;
};

// Number of values a domain admits. Point intervals (lo == hi) count as 1
// whether or not they are integer-valued; non-degenerate real ranges, Text,
// and ListOf are infinite.
Cardinality domain_size(const ParamDomain& domain);

// True when the value is a member of the domain. EstimatedFinite accepts any
// value of a plausible type (membership against an estimate is unfalsifiable).
bool value_in_domain(const Value& v, const ParamDomain& domain);

// ---------------------------------------------------------------------------
// Tool schemas.
// ---------------------------------------------------------------------------

struct ParamSpec {
    std::string name;
    ParamDomain domain;
    bool required = true;
    bool data_dependent = false;     // domain recomputed from environment state
    std::optional<Value> default_value; // present only for optional params
};

struct ToolSchema {
    std::string name;
    std::vector<ParamSpec> params; // order preserved from the toolkit file

    const ParamSpec* find_param(const std::string& param_name) const;
};

struct Toolkit {
    std::vector<ToolSchema> tools;

    const ToolSchema* find_tool(const std::string& tool_name) const;
    bool operator==(const Toolkit& other) const;
};

bool operator==(const ParamSpec& a, const ParamSpec& b);
bool operator==(const ToolSchema& a, const ToolSchema& b);

// Parses a toolkit document (JSON array of tools). Throws ParseError with a
// path to the offending element. parse -> serialize -> parse is the identity,
// and serializing a parsed document reproduces it byte for byte.
Toolkit parse_toolkit(const std::string& text);
std::string serialize_toolkit(const Toolkit& toolkit);

// ---------------------------------------------------------------------------
// Candidate calls. An assignment is either a concrete Value or Unknown
// (nullopt). Serialized form writes Unknown as the reserved string "<UNK>".
// ---------------------------------------------------------------------------

struct CandidateCall {
    std::string id;   // unique within a candidate set; generation order sorts
    std::string tool;
    std::map<std::string, std::optional<Value>> arguments;

    bool specified(const std::string& param) const;
    bool fully_specified() const; // no Unknown among present arguments

    bool operator==(const CandidateCall& other) const;

    json to_json() const;
    static CandidateCall from_json(const json& j, const std::string& path);
};

// ok iff the tool exists, every required param is present (possibly Unknown),
// every argument names a schema param, and every specified value lies in its
// declared (static) domain.
struct ValidationIssue {
    std::string param;
    std::string message;
};
std::optional<ValidationIssue> validate_call(const Toolkit& toolkit, const CandidateCall& call);

// ---------------------------------------------------------------------------
// Constraints: the narrowing information a response carries about one aspect.
// ---------------------------------------------------------------------------

struct EqualTo { Value value; };
struct OneOf { std::vector<Value> values; };   // non-empty
struct NotIn { std::vector<Value> values; };   // non-empty
struct RangeConstraint { double lo; double hi; }; // lo <= hi, numeric domains only
struct NoInformation {};

class Constraint {
public:
    Constraint() : v_(NoInformation{}) {}
    Constraint(EqualTo c) : v_(std::move(c)) {}
    Constraint(OneOf c) : v_(std::move(c)) {}
    Constraint(NotIn c) : v_(std::move(c)) {}
    Constraint(RangeConstraint c) : v_(c) {}
    Constraint(NoInformation c) : v_(c) {}

    static Constraint equal_to(Value v) { return Constraint(EqualTo{std::move(v)}); }
    static Constraint one_of(std::vector<Value> vs);
    static Constraint not_in(std::vector<Value> vs);
    static Constraint range(double lo, double hi);
    static Constraint no_information() { return Constraint(NoInformation{}); }

    template <typename T> const T* get_if() const { return std::get_if<T>(&v_); }
    bool is_no_information() const { return std::holds_alternative<NoInformation>(v_); }

    json to_json() const;
    static Constraint from_json(const json& j, const std::string& path);

private:
    std::variant<EqualTo, OneOf, NotIn, RangeConstraint, NoInformation> v_;
};

// True when a concrete value satisfies the constraint. A Range constraint is
// never satisfied by a non-numeric value.
bool satisfies(const Value& v, const Constraint& c);

// Narrows a domain by a constraint. nullopt means the intersection is empty
// (an elimination outcome for the caller, never silent). Structurally
// incompatible pairs, e.g. Range over Text, intersect to empty rather than
// throwing. Idempotent, and never grows a finite domain.
std::optional<ParamDomain> intersect_domain(const ParamDomain& domain, const Constraint& c);

// If the domain pins exactly one knowable value, returns it. Finite singleton
// and one-example estimated-finite with estimate 1 qualify.
std::optional<Value> singleton_value(const ParamDomain& domain);

} // namespace sage
