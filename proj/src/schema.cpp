// Implementation of the schema vocabulary: values, domains, toolkits,
// candidate calls, constraints, and the domain-narrowing algebra.

#include "sage/schema.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace sage {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kUnknownMarker = "<UNK>";

// Materialization cap for NotIn over integer ranges; beyond this we only trim
// endpoints (interior holes in a large range are not representable).
constexpr std::uint64_t kMaterializeCap = 4096;

bool is_integral(double v) {
    return std::isfinite(v) && std::floor(v) == v;
}

} // namespace

// ---------------------------------------------------------------------------
// Value
// ---------------------------------------------------------------------------

Value Value::text(std::string s) {
    Value v;
    v.v_ = std::move(s);
    return v;
}

Value Value::number(double n) {
    Value v;
    v.v_ = n;
    return v;
}

Value Value::boolean(bool b) {
    Value v;
    v.v_ = b;
    return v;
}

Value Value::list(List items) {
    Value v;
    v.v_ = std::move(items);
    return v;
}

Value::Kind Value::kind() const {
    switch (v_.index()) {
        case 0: return Kind::Text;
        case 1: return Kind::Number;
        case 2: return Kind::Boolean;
        default: return Kind::List;
    }
}

const std::string& Value::as_text() const {
    if (const auto* s = std::get_if<std::string>(&v_)) return *s;
    throw UsageError("value is not text");
}

double Value::as_number() const {
    if (const auto* n = std::get_if<double>(&v_)) return *n;
    throw UsageError("value is not a number");
}

bool Value::as_boolean() const {
    if (const auto* b = std::get_if<bool>(&v_)) return *b;
    throw UsageError("value is not a boolean");
}

const Value::List& Value::as_list() const {
    if (const auto* l = std::get_if<List>(&v_)) return *l;
    throw UsageError("value is not a list");
}

bool Value::operator==(const Value& other) const {
    return v_ == other.v_;
}

bool Value::operator<(const Value& other) const {
    if (v_.index() != other.v_.index()) return v_.index() < other.v_.index();
    return v_ < other.v_;
}

json Value::to_json() const {
    switch (kind()) {
        case Kind::Text: return json(as_text());
        case Kind::Number: return json(as_number());
        case Kind::Boolean: return json(as_boolean());
        case Kind::List: {
            json arr = json::array();
            for (const auto& item : as_list()) arr.push_back(item.to_json());
            return arr;
        }
    }
    return json();
}

Value Value::from_json(const json& j) {
    if (j.is_string()) return Value::text(j.get<std::string>());
    if (j.is_boolean()) return Value::boolean(j.get<bool>());
    if (j.is_number()) return Value::number(j.get<double>());
    if (j.is_array()) {
        List items;
        items.reserve(j.size());
        for (const auto& item : j) items.push_back(Value::from_json(item));
        return Value::list(std::move(items));
    }
    throw ParseError("expected a scalar or array value, got: " + j.dump());
}

std::string Value::repr() const {
    return to_json().dump();
}

// ---------------------------------------------------------------------------
// ParamDomain
// ---------------------------------------------------------------------------

ParamDomain ParamDomain::finite(std::vector<Value> values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (values[i] == values[j])
                throw UsageError("finite domain has duplicate value " + values[i].repr());
    return ParamDomain(FiniteDomain{std::move(values)});
}

ParamDomain ParamDomain::estimated_finite(std::vector<Value> examples, std::uint64_t estimated_size) {
    if (estimated_size < examples.size() || estimated_size == 0)
        throw UsageError("estimated size must cover the example set and be positive");
    return ParamDomain(EstimatedFiniteDomain{std::move(examples), estimated_size});
}

ParamDomain ParamDomain::numeric_range(double lo, double hi, bool integer_valued) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
        throw UsageError("numeric range requires finite lo <= hi");
    return ParamDomain(NumericRangeDomain{lo, hi, integer_valued});
}

ParamDomain ParamDomain::boolean() { return ParamDomain(BooleanDomain{}); }
ParamDomain ParamDomain::text() { return ParamDomain(TextDomain{}); }

ParamDomain ParamDomain::list_of(ParamDomain element) {
    return ParamDomain(ListOfDomain{std::make_shared<ParamDomainBox>(ParamDomainBox{std::move(element)})});
}

bool ParamDomain::operator==(const ParamDomain& other) const {
    if (v_.index() != other.v_.index()) return false;
    if (const auto* f = get_if<FiniteDomain>())
        return f->values == other.get_if<FiniteDomain>()->values;
    if (const auto* e = get_if<EstimatedFiniteDomain>()) {
        const auto* o = other.get_if<EstimatedFiniteDomain>();
        return e->examples == o->examples && e->estimated_size == o->estimated_size;
    }
    if (const auto* r = get_if<NumericRangeDomain>()) {
        const auto* o = other.get_if<NumericRangeDomain>();
        return r->lo == o->lo && r->hi == o->hi && r->integer_valued == o->integer_valued;
    }
    if (const auto* l = get_if<ListOfDomain>())
        return l->element->domain == other.get_if<ListOfDomain>()->element->domain;
    return true; // Boolean and Text carry no payload
}

json ParamDomain::to_json() const {
    ordered_json j;
    if (const auto* f = get_if<FiniteDomain>()) {
        j["type"] = "finite";
        json values = json::array();
        for (const auto& v : f->values) values.push_back(v.to_json());
        j["values"] = values;
    } else if (const auto* e = get_if<EstimatedFiniteDomain>()) {
        j["type"] = "estimated_finite";
        json examples = json::array();
        for (const auto& v : e->examples) examples.push_back(v.to_json());
        j["examples"] = examples;
        j["estimated_size"] = e->estimated_size;
    } else if (const auto* r = get_if<NumericRangeDomain>()) {
        j["type"] = "numeric_range";
        j["lo"] = r->lo;
        j["hi"] = r->hi;
        j["integer"] = r->integer_valued;
    } else if (is<BooleanDomain>()) {
        j["type"] = "boolean";
    } else if (is<TextDomain>()) {
        j["type"] = "string";
    } else if (const auto* l = get_if<ListOfDomain>()) {
        j["type"] = "list";
        j["element"] = l->element->domain.to_json();
    }
    return j;
}

ParamDomain ParamDomain::from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw ParseError(path + ": domain must be an object with a \"type\" field");
    const std::string type = j.at("type").get<std::string>();
    try {
        if (type == "finite") {
            // Data-dependent registries (bookings, watchlists) can start empty.
            if (!j.contains("values") || !j.at("values").is_array())
                throw ParseError(path + ": finite domain needs a \"values\" array");
            std::vector<Value> values;
            for (const auto& item : j.at("values")) values.push_back(Value::from_json(item));
            return ParamDomain::finite(std::move(values));
        }
        if (type == "estimated_finite") {
            std::vector<Value> examples;
            if (j.contains("examples"))
                for (const auto& item : j.at("examples")) examples.push_back(Value::from_json(item));
            if (!j.contains("estimated_size") || !j.at("estimated_size").is_number_unsigned())
                throw ParseError(path + ": estimated_finite domain needs a non-negative \"estimated_size\"");
            return ParamDomain::estimated_finite(std::move(examples), j.at("estimated_size").get<std::uint64_t>());
        }
        if (type == "numeric_range") {
            if (!j.contains("lo") || !j.contains("hi") || !j.at("lo").is_number() || !j.at("hi").is_number())
                throw ParseError(path + ": numeric_range domain needs numeric \"lo\" and \"hi\"");
            bool integer_valued = j.value("integer", false);
            return ParamDomain::numeric_range(j.at("lo").get<double>(), j.at("hi").get<double>(), integer_valued);
        }
        if (type == "boolean") return ParamDomain::boolean();
        if (type == "string") return ParamDomain::text();
        if (type == "list") {
            if (!j.contains("element"))
                throw ParseError(path + ": list domain needs an \"element\" domain");
            return ParamDomain::list_of(ParamDomain::from_json(j.at("element"), path + ".element"));
        }
    } catch (const UsageError& e) {
        throw ParseError(path + ": " + e.what());
    }
    throw ParseError(path + ": unknown domain type \"" + type + "\"");
}

Cardinality domain_size(const ParamDomain& domain) {
    if (const auto* f = domain.get_if<FiniteDomain>())
        return Cardinality::finite(f->values.size());
    if (const auto* e = domain.get_if<EstimatedFiniteDomain>())
        return Cardinality::finite(e->estimated_size);
    if (const auto* r = domain.get_if<NumericRangeDomain>()) {
        if (r->lo == r->hi) return Cardinality::finite(1);
        if (r->integer_valued) {
            double lo = std::ceil(r->lo), hi = std::floor(r->hi);
            if (hi < lo) return Cardinality::finite(0);
            return Cardinality::finite(static_cast<std::uint64_t>(hi - lo) + 1);
        }
        return Cardinality::infinite();
    }
    if (domain.is<BooleanDomain>()) return Cardinality::finite(2);
    return Cardinality::infinite(); // Text, ListOf
}

bool value_in_domain(const Value& v, const ParamDomain& domain) {
    if (const auto* f = domain.get_if<FiniteDomain>())
        return std::find(f->values.begin(), f->values.end(), v) != f->values.end();
    if (const auto* e = domain.get_if<EstimatedFiniteDomain>()) {
        // Membership against an estimate is unfalsifiable; only the value
        // kind can be checked, and only when examples exist to check against.
        return e->examples.empty() || v.kind() == e->examples.front().kind();
    }
    if (const auto* r = domain.get_if<NumericRangeDomain>()) {
        if (!v.is_number()) return false;
        double n = v.as_number();
        if (n < r->lo || n > r->hi) return false;
        return !r->integer_valued || is_integral(n);
    }
    if (domain.is<BooleanDomain>()) return v.is_boolean();
    if (domain.is<TextDomain>()) return v.is_text();
    if (const auto* l = domain.get_if<ListOfDomain>()) {
        if (!v.is_list()) return false;
        for (const auto& item : v.as_list())
            if (!value_in_domain(item, l->element->domain)) return false;
        return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Tool schemas and toolkits
// ---------------------------------------------------------------------------

const ParamSpec* ToolSchema::find_param(const std::string& param_name) const {
    for (const auto& p : params)
        if (p.name == param_name) return &p;
    return nullptr;
}

const ToolSchema* Toolkit::find_tool(const std::string& tool_name) const {
    for (const auto& t : tools)
        if (t.name == tool_name) return &t;
    return nullptr;
}

bool operator==(const ParamSpec& a, const ParamSpec& b) {
    return a.name == b.name && a.domain == b.domain && a.required == b.required &&
           a.data_dependent == b.data_dependent && a.default_value == b.default_value;
}

bool operator==(const ToolSchema& a, const ToolSchema& b) {
    return a.name == b.name && a.params == b.params;
}

bool Toolkit::operator==(const Toolkit& other) const {
    return tools == other.tools;
}

namespace {

ordered_json param_to_json(const ParamSpec& p) {
    ordered_json j;
    j["name"] = p.name;
    j["domain"] = p.domain.to_json();
    j["required"] = p.required;
    j["data_dependent"] = p.data_dependent;
    if (p.default_value) j["default"] = p.default_value->to_json();
    return j;
}

ParamSpec param_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("name") || !j.at("name").is_string() || j.at("name").get<std::string>().empty())
        throw ParseError(path + ": param needs a non-empty \"name\"");
    ParamSpec p;
    p.name = j.at("name").get<std::string>();
    if (!j.contains("domain"))
        throw ParseError(path + ": param \"" + p.name + "\" needs a \"domain\"");
    p.domain = ParamDomain::from_json(j.at("domain"), path + ".domain");
    p.required = j.value("required", true);
    p.data_dependent = j.value("data_dependent", false);
    if (j.contains("default")) {
        if (p.required)
            throw ParseError(path + ": required param \"" + p.name + "\" must not declare a default");
        p.default_value = Value::from_json(j.at("default"));
        if (!value_in_domain(*p.default_value, p.domain))
            throw ParseError(path + ": default for \"" + p.name + "\" lies outside its domain");
    }
    return p;
}

} // namespace

Toolkit parse_toolkit(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("toolkit is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("toolkit: top level must be an array of tools");

    Toolkit toolkit;
    std::set<std::string> seen_tools;
    for (std::size_t ti = 0; ti < doc.size(); ++ti) {
        const std::string tpath = "toolkit[" + std::to_string(ti) + "]";
        const json& tj = doc[ti];
        if (!tj.is_object() || !tj.contains("name") || !tj.at("name").is_string() ||
            tj.at("name").get<std::string>().empty())
            throw ParseError(tpath + ": tool needs a non-empty \"name\"");
        ToolSchema tool;
        tool.name = tj.at("name").get<std::string>();
        if (!seen_tools.insert(tool.name).second)
            throw ParseError(tpath + ": duplicate tool name \"" + tool.name + "\"");
        if (tj.contains("params")) {
            if (!tj.at("params").is_array())
                throw ParseError(tpath + ": \"params\" must be an array");
            std::set<std::string> seen_params;
            for (std::size_t pi = 0; pi < tj.at("params").size(); ++pi) {
                ParamSpec p = param_from_json(tj.at("params")[pi],
                                              tpath + ".params[" + std::to_string(pi) + "]");
                if (!seen_params.insert(p.name).second)
                    throw ParseError(tpath + ": duplicate param name \"" + p.name + "\"");
                tool.params.push_back(std::move(p));
            }
        }
        toolkit.tools.push_back(std::move(tool));
    }
    return toolkit;
}

std::string serialize_toolkit(const Toolkit& toolkit) {
    ordered_json doc = ordered_json::array();
    for (const auto& tool : toolkit.tools) {
        ordered_json tj;
        tj["name"] = tool.name;
        ordered_json params = ordered_json::array();
        for (const auto& p : tool.params) params.push_back(param_to_json(p));
        tj["params"] = params;
        doc.push_back(tj);
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// CandidateCall
// ---------------------------------------------------------------------------

bool CandidateCall::specified(const std::string& param) const {
    auto it = arguments.find(param);
    return it != arguments.end() && it->second.has_value();
}

bool CandidateCall::fully_specified() const {
    for (const auto& [name, value] : arguments)
        if (!value.has_value()) return false;
    return true;
}

bool CandidateCall::operator==(const CandidateCall& other) const {
    return id == other.id && tool == other.tool && arguments == other.arguments;
}

json CandidateCall::to_json() const {
    ordered_json j;
    if (!id.empty()) j["id"] = id;
    j["tool"] = tool;
    ordered_json args = ordered_json::object();
    for (const auto& [name, value] : arguments)
        args[name] = value ? value->to_json() : json(kUnknownMarker);
    j["arguments"] = args;
    return j;
}

CandidateCall CandidateCall::from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("tool") || !j.at("tool").is_string())
        throw ParseError(path + ": call needs a \"tool\" name");
    CandidateCall call;
    call.id = j.value("id", std::string{});
    call.tool = j.at("tool").get<std::string>();
    if (j.contains("arguments")) {
        if (!j.at("arguments").is_object())
            throw ParseError(path + ": \"arguments\" must be an object");
        for (const auto& [name, vj] : j.at("arguments").items()) {
            if (vj.is_string() && vj.get<std::string>() == kUnknownMarker)
                call.arguments[name] = std::nullopt;
            else
                call.arguments[name] = Value::from_json(vj);
        }
    }
    return call;
}

std::optional<ValidationIssue> validate_call(const Toolkit& toolkit, const CandidateCall& call) {
    const ToolSchema* tool = toolkit.find_tool(call.tool);
    if (!tool) return ValidationIssue{"", "unknown tool \"" + call.tool + "\""};
    for (const auto& [name, value] : call.arguments) {
        const ParamSpec* spec = tool->find_param(name);
        if (!spec) return ValidationIssue{name, "no such param on " + call.tool};
        if (value && !value_in_domain(*value, spec->domain))
            return ValidationIssue{name, "value " + value->repr() + " outside the declared domain"};
    }
    for (const auto& spec : tool->params)
        if (spec.required && !call.arguments.count(spec.name))
            return ValidationIssue{spec.name, "required param missing"};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constraints
// ---------------------------------------------------------------------------

Constraint Constraint::one_of(std::vector<Value> vs) {
    if (vs.empty()) throw UsageError("one_of constraint needs at least one value");
    return Constraint(OneOf{std::move(vs)});
}

Constraint Constraint::not_in(std::vector<Value> vs) {
    if (vs.empty()) throw UsageError("not_in constraint needs at least one value");
    return Constraint(NotIn{std::move(vs)});
}

Constraint Constraint::range(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
        throw UsageError("range constraint requires finite lo <= hi");
    return Constraint(RangeConstraint{lo, hi});
}

json Constraint::to_json() const {
    ordered_json j;
    if (const auto* eq = get_if<EqualTo>()) {
        j["kind"] = "equal_to";
        j["value"] = eq->value.to_json();
    } else if (const auto* oo = get_if<OneOf>()) {
        j["kind"] = "one_of";
        json values = json::array();
        for (const auto& v : oo->values) values.push_back(v.to_json());
        j["values"] = values;
    } else if (const auto* ni = get_if<NotIn>()) {
        j["kind"] = "not_in";
        json values = json::array();
        for (const auto& v : ni->values) values.push_back(v.to_json());
        j["values"] = values;
    } else if (const auto* r = get_if<RangeConstraint>()) {
        j["kind"] = "range";
        j["lo"] = r->lo;
        j["hi"] = r->hi;
    } else {
        j["kind"] = "no_information";
    }
    return j;
}

Constraint Constraint::from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ParseError(path + ": constraint needs a \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "equal_to") {
            if (!j.contains("value")) throw ParseError(path + ": equal_to needs a \"value\"");
            return Constraint::equal_to(Value::from_json(j.at("value")));
        }
        if (kind == "one_of" || kind == "not_in") {
            if (!j.contains("values") || !j.at("values").is_array())
                throw ParseError(path + ": " + kind + " needs a \"values\" array");
            std::vector<Value> vs;
            for (const auto& item : j.at("values")) vs.push_back(Value::from_json(item));
            return kind == "one_of" ? Constraint::one_of(std::move(vs))
                                    : Constraint::not_in(std::move(vs));
        }
        if (kind == "range") {
            if (!j.contains("lo") || !j.contains("hi"))
                throw ParseError(path + ": range needs \"lo\" and \"hi\"");
            return Constraint::range(j.at("lo").get<double>(), j.at("hi").get<double>());
        }
        if (kind == "no_information") return Constraint::no_information();
    } catch (const UsageError& e) {
        throw ParseError(path + ": " + e.what());
    }
    throw ParseError(path + ": unknown constraint kind \"" + kind + "\"");
}

bool satisfies(const Value& v, const Constraint& c) {
    if (const auto* eq = c.get_if<EqualTo>()) return v == eq->value;
    if (const auto* oo = c.get_if<OneOf>())
        return std::find(oo->values.begin(), oo->values.end(), v) != oo->values.end();
    if (const auto* ni = c.get_if<NotIn>())
        return std::find(ni->values.begin(), ni->values.end(), v) == ni->values.end();
    if (const auto* r = c.get_if<RangeConstraint>()) {
        if (!v.is_number()) return false;
        return v.as_number() >= r->lo && v.as_number() <= r->hi;
    }
    return true; // NoInformation
}

// ---------------------------------------------------------------------------
// intersect_domain
// ---------------------------------------------------------------------------

namespace {

std::optional<ParamDomain> finite_or_empty(std::vector<Value> values) {
    if (values.empty()) return std::nullopt;
    return ParamDomain(FiniteDomain{std::move(values)});
}

bool contains(const std::vector<Value>& vs, const Value& v) {
    return std::find(vs.begin(), vs.end(), v) != vs.end();
}

// Fully-known estimated domains collapse to plain finite sets.
std::optional<ParamDomain> estimated_or_collapsed(std::vector<Value> examples, std::uint64_t est) {
    if (est == 0) return std::nullopt;
    if (est == examples.size()) return finite_or_empty(std::move(examples));
    return ParamDomain(EstimatedFiniteDomain{std::move(examples), est});
}

// Point intervals collapse to singletons; integer intervals with no integer
// inside are empty.
std::optional<ParamDomain> range_or_collapsed(double lo, double hi, bool integer_valued) {
    if (lo > hi) return std::nullopt;
    if (integer_valued) {
        double ilo = std::ceil(lo), ihi = std::floor(hi);
        if (ihi < ilo) return std::nullopt;
        if (ilo == ihi) return ParamDomain(FiniteDomain{{Value::number(ilo)}});
        return ParamDomain(NumericRangeDomain{ilo, ihi, true});
    }
    if (lo == hi) return ParamDomain(FiniteDomain{{Value::number(lo)}});
    return ParamDomain(NumericRangeDomain{lo, hi, false});
}

bool value_type_fits(const Value& v, const ParamDomain& domain) {
    if (domain.is<NumericRangeDomain>()) return v.is_number();
    if (domain.is<BooleanDomain>()) return v.is_boolean();
    if (domain.is<TextDomain>()) return v.is_text();
    if (domain.is<ListOfDomain>()) return v.is_list();
    return true; // Finite and EstimatedFinite decide by membership, not type
}

std::optional<ParamDomain> intersect_equal_to(const ParamDomain& domain, const Value& v) {
    if (const auto* f = domain.get_if<FiniteDomain>()) {
        if (!contains(f->values, v)) return std::nullopt;
        return ParamDomain(FiniteDomain{{v}});
    }
    if (domain.is<EstimatedFiniteDomain>())
        return ParamDomain(FiniteDomain{{v}});
    if (!value_type_fits(v, domain))
        throw UsageError("equal_to value " + v.repr() + " is incompatible with the domain type");
    if (!value_in_domain(v, domain)) return std::nullopt;
    return ParamDomain(FiniteDomain{{v}});
}

std::optional<ParamDomain> intersect_one_of(const ParamDomain& domain, const std::vector<Value>& s) {
    if (s.size() == 1) return intersect_equal_to(domain, s.front());
    if (const auto* f = domain.get_if<FiniteDomain>()) {
        std::vector<Value> kept;
        for (const auto& v : f->values)
            if (contains(s, v)) kept.push_back(v);
        return finite_or_empty(std::move(kept));
    }
    if (const auto* e = domain.get_if<EstimatedFiniteDomain>()) {
        std::vector<Value> kept;
        for (const auto& v : e->examples)
            if (contains(s, v)) kept.push_back(v);
        std::uint64_t est = std::min<std::uint64_t>(e->estimated_size, s.size());
        return estimated_or_collapsed(std::move(kept), est);
    }
    // Remaining shapes: keep the constraint values the domain admits.
    std::vector<Value> kept;
    for (const auto& v : s)
        if (value_type_fits(v, domain) && value_in_domain(v, domain) && !contains(kept, v))
            kept.push_back(v);
    return finite_or_empty(std::move(kept));
}

std::optional<ParamDomain> intersect_not_in(const ParamDomain& domain, const std::vector<Value>& s) {
    if (const auto* f = domain.get_if<FiniteDomain>()) {
        std::vector<Value> kept;
        for (const auto& v : f->values)
            if (!contains(s, v)) kept.push_back(v);
        return finite_or_empty(std::move(kept));
    }
    if (const auto* e = domain.get_if<EstimatedFiniteDomain>()) {
        std::vector<Value> kept;
        std::uint64_t removed = 0;
        for (const auto& v : e->examples) {
            if (contains(s, v)) ++removed;
            else kept.push_back(v);
        }
        if (removed >= e->estimated_size) return std::nullopt;
        return estimated_or_collapsed(std::move(kept), e->estimated_size - removed);
    }
    if (const auto* r = domain.get_if<NumericRangeDomain>()) {
        Cardinality size = domain_size(domain);
        if (r->integer_valued && size.is_finite && size.count <= kMaterializeCap) {
            std::vector<Value> kept;
            for (double n = std::ceil(r->lo); n <= std::floor(r->hi); n += 1.0)
                if (!contains(s, Value::number(n))) kept.push_back(Value::number(n));
            return finite_or_empty(std::move(kept));
        }
        // Large or real range: only endpoint removals are representable.
        double lo = r->lo, hi = r->hi;
        if (r->integer_valued) {
            while (lo <= hi && contains(s, Value::number(lo))) lo += 1.0;
            while (hi >= lo && contains(s, Value::number(hi))) hi -= 1.0;
        }
        return range_or_collapsed(lo, hi, r->integer_valued);
    }
    if (domain.is<BooleanDomain>()) {
        std::vector<Value> kept;
        for (bool b : {false, true})
            if (!contains(s, Value::boolean(b))) kept.push_back(Value::boolean(b));
        return finite_or_empty(std::move(kept));
    }
    // Text and ListOf are infinite; removing finitely many values leaves them
    // unchanged as far as this representation can express.
    return domain;
}

std::optional<ParamDomain> intersect_range(const ParamDomain& domain, const RangeConstraint& rc) {
    if (const auto* r = domain.get_if<NumericRangeDomain>())
        return range_or_collapsed(std::max(r->lo, rc.lo), std::min(r->hi, rc.hi), r->integer_valued);
    if (const auto* f = domain.get_if<FiniteDomain>()) {
        std::vector<Value> kept;
        for (const auto& v : f->values)
            if (v.is_number() && v.as_number() >= rc.lo && v.as_number() <= rc.hi)
                kept.push_back(v);
        return finite_or_empty(std::move(kept));
    }
    if (const auto* e = domain.get_if<EstimatedFiniteDomain>()) {
        std::vector<Value> kept;
        for (const auto& v : e->examples)
            if (v.is_number() && v.as_number() >= rc.lo && v.as_number() <= rc.hi)
                kept.push_back(v);
        return estimated_or_collapsed(std::move(kept), e->estimated_size);
    }
    // No member of a boolean, text, or list domain lies in a numeric interval.
    return std::nullopt;
}

} // namespace

std::optional<ParamDomain> intersect_domain(const ParamDomain& domain, const Constraint& c) {
    if (c.is_no_information()) return domain;
    if (const auto* eq = c.get_if<EqualTo>()) return intersect_equal_to(domain, eq->value);
    if (const auto* oo = c.get_if<OneOf>()) return intersect_one_of(domain, oo->values);
    if (const auto* ni = c.get_if<NotIn>()) return intersect_not_in(domain, ni->values);
    if (const auto* r = c.get_if<RangeConstraint>()) return intersect_range(domain, *r);
    return domain;
}

std::optional<Value> singleton_value(const ParamDomain& domain) {
    if (const auto* f = domain.get_if<FiniteDomain>()) {
        if (f->values.size() == 1) return f->values.front();
        return std::nullopt;
    }
    if (const auto* e = domain.get_if<EstimatedFiniteDomain>()) {
        if (e->estimated_size == 1 && e->examples.size() == 1) return e->examples.front();
        return std::nullopt;
    }
    if (const auto* r = domain.get_if<NumericRangeDomain>()) {
        Cardinality size = domain_size(domain);
        if (size.is_finite && size.count == 1)
            return Value::number(r->integer_valued ? std::ceil(r->lo) : r->lo);
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace sage
