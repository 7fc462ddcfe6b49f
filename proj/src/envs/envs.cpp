// Environment base: generic validation, domain lookup, factory dispatch.

#include "sage/envs.hpp"

#include <algorithm>

#include "sage/errors.hpp"

namespace sage::envs {

std::string to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::OutOfRange: return "out-of-range";
        case ErrorKind::InvalidEnum: return "invalid-enum";
        case ErrorKind::MissingEntity: return "missing-entity";
        case ErrorKind::Duplicate: return "duplicate";
        case ErrorKind::Financial: return "financial";
        case ErrorKind::Path: return "path";
    }
    throw UsageError("unhandled error kind");
}

ErrorKind error_kind_from_string(const std::string& s) {
    if (s == "out-of-range") return ErrorKind::OutOfRange;
    if (s == "invalid-enum") return ErrorKind::InvalidEnum;
    if (s == "missing-entity") return ErrorKind::MissingEntity;
    if (s == "duplicate") return ErrorKind::Duplicate;
    if (s == "financial") return ErrorKind::Financial;
    if (s == "path") return ErrorKind::Path;
    throw ParseError("unknown error kind: " + s);
}

ExecutionResult ExecutionResult::success(std::string detail, json payload) {
    ExecutionResult r;
    r.ok = true;
    r.detail = std::move(detail);
    r.payload = std::move(payload);
    return r;
}

ExecutionResult ExecutionResult::failure(ErrorKind kind, std::string message, std::string param) {
    ExecutionResult r;
    r.ok = false;
    r.kind = kind;
    r.message = std::move(message);
    r.param = std::move(param);
    return r;
}

json ExecutionResult::to_json() const {
    json j = json::object();
    if (ok) {
        j["status"] = "success";
        j["detail"] = detail;
        if (!payload.is_null()) j["payload"] = payload;
    } else {
        j["status"] = "error";
        j["kind"] = to_string(kind);
        j["message"] = message;
        if (!param.empty()) j["param"] = param;
    }
    return j;
}

Environment::Environment(std::string name, Toolkit toolkit, std::vector<DomainUpdateRule> rules)
    : name_(std::move(name)), toolkit_(std::move(toolkit)), rules_(std::move(rules)) {}

const Value* Environment::arg(const CandidateCall& call, const std::string& name) {
    auto it = call.arguments.find(name);
    if (it == call.arguments.end() || !it->second.has_value()) return nullptr;
    return &*it->second;
}

const Value* Environment::arg_or_default(const CandidateCall& call, const std::string& name) const {
    if (const Value* v = arg(call, name)) return v;
    const ToolSchema* tool = toolkit_.find_tool(call.tool);
    if (tool == nullptr) return nullptr;
    const ParamSpec* spec = tool->find_param(name);
    if (spec == nullptr || !spec->default_value.has_value()) return nullptr;
    return &*spec->default_value;
}

namespace {

// Error kind for a value rejected by its current domain.
ErrorKind kind_for_rejection(const ParamSpec& spec, const ParamDomain& current) {
    if (current.is<NumericRangeDomain>()) return ErrorKind::OutOfRange;
    if (spec.data_dependent &&
        (current.is<FiniteDomain>() || current.is<EstimatedFiniteDomain>())) {
        return ErrorKind::MissingEntity;
    }
    return ErrorKind::InvalidEnum;
}

} // namespace

std::optional<ExecutionResult> Environment::check_domains(const CandidateCall& call,
                                                          const std::set<std::string>& skip) const {
    const ToolSchema* tool = toolkit_.find_tool(call.tool);
    if (tool == nullptr) {
        return ExecutionResult::failure(ErrorKind::MissingEntity, "unknown tool: " + call.tool);
    }
    for (const ParamSpec& spec : tool->params) {
        if (skip.count(spec.name) > 0) continue;
        const Value* v = arg(call, spec.name);
        if (v == nullptr) continue;
        ParamDomain current = current_domain(call.tool, spec.name);
        if (!value_in_domain(*v, current)) {
            return ExecutionResult::failure(
                kind_for_rejection(spec, current),
                "value " + v->repr() + " is outside the current domain of " + spec.name,
                spec.name);
        }
    }
    return std::nullopt;
}

ParamDomain Environment::current_domain(const std::string& tool, const std::string& param) const {
    const ToolSchema* schema = toolkit_.find_tool(tool);
    if (schema == nullptr) throw UsageError("current_domain: unknown tool " + tool);
    const ParamSpec* spec = schema->find_param(param);
    if (spec == nullptr) throw UsageError("current_domain: unknown param " + tool + "." + param);
    if (auto dyn = dynamic_domain(tool, param)) return *dyn;
    return spec->domain;
}

ExecutionResult Environment::execute(const CandidateCall& call) {
    const ToolSchema* tool = toolkit_.find_tool(call.tool);
    if (tool == nullptr) {
        return ExecutionResult::failure(ErrorKind::MissingEntity, "unknown tool: " + call.tool);
    }
    for (const ParamSpec& spec : tool->params) {
        if (spec.required && arg(call, spec.name) == nullptr) {
            return ExecutionResult::failure(ErrorKind::MissingEntity,
                                            "required parameter unspecified: " + spec.name,
                                            spec.name);
        }
    }
    for (const auto& [name, value] : call.arguments) {
        if (tool->find_param(name) == nullptr) {
            return ExecutionResult::failure(ErrorKind::MissingEntity,
                                            "unknown parameter: " + name, name);
        }
        (void)value;
    }
    return dispatch(call);
}

const std::vector<std::string>& environment_names() {
    static const std::vector<std::string> names = {"filesystem", "document", "vehicle", "travel",
                                                   "trading"};
    return names;
}

std::unique_ptr<Environment> make_environment(const std::string& domain, const json& fixture) {
    if (domain == "filesystem") return make_filesystem_env(fixture);
    if (domain == "document") return make_document_env(fixture);
    if (domain == "vehicle") return make_vehicle_env(fixture);
    if (domain == "travel") return make_travel_env(fixture);
    if (domain == "trading") return make_trading_env(fixture);
    throw UsageError("unknown environment domain: " + domain);
}

} // namespace sage::envs
