// Belief-state construction, viability weighting, and response propagation.

#include "sage/belief.hpp"

#include <algorithm>
#include <cmath>

namespace sage::belief {

AspectId AspectId::parse(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == s.size())
        throw ParseError("aspect \"" + s + "\" is not of the form tool.param");
    return AspectId{s.substr(0, dot), s.substr(dot + 1)};
}

void EngineConfig::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw UsageError("lambda must be finite and >= 0");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw UsageError("alpha must be finite and >= 0");
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw UsageError("epsilon must lie in (0, 1)");
    if (!(tau_exec > 0.0) || !(tau_exec <= 1.0)) throw UsageError("tau_exec must lie in (0, 1]");
    if (max_questions < 1) throw UsageError("max_questions must be >= 1");
}

json ClarifyingQuestion::to_json() const {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["text"] = text;
    json aspects_j = json::array();
    for (const auto& a : aspects) aspects_j.push_back(a.str());
    j["aspects"] = aspects_j;
    return j;
}

const CandidateCall* BeliefState::find_candidate(const std::string& id) const {
    for (const auto& c : candidates)
        if (c.id == id) return &c;
    return nullptr;
}

bool BeliefState::eliminated(const std::string& id) const {
    auto it = weights.find(id);
    return it == weights.end() || it->second == 0.0;
}

std::vector<const CandidateCall*> BeliefState::live_candidates() const {
    std::vector<const CandidateCall*> live;
    for (const auto& c : candidates)
        if (!eliminated(c.id)) live.push_back(&c);
    return live;
}

double BeliefState::max_weight() const {
    double best = 0.0;
    for (const auto& [id, w] : weights) best = std::max(best, w);
    return best;
}

double BeliefState::max_normalized() const {
    double best = 0.0;
    for (const auto& [id, p] : normalized) best = std::max(best, p);
    return best;
}

const CandidateCall* BeliefState::argmax_candidate() const {
    const CandidateCall* best = nullptr;
    double best_w = 0.0;
    for (const auto& c : candidates) {
        auto it = weights.find(c.id);
        if (it == weights.end() || it->second == 0.0) continue;
        if (!best || it->second > best_w) {
            best = &c;
            best_w = it->second;
        }
    }
    return best;
}

json BeliefState::to_json() const {
    nlohmann::ordered_json j;
    j["step"] = step;
    nlohmann::ordered_json weights_j = nlohmann::ordered_json::object();
    for (const auto& [id, w] : weights) weights_j[id] = w;
    j["weights"] = weights_j;
    nlohmann::ordered_json norm_j = nlohmann::ordered_json::object();
    for (const auto& [id, p] : normalized) norm_j[id] = p;
    j["normalized"] = norm_j;
    nlohmann::ordered_json counts_j = nlohmann::ordered_json::object();
    for (const auto& [aspect, n] : aspect_counts) counts_j[aspect.str()] = n;
    j["aspect_counts"] = counts_j;
    return j;
}

namespace {

// Counted params drive viability: required always, optional-without-default
// always. Optional params with a declared default are filled by the default
// while Unknown and contribute certainty 1.
bool counted_param(const ParamSpec& spec) {
    return spec.required || !spec.default_value.has_value();
}

const ParamDomain& working_domain_of(const BeliefState& state, const std::string& cid,
                                     const std::string& param) {
    auto it = state.working_domains.find({cid, param});
    if (it == state.working_domains.end())
        throw UsageError("no working domain for candidate " + cid + " param " + param);
    return it->second;
}

double certainty_from_domain(const ParamDomain& domain, const EngineConfig& config) {
    Cardinality n = domain_size(domain);
    if (!n.is_finite) return config.epsilon;
    if (n.count == 0) return 0.0;
    return 1.0 / static_cast<double>(n.count);
}

// Collapse any Unknown param whose working domain pins a single value.
void collapse_singletons(CandidateCall& call, BeliefState& state) {
    for (auto& [param, value] : call.arguments) {
        if (value.has_value()) continue;
        const ParamDomain& dom = working_domain_of(state, call.id, param);
        if (auto pinned = singleton_value(dom)) value = *pinned;
    }
}

} // namespace

double param_certainty(const CandidateCall& call, const std::string& param,
                       const BeliefState& state, const EngineConfig& config) {
    if (call.specified(param)) return 1.0;
    return certainty_from_domain(working_domain_of(state, call.id, param), config);
}

double viability(const CandidateCall& call, const BeliefState& state, const EngineConfig& config) {
    if (!state.toolkit) throw UsageError("belief state has no toolkit");
    const ToolSchema* tool = state.toolkit->find_tool(call.tool);
    if (!tool) throw UsageError("candidate " + call.id + " names unknown tool " + call.tool);
    double product = 1.0;
    for (const auto& spec : tool->params) {
        if (!counted_param(spec)) continue;
        product *= param_certainty(call, spec.name, state, config);
    }
    return product;
}

std::map<std::string, double> normalize(const std::map<std::string, double>& weights) {
    double total = 0.0;
    for (const auto& [id, w] : weights) total += w;
    if (total <= 0.0) throw DegenerateBelief("all candidate weights are zero");
    std::map<std::string, double> result;
    for (const auto& [id, w] : weights) result[id] = w / total;
    return result;
}

BeliefState init_belief(std::vector<CandidateCall> candidates, const Toolkit& toolkit,
                        const EngineConfig& config, const DomainProvider& domains) {
    config.validate();
    BeliefState state;
    state.toolkit = &toolkit;

    std::set<std::string> seen_ids;
    for (auto& call : candidates) {
        if (call.id.empty()) throw UsageError("candidate without an id");
        if (!seen_ids.insert(call.id).second)
            throw UsageError("duplicate candidate id " + call.id);
        const ToolSchema* tool = toolkit.find_tool(call.tool);
        if (!tool) throw UsageError("candidate " + call.id + " names unknown tool " + call.tool);
        for (const auto& [param, value] : call.arguments)
            if (!tool->find_param(param))
                throw UsageError("candidate " + call.id + " argument " + param +
                                 " names no param of " + call.tool);
        for (const auto& spec : tool->params) {
            ParamDomain dom = domains ? domains(call.tool, spec.name) : spec.domain;
            state.working_domains.emplace(std::make_pair(call.id, spec.name), std::move(dom));
        }
    }
    state.candidates = std::move(candidates);

    for (auto& call : state.candidates) collapse_singletons(call, state);
    for (const auto& call : state.candidates)
        state.weights[call.id] = viability(call, state, config);
    state.normalized = normalize(state.weights);
    return state;
}

BeliefState apply_response(const BeliefState& state, const ClarifyingQuestion& question,
                           const std::map<AspectId, Constraint>& constraints,
                           const EngineConfig& config, const std::string& response_text) {
    if (question.aspects.empty()) throw UsageError("question targets no aspects");
    for (const auto& [aspect, c] : constraints)
        if (!question.aspects.count(aspect))
            throw UsageError("constraint on " + aspect.str() + " outside the question's targets");

    BeliefState next = state;

    for (const auto& aspect : question.aspects) {
        auto cit = constraints.find(aspect);
        const Constraint& c = cit == constraints.end() ? Constraint() : cit->second;
        if (c.is_no_information()) continue;

        for (auto& call : next.candidates) {
            if (call.tool != aspect.tool || next.eliminated(call.id)) continue;
            auto arg = call.arguments.find(aspect.param);
            bool specified = arg != call.arguments.end() && arg->second.has_value();
            if (specified) {
                if (!satisfies(*arg->second, c)) next.weights[call.id] = 0.0;
                continue;
            }
            // Unknown (or absent optional): narrow the working domain.
            auto key = std::make_pair(call.id, aspect.param);
            auto dit = next.working_domains.find(key);
            if (dit == next.working_domains.end())
                throw UsageError("no working domain for candidate " + call.id + " param " + aspect.param);
            auto narrowed = intersect_domain(dit->second, c);
            if (!narrowed) {
                next.weights[call.id] = 0.0; // EmptyDomain eliminates, never throws
                continue;
            }
            dit->second = *narrowed;
            if (auto pinned = singleton_value(dit->second)) {
                if (arg != call.arguments.end()) arg->second = *pinned;
                else call.arguments[aspect.param] = *pinned;
            }
        }
    }

    for (const auto& aspect : question.aspects) next.aspect_counts[aspect] += 1;

    bool any_live = false;
    for (auto& call : next.candidates) {
        if (next.eliminated(call.id)) continue;
        next.weights[call.id] = viability(call, next, config);
        if (next.weights[call.id] > 0.0) any_live = true;
    }
    if (!any_live)
        throw ContradictoryResponse("response to " + question.id + " eliminated every candidate");

    next.normalized = normalize(next.weights);
    next.observations.push_back(
        ObservationRecord{question.id, question.text, response_text, constraints});
    next.step += 1;
    return next;
}

void reopen_parameter(BeliefState& state, const std::string& candidate_id,
                      const std::string& param, const ParamDomain& domain,
                      const EngineConfig& config) {
    CandidateCall* call = nullptr;
    for (auto& c : state.candidates)
        if (c.id == candidate_id) call = &c;
    if (call == nullptr) throw UsageError("reopen_parameter: unknown candidate " + candidate_id);
    if (!state.toolkit || !state.toolkit->find_tool(call->tool) ||
        !state.toolkit->find_tool(call->tool)->find_param(param))
        throw UsageError("reopen_parameter: " + call->tool + " has no param " + param);

    call->arguments[param] = std::nullopt;
    state.working_domains[std::make_pair(candidate_id, param)] = domain;
    collapse_singletons(*call, state);

    for (auto& c : state.candidates) {
        if (state.eliminated(c.id) && c.id != candidate_id) continue;
        state.weights[c.id] = viability(c, state, config);
    }
    state.normalized = normalize(state.weights);
}

} // namespace sage::belief
