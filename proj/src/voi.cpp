// EVPI computation over aspect-induced partitions, question scoring, and the
// ask/execute decision rule.

#include "sage/voi.hpp"

#include <algorithm>
#include <map>

namespace sage::voi {

namespace {

// Grouping key for one candidate under a targeted aspect set. Unknown on any
// targeted aspect forces a singleton; otherwise candidates group by tool plus
// the specified values of the targeted aspects belonging to that tool.
struct CellKey {
    bool singleton;
    std::string candidate_id; // set only for singletons
    std::string tool;
    std::vector<std::pair<std::string, Value>> values; // param -> specified value

    bool operator<(const CellKey& other) const {
        if (singleton != other.singleton) return singleton < other.singleton;
        if (singleton) return candidate_id < other.candidate_id;
        if (tool != other.tool) return tool < other.tool;
        if (values.size() != other.values.size()) return values.size() < other.values.size();
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i].first != other.values[i].first) return values[i].first < other.values[i].first;
            if (!(values[i].second == other.values[i].second)) return values[i].second < other.values[i].second;
        }
        return false;
    }
};

CellKey key_for(const CandidateCall& call, const std::set<AspectId>& aspects) {
    CellKey key{false, "", call.tool, {}};
    for (const auto& aspect : aspects) {
        if (aspect.tool != call.tool) continue;
        auto it = call.arguments.find(aspect.param);
        if (it == call.arguments.end() || !it->second.has_value()) {
            // Unknown on a targeted aspect: the answer could split this
            // candidate's mass any way, so it stands alone.
            return CellKey{true, call.id, call.tool, {}};
        }
        key.values.emplace_back(aspect.param, *it->second);
    }
    return key; // no targeted aspect on this tool: groups by tool identity
}

} // namespace

Partition induce_partition(const BeliefState& state, const std::set<AspectId>& aspects) {
    if (aspects.empty()) throw UsageError("cannot partition on an empty aspect set");
    auto live = state.live_candidates();
    if (live.empty()) throw UsageError("cannot partition with no live candidates");

    std::map<CellKey, std::size_t> cell_of;
    Partition partition;
    for (const CandidateCall* call : live) {
        CellKey key = key_for(*call, aspects);
        auto [it, inserted] = cell_of.emplace(key, partition.cells.size());
        if (inserted) partition.cells.push_back({});
        partition.cells[it->second].candidate_ids.push_back(call->id);
    }
    return partition;
}

double evpi_of_partition(const Partition& partition, const BeliefState& state) {
    double global_max = 0.0;
    double cell_sum = 0.0;
    for (const auto& cell : partition.cells) {
        double cell_max = 0.0;
        for (const auto& id : cell.candidate_ids) {
            auto it = state.weights.find(id);
            if (it == state.weights.end()) throw UsageError("partition names unknown candidate " + id);
            cell_max = std::max(cell_max, it->second);
        }
        cell_sum += cell_max;
        global_max = std::max(global_max, cell_max);
    }
    return cell_sum - global_max;
}

double evpi(const ClarifyingQuestion& question, const BeliefState& state) {
    return evpi_of_partition(induce_partition(state, question.aspects), state);
}

double cost(const ClarifyingQuestion& question, const BeliefState& state, const EngineConfig& config) {
    int total = 0;
    for (const auto& aspect : question.aspects) {
        auto it = state.aspect_counts.find(aspect);
        if (it != state.aspect_counts.end()) total += it->second;
    }
    return config.lambda * static_cast<double>(total);
}

std::vector<ScoredQuestion> score_questions(const std::vector<ClarifyingQuestion>& questions,
                                            const BeliefState& state, const EngineConfig& config) {
    std::vector<ScoredQuestion> scored;
    scored.reserve(questions.size());
    for (const auto& q : questions) {
        ScoredQuestion s;
        s.question = q;
        s.evpi = evpi(q, state);
        s.cost = cost(q, state, config);
        s.score = s.evpi - s.cost;
        scored.push_back(std::move(s));
    }
    return scored;
}

std::optional<ScoredQuestion> select_question(const std::vector<ClarifyingQuestion>& questions,
                                              const BeliefState& state, const EngineConfig& config) {
    auto scored = score_questions(questions, state, config);
    std::optional<ScoredQuestion> best;
    for (auto& s : scored)
        if (!best || s.score > best->score) best = std::move(s); // strict: earliest wins ties
    return best;
}

Decision decide(const BeliefState& state, const std::optional<ScoredQuestion>& best,
                const EngineConfig& config) {
    auto live = state.live_candidates();
    if (live.empty()) return Decision{Action::Abort, "", "", "abort"};

    const CandidateCall* argmax = state.argmax_candidate();
    if (state.max_normalized() >= config.tau_exec)
        return Decision{Action::Execute, argmax->id, "", "threshold"};
    if (!best)
        return Decision{Action::Execute, argmax->id, "", "no-questions"};

    double stop_reference = config.stop_basis == belief::StopBasis::Normalized
                                ? state.max_normalized()
                                : state.max_weight();
    if (best->score < config.alpha * stop_reference)
        return Decision{Action::Execute, argmax->id, "", "low-score"};
    if (state.step >= config.max_questions)
        return Decision{Action::Execute, argmax->id, "", "budget"};
    return Decision{Action::Ask, "", best->question.id, "ask"};
}

} // namespace sage::voi
