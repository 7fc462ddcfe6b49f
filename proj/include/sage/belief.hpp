#pragma once
// Belief state over partial tool calls. Uncertainty is structured: each
// candidate call carries per-parameter working domains, a viability weight
// (the product of per-parameter certainties), and a normalized belief.
// Updates are domain-constraint propagation: responses shrink working
// domains, eliminate inconsistent candidates, and collapse singletons into
// concrete assignments.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sage/schema.hpp"

namespace sage::belief {

// One clarifiable parameter slot of one tool.
struct AspectId {
    std::string tool;
    std::string param;

    auto operator<=>(const AspectId&) const = default;

    std::string str() const { return tool + "." + param; }
    static AspectId parse(const std::string& s); // "tool.param", throws ParseError
};

enum class StopBasis { Unnormalized, Normalized };

struct EngineConfig {
    double lambda = 0.5;        // redundancy cost weight
    double alpha = 0.1;         // stop-rule fraction of the max viability
    double epsilon = 1e-4;      // certainty floor for infinite domains
    double tau_exec = 0.95;     // execution threshold on the normalized belief
    int max_questions = 5;      // per-episode question budget
    StopBasis stop_basis = StopBasis::Unnormalized;

    void validate() const; // throws UsageError on out-of-range settings
};

struct ObservationRecord {
    std::string question_id;
    std::string question_text;
    std::string response_text;
    std::map<AspectId, Constraint> constraints;
};

struct BeliefState {
    std::vector<CandidateCall> candidates; // generation order; ids unique
    // Working domain per (candidate id, param). Populated for every param of
    // each candidate's tool at init; only ever shrinks afterwards.
    std::map<std::pair<std::string, std::string>, ParamDomain> working_domains;
    std::map<std::string, double> weights;    // viability; exactly 0 = eliminated
    std::map<std::string, double> normalized; // weights scaled to sum 1 over live set
    std::map<AspectId, int> aspect_counts;    // how often each aspect was targeted
    std::vector<ObservationRecord> observations;
    int step = 0;
    const Toolkit* toolkit = nullptr; // non-owning; outlives the episode

    const CandidateCall* find_candidate(const std::string& id) const;
    bool eliminated(const std::string& id) const;
    std::vector<const CandidateCall*> live_candidates() const; // generation order

    double max_weight() const;     // max viability over live candidates, 0 if none
    double max_normalized() const; // max normalized belief, 0 if none

    // Live candidate with the highest weight; ties go to generation order.
    const CandidateCall* argmax_candidate() const;

    json to_json() const; // debugging snapshot for the episode trace
};

// Supplies the initial working domain for a (tool, param) slot; defaults to
// the static schema domain, environments substitute their current domains.
using DomainProvider = std::function<ParamDomain(const std::string& tool, const std::string& param)>;

// Builds the initial state: working domains for every param of every
// candidate's tool, singleton domains collapsed into assignments, weights set
// to viability and normalized. Throws UsageError on unknown tools, duplicate
// candidate ids, or arguments naming no schema param.
BeliefState init_belief(std::vector<CandidateCall> candidates, const Toolkit& toolkit,
                        const EngineConfig& config, const DomainProvider& domains = {});

// Certainty of one parameter of one candidate: 1 when specified; 1/n when
// Unknown over a finite working domain of n values (0 when n = 0); epsilon
// when the working domain is infinite.
double param_certainty(const CandidateCall& call, const std::string& param,
                       const BeliefState& state, const EngineConfig& config);

// Product of certainties over the counted params of the call's tool: required
// params and optional params without defaults. Optional params with declared
// defaults contribute 1 while Unknown (the default fills in), which keeps
// viability monotone under updates.
double viability(const CandidateCall& call, const BeliefState& state, const EngineConfig& config);

// Scales weights to a probability over live candidates. Argmax-preserving.
// Throws DegenerateBelief when every weight is zero.
std::map<std::string, double> normalize(const std::map<std::string, double>& weights);

// A clarification question: free text plus the structured set of aspects it
// targets. Question-information-gain scoring lives in the voi module.
struct ClarifyingQuestion {
    std::string id;
    std::string text;
    std::set<AspectId> aspects; // non-empty

    json to_json() const;
};

// Applies an answered question: narrows working domains of targeted Unknown
// params, eliminates candidates whose specified values violate a constraint
// or whose domains empty out, assigns values pinned to a singleton, bumps
// aspect counts, recomputes weights, renormalizes, logs the observation, and
// advances the step. Value semantics: the input state is not modified.
// Constraints for aspects the question did not target are a UsageError;
// targeted aspects missing from the map count as NoInformation. Throws
// ContradictoryResponse if no candidate survives.
BeliefState apply_response(const BeliefState& state, const ClarifyingQuestion& question,
                           const std::map<AspectId, Constraint>& constraints,
                           const EngineConfig& config, const std::string& response_text = "");

// Re-opens one parameter of one candidate after a failed execution: the value
// becomes Unknown again, its working domain is replaced (typically with the
// environment's current domain), a singleton replacement collapses straight
// back to a value, and weights are recomputed. Throws UsageError for unknown
// ids and DegenerateBelief if no candidate keeps positive weight.
void reopen_parameter(BeliefState& state, const std::string& candidate_id,
                      const std::string& param, const ParamDomain& domain,
                      const EngineConfig& config);

} // namespace sage::belief
