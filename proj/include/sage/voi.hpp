#pragma once
// Value-of-information scoring for clarification questions. A question's
// targeted aspects partition the live candidates; EVPI is the gap between the
// sum of per-cell best viabilities and the single global best. Redundancy
// cost charges lambda per prior targeting of each aspect. decide() folds the
// scores, the execution threshold, and the budget into one action.

#include <optional>
#include <vector>

#include "sage/belief.hpp"

namespace sage::voi {

using belief::AspectId;
using belief::BeliefState;
using belief::ClarifyingQuestion;
using belief::EngineConfig;

// One cell of the aspect-induced partition: candidate ids in generation order.
struct PartitionCell {
    std::vector<std::string> candidate_ids;
};

struct Partition {
    std::vector<PartitionCell> cells; // deterministic order (first member's rank)
};

// Partitions the live candidates by the targeted aspects. Candidates sharing
// identical specified values on every targeted aspect of their tool land in
// one cell; a candidate with any targeted aspect Unknown is a singleton cell;
// candidates whose tool has none of the targeted aspects group by tool
// identity. Throws UsageError on an empty aspect set or no live candidates.
Partition induce_partition(const BeliefState& state, const std::set<AspectId>& aspects);

// Expected value of perfect information over an explicit partition, using the
// unnormalized viability weights: sum of cell maxima minus the global max.
double evpi_of_partition(const Partition& partition, const BeliefState& state);

// EVPI of a question: evpi_of_partition over the partition its aspects induce.
double evpi(const ClarifyingQuestion& question, const BeliefState& state);

// Redundancy cost: lambda times the total prior targeting count of the
// question's aspects. Aspects never targeted count zero.
double cost(const ClarifyingQuestion& question, const BeliefState& state, const EngineConfig& config);

struct ScoredQuestion {
    ClarifyingQuestion question;
    double evpi = 0.0;
    double cost = 0.0;
    double score = 0.0; // evpi - cost
};

// Scores every question. Order of the result follows the input.
std::vector<ScoredQuestion> score_questions(const std::vector<ClarifyingQuestion>& questions,
                                            const BeliefState& state, const EngineConfig& config);

// Highest-scoring question; ties break toward the earliest (lowest id in
// generation order). nullopt when the input is empty.
std::optional<ScoredQuestion> select_question(const std::vector<ClarifyingQuestion>& questions,
                                              const BeliefState& state, const EngineConfig& config);

enum class Action { Execute, Ask, Abort };

struct Decision {
    Action action;
    std::string candidate_id;      // Execute: the argmax candidate
    std::string question_id;       // Ask: the selected question
    std::string reason;            // threshold | low-score | budget | no-questions | abort
};

// Decision rule, evaluated in order:
//   no live candidates                          -> Abort
//   max normalized belief >= tau_exec           -> Execute (threshold)
//   no question available                       -> Execute (no-questions)
//   best score < alpha * max viability          -> Execute (low-score)
//   step >= max_questions                       -> Execute (budget)
//   otherwise                                   -> Ask
// The alpha comparison uses unnormalized viability by default; the normalized
// belief when config.stop_basis says so.
Decision decide(const BeliefState& state, const std::optional<ScoredQuestion>& best,
                const EngineConfig& config);

} // namespace sage::voi
