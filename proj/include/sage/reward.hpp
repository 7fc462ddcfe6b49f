#pragma once
// Reward computation for tagged completions: format compliance, tool-call
// accuracy against a gold reference, action classification, and the
// certainty weighting that scales the classification term by how sure the
// completion's own tool-call arguments say it is.

#include <optional>
#include <string>
#include <vector>

#include "sage/schema.hpp"

namespace sage::reward {

enum class ActionType { ToolCall, Ask, Refuse, Directly, Unparseable };

std::string to_string(ActionType action);
ActionType action_from_string(const std::string& s); // throws ParseError

struct ParsedCompletion {
    ActionType action = ActionType::Unparseable;
    std::optional<std::string> reasoning; // body of the reasoning block
    std::optional<std::string> answer;    // body of the answer block
    std::string action_content;           // text inside the action tag
    bool explicit_tag = false;            // action came from a leading tag
    std::vector<CandidateCall> calls;     // embedded calls; non-empty for ToolCall
    std::string question;                 // structured question text, Ask only

    double fmt_xml = 0.0;    // newline-structure score in [0, 0.5]
    bool fmt_soft = false;   // tags present in order
    bool fmt_strict = false; // exact template match

    double fmt_total() const { return fmt_xml + (fmt_soft ? 0.5 : 0.0) + (fmt_strict ? 0.5 : 0.0); }

    json to_json() const;
};

// Accepts arbitrary text. Empty input, an action tag with a malformed call
// payload, or an empty payload array classify as Unparseable with all format
// flags zeroed. Without an explicit tag the action falls back to heuristics:
// a toolcall indicator, then a question mark, then refusal keywords, then a
// direct answer.
ParsedCompletion parse_completion(const std::string& text);

// Canonical template form; parse_completion of the result preserves the
// action and the embedded calls.
std::string serialize_completion(const ParsedCompletion& parsed);

struct GoldRecord {
    ActionType action = ActionType::Directly;
    std::optional<CandidateCall> call;
};

// 1.0 exact tool and arguments; 0.75 same tool, different arguments; 0.5 both
// absent or wrong tool name; 0.0 when exactly one side has a call.
double tool_reward(const CandidateCall* predicted, const CandidateCall* gold);

// 2.0 for the correct leading tag with 30 or more characters of content, 1.5
// for the correct tag with less, 0.0 otherwise (heuristic classification has
// no leading tag and never scores).
double cls_reward(const ParsedCompletion& parsed, ActionType gold_action);

struct CertaintyResult {
    double value = 1.0;
    bool cannot_assess = false; // unknown tool or argument, or Ask without a candidate
};

// Argument-product certainty of the completion's own action. ToolCall: product
// over the first call's arguments of 1 when specified, 1/n over a finite static
// domain of n values (0 when empty), epsilon when infinite. Ask: one minus the
// product over the embedded candidate; an Ask without a candidate scores 0 and
// flags cannot_assess. Other actions score 1. A tool missing from the toolkit
// scores 1 with cannot_assess; an argument naming no schema param contributes
// epsilon and flags cannot_assess.
CertaintyResult certainty(const ParsedCompletion& parsed, const Toolkit& toolkit,
                          double epsilon = 1e-4);

enum class RewardMode { Baseline, Certainty };

struct RewardBreakdown {
    double fmt_xml = 0.0;
    bool fmt_soft = false;
    bool fmt_strict = false;
    double r_fmt = 0.0;
    double r_tool = 0.0;
    double r_cls_base = 0.0;
    double cert = 1.0;
    bool cannot_assess = false;
    double r_cls_final = 0.0;
    double total = 0.0; // r_fmt + r_tool + r_cls_final

    json to_json() const;
};

// Assembles the full breakdown. Baseline mode passes the classification
// reward through; certainty mode scales it by the certainty of the action.
RewardBreakdown total_reward(const ParsedCompletion& parsed, const GoldRecord& gold,
                             RewardMode mode, const Toolkit& toolkit, double epsilon = 1e-4);

} // namespace sage::reward
