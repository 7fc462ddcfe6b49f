#include "sage/reward.hpp"

#include <algorithm>
#include <cctype>

namespace sage::reward {

namespace {

const std::string kReasoningOpen = "<reasoning>";
const std::string kReasoningClose = "</reasoning>";
const std::string kAnswerOpen = "<answer>";
const std::string kAnswerClose = "</answer>";

struct Tag {
    ActionType action;
    std::string open;
    std::string close;
};

const Tag kTags[] = {
    {ActionType::ToolCall, "<TOOLCALL>", "</TOOLCALL>"},
    {ActionType::Ask, "<ASK>", "</ASK>"},
    {ActionType::Refuse, "<REFUSE>", "</REFUSE>"},
    {ActionType::Directly, "<DIRECTLY>", "</DIRECTLY>"},
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lowercase(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Newline-structure score: a quarter point for each properly newlined closing
// tag, minus a per-character penalty for content after the final answer tag
// (one trailing newline is free), clamped to [0, 0.5].
double xml_count(const std::string& text) {
    double score = 0.0;
    if (text.find("\n</reasoning>\n") != std::string::npos) score += 0.25;
    if (text.find("\n</answer>") != std::string::npos) score += 0.25;
    std::size_t last = text.rfind(kAnswerClose);
    if (last != std::string::npos) {
        std::string tail = text.substr(last + kAnswerClose.size());
        if (!tail.empty() && tail.front() == '\n') tail.erase(0, 1);
        score -= 0.001 * static_cast<double>(tail.size());
    }
    return std::clamp(score, 0.0, 0.5);
}

// Tags present, each after the previous one.
bool soft_format(const std::string& text) {
    std::size_t a = text.find(kReasoningOpen);
    if (a == std::string::npos) return false;
    std::size_t b = text.find(kReasoningClose, a + kReasoningOpen.size());
    if (b == std::string::npos) return false;
    std::size_t c = text.find(kAnswerOpen, b + kReasoningClose.size());
    if (c == std::string::npos) return false;
    return text.find(kAnswerClose, c + kAnswerOpen.size()) != std::string::npos;
}

// Exactly "<reasoning>\n...\n</reasoning>\n<answer>\n...\n</answer>" with at
// most one trailing newline. Matched by scanning, not by pattern syntax.
bool strict_format(const std::string& text) {
    const std::string head = kReasoningOpen + "\n";
    const std::string mid = "\n" + kReasoningClose + "\n" + kAnswerOpen + "\n";
    const std::string tail = "\n" + kAnswerClose;
    if (text.rfind(head, 0) != 0) return false;
    std::size_t m = text.find(mid, head.size());
    if (m == std::string::npos) return false;
    std::size_t rest = text.size();
    if (text.size() >= 1 && text.back() == '\n') rest -= 1;
    if (rest < tail.size() || text.compare(rest - tail.size(), tail.size(), tail) != 0)
        return false;
    return m + mid.size() <= rest - tail.size();
}

json call_to_wire(const CandidateCall& call) {
    json args = json::object();
    for (const auto& [name, value] : call.arguments)
        args[name] = value ? value->to_json() : json("<UNK>");
    return json{{"name", call.tool}, {"arguments", args}};
}

// Payload is a JSON array of {"name"|"tool", "arguments"} objects; "<UNK>"
// marks an unknown argument. Returns nullopt when the payload does not parse.
std::optional<std::vector<CandidateCall>> parse_payload(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    if (j.is_object()) j = json::array({j});
    if (!j.is_array() || j.empty()) return std::nullopt;
    std::vector<CandidateCall> calls;
    for (const auto& cj : j) {
        if (!cj.is_object()) return std::nullopt;
        json normalized = cj;
        if (normalized.contains("name") && !normalized.contains("tool"))
            normalized["tool"] = normalized.at("name");
        try {
            calls.push_back(CandidateCall::from_json(normalized, "completion"));
        } catch (const ParseError&) {
            return std::nullopt;
        }
    }
    return calls;
}

// Content between an open tag and its close tag; to end of text if unclosed.
std::string tag_body(const std::string& text, const Tag& tag, std::size_t open_at) {
    std::size_t begin = open_at + tag.open.size();
    std::size_t end = text.find(tag.close, begin);
    if (end == std::string::npos) end = text.size();
    return trim(text.substr(begin, end - begin));
}

bool contains_refusal(const std::string& lower) {
    for (const char* kw : {"sorry", "unable", "impossible", "cannot", "can't"})
        if (lower.find(kw) != std::string::npos) return true;
    return false;
}

} // namespace

std::string to_string(ActionType action) {
    switch (action) {
    case ActionType::ToolCall: return "toolcall";
    case ActionType::Ask: return "ask";
    case ActionType::Refuse: return "refuse";
    case ActionType::Directly: return "directly";
    case ActionType::Unparseable: return "unparseable";
    }
    return "unparseable";
}

ActionType action_from_string(const std::string& s) {
    if (s == "toolcall") return ActionType::ToolCall;
    if (s == "ask") return ActionType::Ask;
    if (s == "refuse") return ActionType::Refuse;
    if (s == "directly") return ActionType::Directly;
    if (s == "unparseable") return ActionType::Unparseable;
    throw ParseError("unknown action type \"" + s + "\"");
}

ParsedCompletion parse_completion(const std::string& text) {
    ParsedCompletion out;
    if (trim(text).empty()) return out; // Unparseable, flags zero

    out.fmt_xml = xml_count(text);
    out.fmt_soft = soft_format(text);
    out.fmt_strict = strict_format(text);

    std::string region = text;
    std::size_t r_open = text.find(kReasoningOpen);
    if (r_open != std::string::npos) {
        std::size_t r_close = text.find(kReasoningClose, r_open + kReasoningOpen.size());
        if (r_close != std::string::npos)
            out.reasoning = trim(text.substr(r_open + kReasoningOpen.size(),
                                             r_close - r_open - kReasoningOpen.size()));
    }
    std::size_t a_open = text.find(kAnswerOpen);
    if (a_open != std::string::npos) {
        std::size_t begin = a_open + kAnswerOpen.size();
        std::size_t a_close = text.find(kAnswerClose, begin);
        std::size_t end = a_close == std::string::npos ? text.size() : a_close;
        out.answer = trim(text.substr(begin, end - begin));
        region = *out.answer;
    } else {
        region = trim(text);
    }

    auto fail_unparseable = [&out] {
        out = ParsedCompletion{};
        return out;
    };

    for (const auto& tag : kTags) {
        if (region.rfind(tag.open, 0) != 0) continue;
        out.explicit_tag = true;
        out.action = tag.action;
        out.action_content = tag_body(region, tag, 0);

        if (tag.action == ActionType::ToolCall) {
            auto calls = parse_payload(out.action_content);
            if (!calls) return fail_unparseable();
            out.calls = std::move(*calls);
        } else if (tag.action == ActionType::Ask) {
            // Structured question: optional candidate calls plus a question block.
            const Tag inner{ActionType::ToolCall, "<TOOLCALL>", "</TOOLCALL>"};
            std::size_t t_open = out.action_content.find(inner.open);
            if (t_open != std::string::npos) {
                std::string payload = tag_body(out.action_content, inner, t_open);
                // Drop line comments the structured format allows above the payload.
                while (payload.rfind("//", 0) == 0) {
                    std::size_t eol = payload.find('\n');
                    if (eol == std::string::npos) { payload.clear(); break; }
                    payload = trim(payload.substr(eol + 1));
                }
                auto calls = parse_payload(payload);
                if (!calls) return fail_unparseable();
                out.calls = std::move(*calls);
            }
            std::size_t q_open = out.action_content.find("<question>");
            if (q_open != std::string::npos) {
                std::size_t begin = q_open + std::string("<question>").size();
                std::size_t q_close = out.action_content.find("</question>", begin);
                std::size_t end = q_close == std::string::npos ? out.action_content.size() : q_close;
                out.question = trim(out.action_content.substr(begin, end - begin));
            } else {
                out.question = out.action_content;
            }
        }
        return out;
    }

    // No explicit tag: heuristic classification of the region text.
    out.action_content = region;
    std::string lower = lowercase(region);
    if (lower.find("toolcall") != std::string::npos) {
        const Tag inner{ActionType::ToolCall, "<TOOLCALL>", "</TOOLCALL>"};
        std::size_t t_open = region.find(inner.open);
        std::string payload =
            t_open != std::string::npos ? tag_body(region, inner, t_open) : out.action_content;
        auto calls = parse_payload(payload);
        if (!calls) return fail_unparseable();
        out.calls = std::move(*calls);
        out.action = ActionType::ToolCall;
    } else if (region.find('?') != std::string::npos) {
        out.action = ActionType::Ask;
        out.question = region;
    } else if (contains_refusal(lower)) {
        out.action = ActionType::Refuse;
    } else {
        out.action = ActionType::Directly;
    }
    return out;
}

std::string serialize_completion(const ParsedCompletion& parsed) {
    std::string body;
    switch (parsed.action) {
    case ActionType::ToolCall: {
        json payload = json::array();
        for (const auto& call : parsed.calls) payload.push_back(call_to_wire(call));
        body = "<TOOLCALL>\n" + payload.dump() + "\n</TOOLCALL>";
        break;
    }
    case ActionType::Ask: {
        body = "<ASK>\n";
        if (!parsed.calls.empty()) {
            json payload = json::array();
            for (const auto& call : parsed.calls) payload.push_back(call_to_wire(call));
            body += "<TOOLCALL>\n" + payload.dump() + "\n</TOOLCALL>\n";
        }
        body += "<question>\n" + parsed.question + "\n</question>\n</ASK>";
        break;
    }
    case ActionType::Refuse:
        body = "<REFUSE>\n" + parsed.action_content + "\n</REFUSE>";
        break;
    case ActionType::Directly:
        body = "<DIRECTLY>\n" + parsed.action_content + "\n</DIRECTLY>";
        break;
    case ActionType::Unparseable:
        return parsed.answer.value_or("");
    }
    std::string reasoning = parsed.reasoning.value_or("");
    return "<reasoning>\n" + reasoning + "\n</reasoning>\n<answer>\n" + body + "\n</answer>\n";
}

double tool_reward(const CandidateCall* predicted, const CandidateCall* gold) {
    if (!predicted && !gold) return 0.5;
    if (!predicted || !gold) return 0.0;
    if (predicted->tool != gold->tool) return 0.5;
    return predicted->arguments == gold->arguments ? 1.0 : 0.75;
}

double cls_reward(const ParsedCompletion& parsed, ActionType gold_action) {
    if (!parsed.explicit_tag || parsed.action != gold_action) return 0.0;
    return parsed.action_content.size() >= 30 ? 2.0 : 1.5;
}

namespace {

// Product over the call's arguments of per-argument certainty against the
// static schema domains.
double arg_product(const CandidateCall& call, const ToolSchema& tool, double epsilon,
                   bool& cannot_assess) {
    double product = 1.0;
    for (const auto& [name, value] : call.arguments) {
        if (value) continue; // specified contributes 1
        const ParamSpec* spec = tool.find_param(name);
        if (!spec) {
            cannot_assess = true;
            product *= epsilon;
            continue;
        }
        Cardinality size = domain_size(spec->domain);
        if (!size.is_finite)
            product *= epsilon;
        else if (size.count == 0)
            product *= 0.0;
        else
            product *= 1.0 / static_cast<double>(size.count);
    }
    return product;
}

} // namespace

CertaintyResult certainty(const ParsedCompletion& parsed, const Toolkit& toolkit, double epsilon) {
    CertaintyResult result;
    if (parsed.action == ActionType::Refuse || parsed.action == ActionType::Directly ||
        parsed.action == ActionType::Unparseable)
        return result; // 1.0

    if (parsed.calls.empty()) {
        if (parsed.action == ActionType::Ask) {
            // A question that exhibits no candidate gives no evidence of
            // uncertainty; it earns no certainty weight.
            result.value = 0.0;
            result.cannot_assess = true;
        }
        return result;
    }

    const CandidateCall& call = parsed.calls.front();
    const ToolSchema* tool = toolkit.find_tool(call.tool);
    if (!tool) {
        result.cannot_assess = true;
        return result; // 1.0 with the diagnostic flag
    }
    double pi = arg_product(call, *tool, epsilon, result.cannot_assess);
    result.value = parsed.action == ActionType::Ask ? 1.0 - pi : pi;
    return result;
}

RewardBreakdown total_reward(const ParsedCompletion& parsed, const GoldRecord& gold,
                             RewardMode mode, const Toolkit& toolkit, double epsilon) {
    RewardBreakdown b;
    b.fmt_xml = parsed.fmt_xml;
    b.fmt_soft = parsed.fmt_soft;
    b.fmt_strict = parsed.fmt_strict;
    b.r_fmt = parsed.fmt_total();

    const CandidateCall* predicted =
        parsed.action == ActionType::ToolCall && !parsed.calls.empty() ? &parsed.calls.front()
                                                                       : nullptr;
    const CandidateCall* gold_call = gold.call ? &*gold.call : nullptr;
    b.r_tool = tool_reward(predicted, gold_call);
    b.r_cls_base = cls_reward(parsed, gold.action);

    CertaintyResult cert = certainty(parsed, toolkit, epsilon);
    b.cert = cert.value;
    b.cannot_assess = cert.cannot_assess;
    b.r_cls_final = mode == RewardMode::Certainty ? b.cert * b.r_cls_base : b.r_cls_base;
    b.total = b.r_fmt + b.r_tool + b.r_cls_final;
    return b;
}

json ParsedCompletion::to_json() const {
    json calls_json = json::array();
    for (const auto& call : calls) calls_json.push_back(call.to_json());
    return json{{"action", reward::to_string(action)},
                {"reasoning", reasoning ? json(*reasoning) : json(nullptr)},
                {"answer", answer ? json(*answer) : json(nullptr)},
                {"explicit_tag", explicit_tag},
                {"calls", calls_json},
                {"question", question},
                {"fmt_xml", fmt_xml},
                {"fmt_soft", fmt_soft},
                {"fmt_strict", fmt_strict}};
}

json RewardBreakdown::to_json() const {
    return json{{"fmt_xml", fmt_xml},
                {"fmt_soft", fmt_soft},
                {"fmt_strict", fmt_strict},
                {"r_fmt", r_fmt},
                {"r_tool", r_tool},
                {"r_cls_base", r_cls_base},
                {"cert", cert},
                {"cannot_assess", cannot_assess},
                {"r_cls_final", r_cls_final},
                {"total", total}};
}

} // namespace sage::reward
