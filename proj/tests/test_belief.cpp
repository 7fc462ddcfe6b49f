#include <doctest.h>

#include "sage/belief.hpp"
#include "sage/errors.hpp"

using namespace sage;
using namespace sage::belief;

namespace {

Value T(const char* s) { return Value::text(s); }
Value N(double n) { return Value::number(n); }

ParamSpec req(const char* name, ParamDomain domain, bool data_dependent = false) {
    ParamSpec p;
    p.name = name;
    p.domain = std::move(domain);
    p.required = true;
    p.data_dependent = data_dependent;
    return p;
}

ParamSpec opt(const char* name, ParamDomain domain, std::optional<Value> def) {
    ParamSpec p;
    p.name = name;
    p.domain = std::move(domain);
    p.required = false;
    p.default_value = std::move(def);
    return p;
}

// One tool with a two-value and a four-value parameter plus a defaulted
// optional; a second tool with an infinite text parameter.
Toolkit sample_toolkit() {
    Toolkit kit;
    ToolSchema enc;
    enc.name = "enc";
    enc.params.push_back(req("p2", ParamDomain::finite({T("a"), T("b")})));
    enc.params.push_back(req("p4", ParamDomain::finite({T("w"), T("x"), T("y"), T("z")})));
    enc.params.push_back(opt("note", ParamDomain::text(), T("")));
    kit.tools.push_back(std::move(enc));
    ToolSchema free;
    free.name = "free";
    free.params.push_back(req("body", ParamDomain::text()));
    kit.tools.push_back(std::move(free));
    return kit;
}

CandidateCall call(const char* id, const char* tool,
                   std::vector<std::pair<std::string, std::optional<Value>>> args) {
    CandidateCall c;
    c.id = id;
    c.tool = tool;
    for (auto& [k, v] : args) c.arguments[k] = std::move(v);
    return c;
}

ClarifyingQuestion question(const char* id, std::set<AspectId> aspects) {
    ClarifyingQuestion q;
    q.id = id;
    q.text = "?";
    q.aspects = std::move(aspects);
    return q;
}

} // namespace

TEST_CASE("aspect ids parse and print") {
    AspectId a = AspectId::parse("wc.file_name");
    CHECK(a.tool == "wc");
    CHECK(a.param == "file_name");
    CHECK(a.str() == "wc.file_name");
    CHECK_THROWS_AS(AspectId::parse("no-dot"), ParseError);
}

TEST_CASE("engine config validation") {
    EngineConfig config;
    CHECK_NOTHROW(config.validate());
    config.alpha = -1;
    CHECK_THROWS_AS(config.validate(), UsageError);
    config = {};
    config.max_questions = -2;
    CHECK_THROWS_AS(config.validate(), UsageError);
}

TEST_CASE("viability multiplies per-parameter certainties") {
    Toolkit kit = sample_toolkit();
    EngineConfig config;
    auto state = init_belief({call("c0", "enc", {{"p2", std::nullopt}, {"p4", std::nullopt}}),
                              call("c1", "enc", {{"p2", T("a")}, {"p4", std::nullopt}}),
                              call("c2", "enc", {{"p2", T("a")}, {"p4", T("w")}}),
                              call("c3", "free", {{"body", std::nullopt}})},
                             kit, config);
    CHECK(state.weights.at("c0") == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(state.weights.at("c1") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(state.weights.at("c2") == 1.0);
    CHECK(state.weights.at("c3") == doctest::Approx(config.epsilon).epsilon(1e-12));
    // The defaulted optional contributes certainty one even when absent.
    CHECK(viability(state.candidates[2], state, config) == 1.0);
}

TEST_CASE("normalization rescales live weights") {
    auto normalized = normalize({{"c0", 1.0}, {"c1", 0.25}});
    CHECK(normalized.at("c0") == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(normalized.at("c1") == doctest::Approx(0.2).epsilon(1e-12));

    auto with_dead = normalize({{"c0", 0.5}, {"c1", 0.0}});
    CHECK(with_dead.at("c0") == 1.0);
    CHECK(with_dead.at("c1") == 0.0);

    CHECK_THROWS_AS(normalize({{"c0", 0.0}}), DegenerateBelief);
}

TEST_CASE("init collapses singleton domains to assignments") {
    Toolkit kit;
    ToolSchema t;
    t.name = "only";
    t.params.push_back(req("choice", ParamDomain::finite({T("sole")})));
    kit.tools.push_back(std::move(t));
    auto state = init_belief({call("c0", "only", {{"choice", std::nullopt}})}, kit, {});
    CHECK(state.candidates[0].specified("choice"));
    CHECK(*state.candidates[0].arguments.at("choice") == T("sole"));
    CHECK(state.weights.at("c0") == 1.0);
}

TEST_CASE("init rejects malformed candidate sets") {
    Toolkit kit = sample_toolkit();
    CHECK_THROWS_AS(init_belief({call("c0", "ghost", {})}, kit, {}), UsageError);
    CHECK_THROWS_AS(init_belief({call("c0", "enc", {{"zap", std::nullopt}})}, kit, {}),
                    UsageError);
    CHECK_THROWS_AS(init_belief({call("c0", "free", {{"body", T("x")}}),
                                 call("c0", "free", {{"body", T("y")}})},
                                kit, {}),
                    UsageError);
}

TEST_CASE("equality answers eliminate and bind") {
    Toolkit kit = sample_toolkit();
    EngineConfig config;
    auto state = init_belief({call("c0", "enc", {{"p2", T("a")}, {"p4", std::nullopt}}),
                              call("c1", "enc", {{"p2", T("b")}, {"p4", T("w")}})},
                             kit, config);
    AspectId p2{"enc", "p2"};
    auto next = apply_response(state, question("q0", {p2}),
                               {{p2, Constraint::equal_to(T("a"))}}, config, "{}");

    CHECK(next.weights.at("c1") == 0.0);
    CHECK(next.eliminated("c1"));
    CHECK(!next.eliminated("c0"));
    CHECK(next.aspect_counts.at(p2) == 1);
    CHECK(next.step == 1);
    CHECK(next.observations.size() == 1);
    CHECK(next.normalized.at("c0") == 1.0);
    // The original state is untouched.
    CHECK(state.weights.at("c1") == 1.0);
}

TEST_CASE("interval answers narrow working domains and can bind") {
    Toolkit kit;
    ToolSchema t;
    t.name = "pick";
    t.params.push_back(req("n", ParamDomain::numeric_range(0, 50, false)));
    kit.tools.push_back(std::move(t));
    EngineConfig config;
    auto state = init_belief({call("c0", "pick", {{"n", std::nullopt}})}, kit, config);
    CHECK(state.weights.at("c0") == doctest::Approx(config.epsilon));

    AspectId n{"pick", "n"};
    auto narrowed = apply_response(state, question("q0", {n}),
                                   {{n, Constraint::range(30, 100)}}, config);
    auto* dom = narrowed.working_domains.at({"c0", "n"}).get_if<NumericRangeDomain>();
    REQUIRE(dom != nullptr);
    CHECK(dom->lo == 30.0);
    CHECK(dom->hi == 50.0);

    auto bound = apply_response(narrowed, question("q1", {n}),
                                {{n, Constraint::range(42, 42)}}, config);
    CHECK(bound.candidates[0].specified("n"));
    CHECK(*bound.candidates[0].arguments.at("n") == N(42));
    CHECK(bound.weights.at("c0") == 1.0);
}

TEST_CASE("no-information answers still count the ask") {
    Toolkit kit = sample_toolkit();
    EngineConfig config;
    auto state = init_belief({call("c0", "enc", {{"p2", std::nullopt}, {"p4", T("w")}})},
                             kit, config);
    AspectId p2{"enc", "p2"};
    AspectId p4{"enc", "p4"};
    auto next = apply_response(state, question("q0", {p2, p4}),
                               {{p2, Constraint::no_information()}}, config);
    CHECK(next.aspect_counts.at(p2) == 1);
    CHECK(next.aspect_counts.at(p4) == 1);
    CHECK(next.weights.at("c0") == state.weights.at("c0"));
    auto again = apply_response(next, question("q1", {p2}),
                                {{p2, Constraint::no_information()}}, config);
    CHECK(again.aspect_counts.at(p2) == 2);
}

TEST_CASE("an answer eliminating every candidate is contradictory") {
    Toolkit kit = sample_toolkit();
    EngineConfig config;
    auto state = init_belief({call("c0", "enc", {{"p2", T("a")}, {"p4", T("w")}}),
                              call("c1", "enc", {{"p2", T("b")}, {"p4", T("w")}})},
                             kit, config);
    AspectId p2{"enc", "p2"};
    CHECK_THROWS_AS(apply_response(state, question("q0", {p2}),
                                   {{p2, Constraint::not_in({T("a"), T("b")})}}, config),
                    ContradictoryResponse);
}

TEST_CASE("reopening a parameter restores uncertainty then may recollapse") {
    Toolkit kit = sample_toolkit();
    EngineConfig config;
    auto state = init_belief({call("c0", "enc", {{"p2", T("a")}, {"p4", T("w")}})}, kit, config);
    CHECK(state.weights.at("c0") == 1.0);

    reopen_parameter(state, "c0", "p4", ParamDomain::finite({T("x"), T("y")}), config);
    CHECK(!state.candidates[0].specified("p4"));
    CHECK(state.weights.at("c0") == doctest::Approx(0.5).epsilon(1e-12));

    reopen_parameter(state, "c0", "p4", ParamDomain::finite({T("z")}), config);
    CHECK(state.candidates[0].specified("p4"));
    CHECK(*state.candidates[0].arguments.at("p4") == T("z"));
    CHECK(state.weights.at("c0") == 1.0);

    CHECK_THROWS_AS(reopen_parameter(state, "c0", "p4", ParamDomain::finite({}), config),
                    DegenerateBelief);
}

TEST_CASE("live candidate accessors track elimination") {
    Toolkit kit = sample_toolkit();
    EngineConfig config;
    auto state = init_belief({call("c0", "enc", {{"p2", T("a")}, {"p4", T("w")}}),
                              call("c1", "enc", {{"p2", T("b")}, {"p4", std::nullopt}})},
                             kit, config);
    CHECK(state.live_candidates().size() == 2);
    CHECK(state.max_weight() == 1.0);
    CHECK(state.argmax_candidate()->id == "c0");
    CHECK(state.max_normalized() == doctest::Approx(0.8).epsilon(1e-12));

    AspectId p2{"enc", "p2"};
    auto next = apply_response(state, question("q0", {p2}),
                               {{p2, Constraint::equal_to(T("b"))}}, config);
    CHECK(next.live_candidates().size() == 1);
    CHECK(next.argmax_candidate()->id == "c1");
    CHECK(next.max_weight() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(next.max_normalized() == 1.0);
}
