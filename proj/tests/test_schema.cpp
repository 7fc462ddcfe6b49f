#include <doctest.h>

#include <fstream>
#include <sstream>

#include "sage/envs.hpp"
#include "sage/errors.hpp"
#include "sage/schema.hpp"

using namespace sage;

namespace {

Value T(const char* s) { return Value::text(s); }
Value N(double n) { return Value::number(n); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("values compare by kind then content") {
    CHECK(T("a") == T("a"));
    CHECK(T("a") != T("b"));
    CHECK(N(1) != T("1"));
    CHECK(N(1.5) == N(1.5));
    CHECK(Value::boolean(true) != Value::boolean(false));
    CHECK(Value::list({N(1), N(2)}) == Value::list({N(1), N(2)}));
    CHECK(Value::list({N(1), N(2)}) != Value::list({N(2), N(1)}));
    CHECK(T("a") < T("b"));
}

TEST_CASE("value json round trip") {
    for (const Value& v : {T("x"), N(3.25), Value::boolean(true), Value::list({T("a"), N(1)})}) {
        CHECK(Value::from_json(v.to_json()) == v);
    }
    CHECK_THROWS_AS(Value::from_json(json(nullptr)), ParseError);
    CHECK_THROWS_AS(Value::from_json(json::object()), ParseError);
}

TEST_CASE("domain sizes") {
    CHECK(domain_size(ParamDomain::finite({T("a"), T("b"), T("c")})) == Cardinality::finite(3));
    CHECK(domain_size(ParamDomain::boolean()) == Cardinality::finite(2));
    CHECK(domain_size(ParamDomain::numeric_range(1, 10, true)) == Cardinality::finite(10));
    CHECK(domain_size(ParamDomain::numeric_range(5, 5, false)) == Cardinality::finite(1));
    CHECK(!domain_size(ParamDomain::numeric_range(0, 1, false)).is_finite);
    CHECK(!domain_size(ParamDomain::text()).is_finite);
    CHECK(!domain_size(ParamDomain::list_of(ParamDomain::boolean())).is_finite);
    CHECK(domain_size(ParamDomain::estimated_finite({T("x")}, 40)) == Cardinality::finite(40));
}

TEST_CASE("domain membership") {
    auto finite = ParamDomain::finite({T("a"), T("b")});
    CHECK(value_in_domain(T("a"), finite));
    CHECK(!value_in_domain(T("c"), finite));
    CHECK(!value_in_domain(N(1), finite));

    auto range = ParamDomain::numeric_range(1, 100, true);
    CHECK(value_in_domain(N(1), range));
    CHECK(value_in_domain(N(100), range));
    CHECK(!value_in_domain(N(0), range));
    CHECK(!value_in_domain(N(2.5), range));
    CHECK(value_in_domain(N(2.5), ParamDomain::numeric_range(0, 10, false)));

    // Estimated domains list examples, not members; same-kind values pass.
    auto estimated = ParamDomain::estimated_finite({T("report.txt")}, 12);
    CHECK(value_in_domain(T("anything.txt"), estimated));
    CHECK(!value_in_domain(N(3), estimated));

    auto list = ParamDomain::list_of(ParamDomain::numeric_range(0, 5, true));
    CHECK(value_in_domain(Value::list({N(1), N(4)}), list));
    CHECK(!value_in_domain(Value::list({N(1), N(9)}), list));
    CHECK(!value_in_domain(N(1), list));
}

TEST_CASE("constraint satisfaction") {
    CHECK(satisfies(T("a"), Constraint::equal_to(T("a"))));
    CHECK(!satisfies(T("a"), Constraint::equal_to(T("b"))));
    CHECK(satisfies(T("a"), Constraint::one_of({T("a"), T("b")})));
    CHECK(!satisfies(T("c"), Constraint::one_of({T("a"), T("b")})));
    CHECK(satisfies(T("c"), Constraint::not_in({T("a"), T("b")})));
    CHECK(!satisfies(T("a"), Constraint::not_in({T("a")})));
    CHECK(satisfies(N(4), Constraint::range(0, 5)));
    CHECK(!satisfies(N(6), Constraint::range(0, 5)));
    // A numeric interval admits no non-numeric value.
    CHECK(!satisfies(T("4"), Constraint::range(0, 5)));
    CHECK(!intersect_domain(ParamDomain::text(), Constraint::range(0, 5)).has_value());
    CHECK(satisfies(T("anything"), Constraint::no_information()));
}

TEST_CASE("domain intersection") {
    auto range = ParamDomain::numeric_range(0, 50, false);
    auto narrowed = intersect_domain(range, Constraint::range(30, 100));
    REQUIRE(narrowed.has_value());
    auto* r = narrowed->get_if<NumericRangeDomain>();
    REQUIRE(r != nullptr);
    CHECK(r->lo == 30.0);
    CHECK(r->hi == 50.0);
    CHECK(!r->integer_valued);

    CHECK(!intersect_domain(range, Constraint::range(60, 70)).has_value());

    auto finite = ParamDomain::finite({T("a"), T("b"), T("c")});
    auto kept = intersect_domain(finite, Constraint::not_in({T("b")}));
    REQUIRE(kept.has_value());
    CHECK(domain_size(*kept) == Cardinality::finite(2));
    CHECK(!intersect_domain(finite, Constraint::equal_to(T("z"))).has_value());

    auto only = intersect_domain(finite, Constraint::one_of({T("c"), T("z")}));
    REQUIRE(only.has_value());
    CHECK(singleton_value(*only) == T("c"));

    // Equality against an infinite domain pins it to one member.
    auto pinned = intersect_domain(ParamDomain::text(), Constraint::equal_to(T("plan.txt")));
    REQUIRE(pinned.has_value());
    CHECK(singleton_value(*pinned) == T("plan.txt"));

    auto same = intersect_domain(finite, Constraint::no_information());
    REQUIRE(same.has_value());
    CHECK(domain_size(*same) == Cardinality::finite(3));

    auto yes = intersect_domain(ParamDomain::boolean(), Constraint::equal_to(Value::boolean(true)));
    REQUIRE(yes.has_value());
    CHECK(singleton_value(*yes) == Value::boolean(true));
}

TEST_CASE("singleton detection") {
    CHECK(singleton_value(ParamDomain::finite({N(7)})) == N(7));
    CHECK(singleton_value(ParamDomain::numeric_range(5, 5, true)) == N(5));
    CHECK(!singleton_value(ParamDomain::finite({N(1), N(2)})).has_value());
    CHECK(!singleton_value(ParamDomain::text()).has_value());
    CHECK(!singleton_value(ParamDomain::boolean()).has_value());
}

TEST_CASE("toolkit serialization is a byte-stable round trip") {
    for (const auto& domain : envs::environment_names()) {
        Toolkit kit = envs::builtin_toolkit(domain);
        std::string text = serialize_toolkit(kit);
        Toolkit reparsed = parse_toolkit(text);
        CHECK(reparsed == kit);
        CHECK(serialize_toolkit(reparsed) == text);
    }
}

TEST_CASE("committed toolkit and fixture files match the builtins") {
    for (const auto& domain : envs::environment_names()) {
        CHECK(read_file(std::string(SAGE_DATA_DIR) + "/toolkits/" + domain + ".json") ==
              serialize_toolkit(envs::builtin_toolkit(domain)));
        CHECK(read_file(std::string(SAGE_DATA_DIR) + "/fixtures/" + domain + ".json") ==
              envs::default_fixture(domain).dump(2) + "\n");
    }
}

TEST_CASE("candidate call json round trip keeps unknowns") {
    CandidateCall call;
    call.id = "c000";
    call.tool = "wc";
    call.arguments["file_name"] = std::nullopt;
    call.arguments["mode"] = T("w");
    json j = call.to_json();
    CHECK(j.at("arguments").at("file_name") == "<UNK>");
    CandidateCall back = CandidateCall::from_json(j, "test");
    CHECK(back == call);
    CHECK(!back.specified("file_name"));
    CHECK(back.specified("mode"));
    CHECK(!back.fully_specified());
}

TEST_CASE("call validation catches unknown names and bad values") {
    Toolkit kit = envs::builtin_toolkit("filesystem");
    CandidateCall ok;
    ok.tool = "cat";
    ok.arguments["file_name"] = T("data.csv");
    CHECK(!validate_call(kit, ok).has_value());

    CandidateCall ghost_tool = ok;
    ghost_tool.tool = "open";
    CHECK(validate_call(kit, ghost_tool).has_value());

    CandidateCall ghost_param = ok;
    ghost_param.arguments["pattern"] = T("x");
    CHECK(validate_call(kit, ghost_param).has_value());

    CandidateCall bad_kind = ok;
    bad_kind.arguments["file_name"] = N(3);
    CHECK(validate_call(kit, bad_kind).has_value());
}

TEST_CASE("constraint json round trip") {
    auto roundtrip = [](const Constraint& c) {
        return Constraint::from_json(c.to_json(), "test");
    };
    CHECK(roundtrip(Constraint::equal_to(T("a"))).get_if<EqualTo>()->value == T("a"));
    CHECK(roundtrip(Constraint::one_of({T("a"), T("b")})).get_if<OneOf>()->values.size() == 2);
    CHECK(roundtrip(Constraint::not_in({N(3)})).get_if<NotIn>()->values.at(0) == N(3));
    auto r = roundtrip(Constraint::range(1, 9));
    CHECK(r.get_if<RangeConstraint>()->lo == 1.0);
    CHECK(r.get_if<RangeConstraint>()->hi == 9.0);
    CHECK(roundtrip(Constraint::no_information()).is_no_information());
    CHECK_THROWS_AS(Constraint::from_json(json{{"kind", "mystery"}}, "test"), ParseError);
}
