// Travel environment: credit cards, a route table, bookings and budgets.

#include <algorithm>

#include "sage/envs.hpp"
#include "sage/errors.hpp"

namespace sage::envs {

namespace {

constexpr double kMaxBookingCost = 10000.0;
constexpr double kMaxInsuranceCost = 1000.0;

class TravelEnv final : public Environment {
public:
    explicit TravelEnv(const json& fixture)
        : Environment("travel", builtin_toolkit("travel"), rules()) {
        try {
            state_ = default_fixture("travel");
            if (!fixture.is_object()) throw ParseError("travel fixture: must be an object");
            state_.update(fixture);
            for (const auto& route : state_.at("routes")) {
                if (!route.contains("from") || !route.contains("to") || !route.contains("cost"))
                    throw ParseError("travel fixture: each route needs from, to and cost");
            }
        } catch (const json::exception& e) {
            throw ParseError(std::string("travel fixture: ") + e.what());
        }
    }

    std::unique_ptr<Environment> clone() const override {
        return std::make_unique<TravelEnv>(*this);
    }

    json state_snapshot() const override { return state_; }

protected:
    std::optional<ParamDomain> dynamic_domain(const std::string& tool,
                                              const std::string& param) const override {
        if (param == "travel_from" || param == "travel_to") return finite_from(airports());
        if (param == "card_id") return finite_from(keys(state_.at("cards")));
        if (param == "booking_id") return finite_from(keys(state_.at("bookings")));
        if (tool == "book_flight" && param == "travel_cost") {
            double cap = kMaxBookingCost;
            const json& budget = state_.at("budget_limit");
            if (budget.is_number()) cap = std::min(cap, budget.get<double>());
            return ParamDomain::numeric_range(0, cap, false);
        }
        return std::nullopt;
    }

    ExecutionResult dispatch(const CandidateCall& call) override {
        const std::string& t = call.tool;

        if (t == "get_budget_fiscal_year")
            return ExecutionResult::success("fiscal year " +
                                                state_.at("fiscal_year").get<std::string>(),
                                            state_.at("fiscal_year"));

        if (t == "register_credit_card") {
            if (auto bad = check_domains(call)) return *bad;
            const std::string number = arg(call, "card_number")->as_text();
            for (const auto& [id, card] : state_.at("cards").items()) {
                (void)id;
                if (card.at("card_number") == number)
                    return ExecutionResult::failure(ErrorKind::Duplicate,
                                                    "card is already registered", "card_number");
            }
            std::string suffix = number.size() >= 4 ? number.substr(number.size() - 4) : number;
            std::string id = "card_" + suffix;
            if (state_.at("cards").contains(id))
                return ExecutionResult::failure(ErrorKind::Duplicate,
                                                "card id already exists: " + id, "card_number");
            state_["cards"][id] = {{"card_number", number}, {"balance", 0.0}};
            return ExecutionResult::success("registered " + id, json(id));
        }

        if (t == "get_flight_cost") {
            if (auto bad = check_domains(call)) return *bad;
            if (auto bad = check_route(call)) return *bad;
            double base = route_cost(arg(call, "travel_from")->as_text(),
                                     arg(call, "travel_to")->as_text());
            double cost = base * class_multiplier(arg(call, "travel_class")->as_text());
            return ExecutionResult::success("flight costs " + std::to_string(cost), json(cost));
        }

        if (t == "get_credit_card_balance") {
            if (auto bad = check_domains(call)) return *bad;
            const json& card = state_.at("cards").at(arg(call, "card_id")->as_text());
            return ExecutionResult::success("balance " + card.at("balance").dump(),
                                            card.at("balance"));
        }

        if (t == "book_flight") {
            if (auto bad = check_domains(call, {"travel_cost"})) return *bad;
            if (auto bad = check_route(call)) return *bad;
            double cost = arg(call, "travel_cost")->as_number();
            if (cost < 0)
                return ExecutionResult::failure(ErrorKind::Financial,
                                                "payment amount cannot be negative", "travel_cost");
            if (cost > kMaxBookingCost)
                return ExecutionResult::failure(ErrorKind::OutOfRange,
                                                "cost exceeds the booking cap", "travel_cost");
            const json& budget = state_.at("budget_limit");
            if (budget.is_number() && cost > budget.get<double>())
                return ExecutionResult::failure(ErrorKind::Financial,
                                                "cost exceeds the budget limit", "travel_cost");
            json& card = state_["cards"][arg(call, "card_id")->as_text()];
            if (cost > card.at("balance").get<double>())
                return ExecutionResult::failure(ErrorKind::Financial,
                                                "insufficient funds on the card", "travel_cost");
            card["balance"] = card.at("balance").get<double>() - cost;
            int n = state_.at("next_booking").get<int>();
            state_["next_booking"] = n + 1;
            std::string id = "BK" + std::to_string(n);
            state_["bookings"][id] = {{"card_id", arg(call, "card_id")->as_text()},
                                      {"travel_date", arg(call, "travel_date")->as_text()},
                                      {"travel_from", arg(call, "travel_from")->as_text()},
                                      {"travel_to", arg(call, "travel_to")->as_text()},
                                      {"travel_class", arg(call, "travel_class")->as_text()},
                                      {"travel_cost", cost}};
            return ExecutionResult::success("booked " + id, json(id));
        }

        if (t == "retrieve_invoice") {
            const Value* booking = arg(call, "booking_id");
            const Value* insurance = arg(call, "insurance_id");
            if (booking == nullptr && insurance == nullptr)
                return ExecutionResult::failure(ErrorKind::MissingEntity,
                                                "provide a booking_id or an insurance_id",
                                                "booking_id");
            if (auto bad = check_domains(call)) return *bad;
            if (booking != nullptr) {
                const json& record = state_.at("bookings").at(booking->as_text());
                return ExecutionResult::success("invoice for " + booking->as_text(), record);
            }
            const json& insurances = state_.at("insurances");
            if (!insurances.contains(insurance->as_text()))
                return ExecutionResult::failure(ErrorKind::MissingEntity,
                                                "no such insurance: " + insurance->as_text(),
                                                "insurance_id");
            return ExecutionResult::success("invoice for " + insurance->as_text(),
                                            insurances.at(insurance->as_text()));
        }

        if (t == "list_all_airports") {
            json out = json::array();
            for (const auto& a : airports()) out.push_back(a);
            return ExecutionResult::success("listed airports", out);
        }

        if (t == "cancel_booking") {
            if (auto bad = check_domains(call)) return *bad;
            const std::string id = arg(call, "booking_id")->as_text();
            const json record = state_.at("bookings").at(id);
            json& card = state_["cards"][record.at("card_id").get<std::string>()];
            card["balance"] =
                card.at("balance").get<double>() + record.at("travel_cost").get<double>();
            state_["bookings"].erase(id);
            return ExecutionResult::success("cancelled " + id, record.at("travel_cost"));
        }

        if (t == "compute_exchange_rate") {
            if (auto bad = check_domains(call)) return *bad;
            const json& rates = state_.at("exchange_rates");
            double base = rates.at(arg(call, "base_currency")->as_text()).get<double>();
            double target = rates.at(arg(call, "target_currency")->as_text()).get<double>();
            double out = arg(call, "value")->as_number() * target / base;
            return ExecutionResult::success("converted value " + std::to_string(out), json(out));
        }

        if (t == "verify_traveler_information") {
            if (auto bad = check_domains(call)) return *bad;
            const json& traveler = state_.at("traveler");
            bool verified = traveler.at("first_name") == arg(call, "first_name")->as_text() &&
                            traveler.at("last_name") == arg(call, "last_name")->as_text() &&
                            traveler.at("date_of_birth") == arg(call, "date_of_birth")->as_text() &&
                            traveler.at("passport_number") ==
                                arg(call, "passport_number")->as_text();
            return ExecutionResult::success(verified ? "traveler verified"
                                                     : "traveler details do not match",
                                            json(verified));
        }

        if (t == "set_budget_limit") {
            if (auto bad = check_domains(call)) return *bad;
            state_["budget_limit"] = arg(call, "budget_limit")->as_number();
            return ExecutionResult::success("budget limit set", state_.at("budget_limit"));
        }

        if (t == "get_nearest_airport_by_city") {
            if (auto bad = check_domains(call)) return *bad;
            const json& airport = state_.at("nearest_airport").at(arg(call, "location")->as_text());
            return ExecutionResult::success(airport.get<std::string>(), airport);
        }

        if (t == "purchase_insurance") {
            if (auto bad = check_domains(call, {"insurance_cost"})) return *bad;
            double cost = arg(call, "insurance_cost")->as_number();
            if (cost < 0)
                return ExecutionResult::failure(ErrorKind::Financial,
                                                "payment amount cannot be negative",
                                                "insurance_cost");
            if (cost > kMaxInsuranceCost)
                return ExecutionResult::failure(ErrorKind::OutOfRange,
                                                "cost exceeds the insurance cap", "insurance_cost");
            json& card = state_["cards"][arg(call, "card_id")->as_text()];
            if (cost > card.at("balance").get<double>())
                return ExecutionResult::failure(ErrorKind::Financial,
                                                "insufficient funds on the card", "insurance_cost");
            card["balance"] = card.at("balance").get<double>() - cost;
            if (!state_.contains("insurances")) state_["insurances"] = json::object();
            std::string id = "INS" + std::to_string(1000 + state_.at("insurances").size());
            state_["insurances"][id] = {{"insurance_type", arg(call, "insurance_type")->as_text()},
                                        {"booking_id", arg(call, "booking_id")->as_text()},
                                        {"insurance_cost", cost}};
            return ExecutionResult::success("purchased " + id, json(id));
        }

        if (t == "contact_customer_support") {
            if (auto bad = check_domains(call)) return *bad;
            return ExecutionResult::success("support ticket opened for " +
                                            arg(call, "booking_id")->as_text());
        }

        if (t == "get_all_credit_cards")
            return ExecutionResult::success("listed cards", state_.at("cards"));

        throw UsageError("travel: unhandled tool " + t);
    }

private:
    static std::vector<DomainUpdateRule> rules() {
        auto aspects = [](std::initializer_list<std::pair<const char*, const char*>> list) {
            std::vector<belief::AspectId> out;
            for (const auto& [tool, param] : list) out.push_back(belief::AspectId{tool, param});
            return out;
        };
        return {
            DomainUpdateRule{{"register_credit_card"},
                             aspects({{"get_credit_card_balance", "card_id"},
                                      {"book_flight", "card_id"},
                                      {"purchase_insurance", "card_id"}}),
                             "card ids follow the registered cards"},
            DomainUpdateRule{{"book_flight", "cancel_booking"},
                             aspects({{"retrieve_invoice", "booking_id"},
                                      {"cancel_booking", "booking_id"},
                                      {"purchase_insurance", "booking_id"},
                                      {"contact_customer_support", "booking_id"}}),
                             "booking ids follow the active bookings"},
            DomainUpdateRule{{"set_budget_limit"},
                             aspects({{"book_flight", "travel_cost"}}),
                             "budget limits cap the bookable cost"},
            DomainUpdateRule{{},
                             aspects({{"get_flight_cost", "travel_from"},
                                      {"get_flight_cost", "travel_to"},
                                      {"book_flight", "travel_from"},
                                      {"book_flight", "travel_to"}}),
                             "airport codes come from the fixture route table"},
        };
    }

    static ParamDomain finite_from(std::vector<std::string> names) {
        std::vector<Value> vs;
        for (auto& n : names) vs.push_back(Value::text(std::move(n)));
        return ParamDomain::finite(std::move(vs));
    }

    static std::vector<std::string> keys(const json& object) {
        std::vector<std::string> out;
        for (const auto& [k, v] : object.items()) {
            (void)v;
            out.push_back(k);
        }
        return out;
    }

    // Union of route endpoints in first-appearance order.
    std::vector<std::string> airports() const {
        std::vector<std::string> out;
        auto add = [&out](const std::string& a) {
            if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
        };
        for (const auto& route : state_.at("routes")) {
            add(route.at("from").get<std::string>());
            add(route.at("to").get<std::string>());
        }
        return out;
    }

    double route_cost(const std::string& from, const std::string& to) const {
        for (const auto& route : state_.at("routes"))
            if (route.at("from") == from && route.at("to") == to)
                return route.at("cost").get<double>();
        return -1;
    }

    std::optional<ExecutionResult> check_route(const CandidateCall& call) const {
        const std::string from = arg(call, "travel_from")->as_text();
        const std::string to = arg(call, "travel_to")->as_text();
        if (from == to)
            return ExecutionResult::failure(ErrorKind::MissingEntity,
                                            "departure and destination airports are identical",
                                            "travel_to");
        if (route_cost(from, to) < 0)
            return ExecutionResult::failure(ErrorKind::MissingEntity,
                                            "no route between " + from + " and " + to, "travel_to");
        return std::nullopt;
    }

    static double class_multiplier(const std::string& travel_class) {
        if (travel_class == "business") return 2.0;
        if (travel_class == "first") return 4.0;
        return 1.0;
    }

    json state_;
};

} // namespace

std::unique_ptr<Environment> make_travel_env(const json& fixture) {
    return std::make_unique<TravelEnv>(fixture);
}

} // namespace sage::envs
