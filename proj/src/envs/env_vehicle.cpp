// Vehicle environment: dashboard state with fuel, engine, doors and climate.

#include <cmath>

#include "sage/envs.hpp"
#include "sage/errors.hpp"

namespace sage::envs {

namespace {

constexpr double kTankCapacity = 50.0;
constexpr double kMilesPerFuelUnit = 20.0;

class VehicleEnv final : public Environment {
public:
    explicit VehicleEnv(const json& fixture)
        : Environment("vehicle", builtin_toolkit("vehicle"), rules()) {
        try {
            state_ = default_fixture("vehicle");
            if (!fixture.is_object()) throw ParseError("vehicle fixture: must be an object");
            state_.update(fixture);
            double fuel = state_.at("fuel").get<double>();
            if (fuel < 0 || fuel > kTankCapacity)
                throw ParseError("vehicle fixture: \"fuel\" must be within tank capacity");
        } catch (const json::exception& e) {
            throw ParseError(std::string("vehicle fixture: ") + e.what());
        }
    }

    std::unique_ptr<Environment> clone() const override {
        return std::make_unique<VehicleEnv>(*this);
    }

    json state_snapshot() const override { return state_; }

protected:
    std::optional<ParamDomain> dynamic_domain(const std::string& tool,
                                              const std::string& param) const override {
        if (tool == "fillFuelTank" && param == "fuelAmount") {
            double remaining = kTankCapacity - state_.at("fuel").get<double>();
            return ParamDomain::numeric_range(0, remaining, false);
        }
        if (tool == "setCruiseControl" && param == "speed") {
            if (state_.at("engine").get<std::string>() != "running")
                return ParamDomain::finite({});
            std::vector<Value> speeds;
            for (int s = 0; s <= 120; s += 5) speeds.push_back(Value::number(s));
            return ParamDomain::finite(std::move(speeds));
        }
        return std::nullopt;
    }

    ExecutionResult dispatch(const CandidateCall& call) override {
        const std::string& t = call.tool;

        if (auto bad = check_domains(call)) return *bad;

        if (t == "startEngine") {
            const std::string mode = arg(call, "ignitionMode")->as_text();
            if (mode == "START") {
                if (state_.at("engine") == "running")
                    return ExecutionResult::failure(ErrorKind::Duplicate,
                                                    "engine is already running", "ignitionMode");
                if (state_.at("fuel").get<double>() <= 0)
                    return ExecutionResult::failure(ErrorKind::OutOfRange, "fuel tank is empty",
                                                    "ignitionMode");
                state_["engine"] = "running";
            } else {
                state_["engine"] = "stopped";
                state_["cruise"]["active"] = false;
                state_["speed"] = 0.0;
            }
            return ExecutionResult::success("engine " + state_.at("engine").get<std::string>());
        }

        if (t == "fillFuelTank") {
            double amount = arg(call, "fuelAmount")->as_number();
            double fuel = state_.at("fuel").get<double>() + amount;
            state_["fuel"] = fuel;
            return ExecutionResult::success("fuel level " + std::to_string(fuel), json(fuel));
        }

        if (t == "lockDoors") {
            bool unlock = arg(call, "unlock")->as_boolean();
            const auto& doors = arg(call, "door")->as_list();
            for (const Value& d : doors)
                state_["doors"][d.as_text()] = unlock ? "unlocked" : "locked";
            return ExecutionResult::success(std::to_string(doors.size()) + " doors " +
                                            (unlock ? "unlocked" : "locked"));
        }

        if (t == "adjustClimateControl") {
            state_["climate"] = {{"temperature", arg(call, "temperature")->as_number()},
                                 {"unit", arg_or_default(call, "unit")->as_text()},
                                 {"fanSpeed", arg_or_default(call, "fanSpeed")->as_number()},
                                 {"mode", arg_or_default(call, "mode")->as_text()}};
            return ExecutionResult::success("climate updated", state_.at("climate"));
        }

        if (t == "get_outside_temperature_from_google" ||
            t == "get_outside_temperature_from_weather_com") {
            double temp = state_.at("outside_temperature").get<double>();
            return ExecutionResult::success(std::to_string(temp), json(temp));
        }

        if (t == "setHeadlights") {
            state_["headlights"] = arg(call, "mode")->as_text();
            return ExecutionResult::success("headlights " + arg(call, "mode")->as_text());
        }

        if (t == "displayCarStatus") {
            const std::string option = arg(call, "option")->as_text();
            json slice;
            if (option == "fuel") slice = state_.at("fuel");
            else if (option == "battery") slice = state_.at("battery_voltage");
            else if (option == "doors") slice = state_.at("doors");
            else if (option == "climate") slice = state_.at("climate");
            else if (option == "headlights") slice = state_.at("headlights");
            else if (option == "parkingBrake") slice = state_.at("parking_brake");
            else if (option == "brakePedal") slice = state_.at("brake_pedal");
            else slice = state_.at("engine");
            return ExecutionResult::success(option + " status", slice);
        }

        if (t == "activateParkingBrake") {
            const std::string mode = arg(call, "mode")->as_text();
            state_["parking_brake"] = mode == "engage" ? "engaged" : "released";
            return ExecutionResult::success("parking brake " +
                                            state_.at("parking_brake").get<std::string>());
        }

        if (t == "pressBrakePedal") {
            double pos = arg(call, "pedalPosition")->as_number();
            state_["brake_pedal"] = pos;
            if (pos > 0) state_["speed"] = 0.0;
            return ExecutionResult::success("brake pedal at " + std::to_string(pos));
        }

        if (t == "releaseBrakePedal") {
            state_["brake_pedal"] = 0.0;
            return ExecutionResult::success("brake pedal released");
        }

        if (t == "setCruiseControl") {
            double speed = arg(call, "speed")->as_number();
            bool activate = arg(call, "activate")->as_boolean();
            state_["cruise"] = {{"active", activate},
                                {"speed", speed},
                                {"distance", arg_or_default(call, "distanceToNextVehicle")
                                                 ->as_number()}};
            if (activate) state_["speed"] = speed;
            return ExecutionResult::success(activate ? "cruise control engaged"
                                                     : "cruise control off",
                                            state_.at("cruise"));
        }

        if (t == "get_current_speed") {
            double speed = state_.at("speed").get<double>();
            return ExecutionResult::success(std::to_string(speed), json(speed));
        }

        if (t == "display_log") {
            const auto& messages = arg(call, "messages")->as_list();
            json out = json::array();
            for (const Value& m : messages) out.push_back(m.as_text());
            return ExecutionResult::success("logged " + std::to_string(messages.size()) +
                                                " messages",
                                            out);
        }

        if (t == "estimate_drive_feasibility_by_mileage") {
            double distance = arg(call, "distance")->as_number();
            bool feasible = distance <= state_.at("fuel").get<double>() * kMilesPerFuelUnit;
            return ExecutionResult::success(feasible ? "feasible" : "not feasible",
                                            json(feasible));
        }

        if (t == "liter_to_gallon") {
            double out = arg(call, "liter")->as_number() * 0.264172;
            return ExecutionResult::success(std::to_string(out), json(out));
        }

        if (t == "gallon_to_liter") {
            double out = arg(call, "gallon")->as_number() * 3.78541;
            return ExecutionResult::success(std::to_string(out), json(out));
        }

        if (t == "estimate_distance") {
            const std::string a = arg(call, "cityA")->as_text();
            const std::string b = arg(call, "cityB")->as_text();
            if (a == b) return ExecutionResult::success("0", json(0.0));
            const json& distances = state_.at("distances");
            for (const std::string& key : {a + "-" + b, b + "-" + a}) {
                if (distances.contains(key)) {
                    double d = distances.at(key).get<double>();
                    return ExecutionResult::success(std::to_string(d), json(d));
                }
            }
            return ExecutionResult::failure(ErrorKind::MissingEntity,
                                            "no distance data between " + a + " and " + b,
                                            "cityB");
        }

        if (t == "get_zipcode_based_on_city") {
            const std::string city = arg(call, "city")->as_text();
            const std::string zip = state_.at("zipcodes").at(city).get<std::string>();
            return ExecutionResult::success(zip, json(zip));
        }

        if (t == "set_navigation") {
            return ExecutionResult::success("navigating to " +
                                            arg(call, "destination")->as_text());
        }

        if (t == "check_tire_pressure")
            return ExecutionResult::success("tire pressure", state_.at("tire_pressure"));

        if (t == "find_nearest_tire_shop")
            return ExecutionResult::success("nearest tire shop: Main Street Auto");

        throw UsageError("vehicle: unhandled tool " + t);
    }

private:
    static std::vector<DomainUpdateRule> rules() {
        return {
            DomainUpdateRule{{"fillFuelTank"},
                             {belief::AspectId{"fillFuelTank", "fuelAmount"}},
                             "remaining tank capacity shrinks as fuel is added"},
            DomainUpdateRule{{"startEngine"},
                             {belief::AspectId{"setCruiseControl", "speed"}},
                             "cruise speeds are available only while the engine runs"},
        };
    }

    json state_;
};

} // namespace

std::unique_ptr<Environment> make_vehicle_env(const json& fixture) {
    return std::make_unique<VehicleEnv>(fixture);
}

} // namespace sage::envs
