// Corruption heuristics: rewrite a valid call so it fails with a declared
// error kind. Deterministic per seed; tools with no applicable heuristic are
// not corruptible.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

#include "sage/envs.hpp"
#include "sage/errors.hpp"

namespace sage::envs {

namespace {

using Rng = std::mt19937_64;

struct Option {
    CandidateCall call;
    ErrorKind kind;
    std::string heuristic;
    std::string param;
};

CandidateCall with_arg(const CandidateCall& call, const std::string& param, Value value) {
    CandidateCall out = call;
    out.arguments[param] = std::move(value);
    return out;
}

const Value* specified(const CandidateCall& call, const std::string& param) {
    auto it = call.arguments.find(param);
    if (it == call.arguments.end() || !it->second.has_value()) return nullptr;
    return &*it->second;
}

std::string flip_case(const std::string& s) {
    bool has_lower = std::any_of(s.begin(), s.end(),
                                 [](unsigned char c) { return std::islower(c) != 0; });
    std::string out = s;
    if (has_lower)
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    else
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

template <typename T>
T pick(Rng& rng, const std::vector<T>& options) {
    return options[rng() % options.size()];
}

// Entries of the fixture directory the filesystem cwd points at.
std::vector<std::string> cwd_entries(const json& snapshot) {
    const json* node = &snapshot.at("root");
    std::string cwd = snapshot.at("cwd").get<std::string>();
    std::string part;
    for (char c : cwd.substr(1)) {
        if (c == '/') {
            if (!part.empty()) node = &node->at("dirs").at(part);
            part.clear();
        } else {
            part.push_back(c);
        }
    }
    if (!part.empty()) node = &node->at("dirs").at(part);
    std::vector<std::string> names;
    for (const auto& [name, content] : node->at("files").items()) {
        (void)content;
        names.push_back(name);
    }
    for (const auto& [name, child] : node->at("dirs").items()) {
        (void)child;
        names.push_back(name);
    }
    return names;
}

void filesystem_options(const CandidateCall& call, const json& snapshot, Rng& rng,
                        std::vector<Option>& out) {
    const std::string& t = call.tool;

    auto forbidden = [&](const std::string& param) {
        if (const Value* v = specified(call, param)) {
            std::string corrupted = v->as_text() + pick<std::string>(rng, {"|", "?", "\\"});
            out.push_back({with_arg(call, param, Value::text(corrupted)), ErrorKind::Path,
                           "forbidden-character", param});
        }
    };
    if (t == "mkdir") forbidden("dir_name");
    if (t == "touch") forbidden("file_name");
    if (t == "cat") forbidden("file_name");

    auto traversal = [&](const std::string& param) {
        if (const Value* v = specified(call, param)) {
            std::string corrupted =
                pick<std::string>(rng, {"../", "/root/"}) + v->as_text();
            out.push_back({with_arg(call, param, Value::text(corrupted)), ErrorKind::Path,
                           "path-traversal", param});
        }
    };
    if (t == "cd") traversal("folder");
    if (t == "mv" || t == "cp") traversal("destination");
    if (t == "find") traversal("path");

    auto nonexistent = [&](const std::string& param) {
        if (specified(call, param) != nullptr) {
            std::string corrupted = "ghost_" + std::to_string(rng() % 1000) + ".txt";
            out.push_back({with_arg(call, param, Value::text(corrupted)),
                           ErrorKind::MissingEntity, "missing-entity", param});
        }
    };
    if (t == "cd") nonexistent("folder");
    if (t == "cat" || t == "wc" || t == "sort" || t == "grep" || t == "tail" || t == "rm")
        nonexistent("file_name");
    if (t == "diff") nonexistent("file_name1");
    if (t == "mv" || t == "cp") nonexistent("source");
    if (t == "rmdir") nonexistent("dir_name");

    if (t == "mkdir" || t == "touch") {
        const std::string param = t == "mkdir" ? "dir_name" : "file_name";
        auto entries = cwd_entries(snapshot);
        if (specified(call, param) != nullptr && !entries.empty()) {
            out.push_back({with_arg(call, param, Value::text(pick(rng, entries))),
                           ErrorKind::Duplicate, "duplicate-entry", param});
        }
    }
}

void document_options(const CandidateCall& call, const json& snapshot, Rng& rng,
                      std::vector<Option>& out) {
    const std::string& t = call.tool;
    const int pages = snapshot.at("num_pages").get<int>();

    for (const std::string param : {"page_num", "start_page", "end_page"}) {
        if (specified(call, param) == nullptr) continue;
        int beyond = pages + (t == "add_page_with_text" ? 2 : 1) + static_cast<int>(rng() % 5);
        double corrupted = pick<double>(rng, {0.0, -3.0, static_cast<double>(beyond)});
        out.push_back({with_arg(call, param, Value::number(corrupted)), ErrorKind::OutOfRange,
                       "invalid-page", param});
    }

    if (t == "convert" && specified(call, "format") != nullptr) {
        std::string corrupted = pick<std::string>(rng, {"webp", "svg", "bmp"});
        out.push_back({with_arg(call, "format", Value::text(corrupted)), ErrorKind::InvalidEnum,
                       "unsupported-format", "format"});
    }

    if (specified(call, "font_size") != nullptr) {
        double corrupted = pick<double>(rng, {7.0, 73.0, 100.0, -5.0});
        out.push_back({with_arg(call, "font_size", Value::number(corrupted)),
                       ErrorKind::OutOfRange, "value-out-of-range", "font_size"});
    }
    if (t == "add_watermark" && specified(call, "transparency") != nullptr) {
        double corrupted = pick<double>(rng, {-0.2, 1.5, 2.0});
        out.push_back({with_arg(call, "transparency", Value::number(corrupted)),
                       ErrorKind::OutOfRange, "value-out-of-range", "transparency"});
    }
}

void vehicle_options(const CandidateCall& call, const json& snapshot, Rng& rng,
                     std::vector<Option>& out) {
    const std::string& t = call.tool;

    if (t == "fillFuelTank" && specified(call, "fuelAmount") != nullptr) {
        double remaining = 50.0 - snapshot.at("fuel").get<double>();
        double over = remaining + 5 + static_cast<double>(rng() % 10);
        double corrupted = pick<double>(rng, {over, -(1.0 + static_cast<double>(rng() % 5))});
        out.push_back({with_arg(call, "fuelAmount", Value::number(corrupted)),
                       ErrorKind::OutOfRange, "value-out-of-range", "fuelAmount"});
    }
    auto numeric = [&](const std::string& param, std::vector<double> bad) {
        if (specified(call, param) != nullptr)
            out.push_back({with_arg(call, param, Value::number(pick(rng, bad))),
                           ErrorKind::OutOfRange, "value-out-of-range", param});
    };
    if (t == "adjustClimateControl") {
        numeric("temperature", {100.0, -50.0});
        numeric("fanSpeed", {150.0, -10.0});
    }
    if (t == "pressBrakePedal") numeric("pedalPosition", {1.5, 2.0, -0.5});
    if (t == "setCruiseControl") numeric("distanceToNextVehicle", {1500.0, -20.0});

    auto enum_case = [&](const std::string& param) {
        if (const Value* v = specified(call, param)) {
            out.push_back({with_arg(call, param, Value::text(flip_case(v->as_text()))),
                           ErrorKind::InvalidEnum, "enum-case-mismatch", param});
        }
    };
    if (t == "startEngine") enum_case("ignitionMode");
    if (t == "setHeadlights") enum_case("mode");
    if (t == "activateParkingBrake") enum_case("mode");
    if (t == "displayCarStatus") enum_case("option");
    if (t == "adjustClimateControl" && specified(call, "unit") != nullptr) {
        out.push_back({with_arg(call, "unit", Value::text("kelvin")), ErrorKind::InvalidEnum,
                       "enum-case-mismatch", "unit"});
    }
}

void travel_options(const CandidateCall& call, const json& snapshot, Rng& rng,
                    std::vector<Option>& out) {
    const std::string& t = call.tool;

    if (t == "book_flight" || t == "purchase_insurance") {
        const std::string param = t == "book_flight" ? "travel_cost" : "insurance_cost";
        const double cap = t == "book_flight" ? 10000.0 : 1000.0;
        if (const Value* card = specified(call, "card_id"); card != nullptr &&
                                                           specified(call, param) != nullptr) {
            double negative = -(50.0 + static_cast<double>(rng() % 200));
            std::vector<double> bad = {negative};
            const json& cards = snapshot.at("cards");
            if (cards.contains(card->as_text())) {
                double balance = cards.at(card->as_text()).at("balance").get<double>();
                double exceeding = balance + 100.0 + static_cast<double>(rng() % 500);
                if (exceeding <= cap) bad.push_back(exceeding);
            }
            out.push_back({with_arg(call, param, Value::number(pick(rng, bad))),
                           ErrorKind::Financial, "financial", param});
        }
    }

    if (t == "get_flight_cost" || t == "book_flight") {
        if (const Value* from = specified(call, "travel_from");
            from != nullptr && specified(call, "travel_to") != nullptr) {
            Value corrupted = pick<Value>(rng, {Value::text("ZZZ"), *from});
            out.push_back({with_arg(call, "travel_to", corrupted), ErrorKind::MissingEntity,
                           "invalid-route", "travel_to"});
        }
    }

    if (specified(call, "booking_id") != nullptr) {
        std::string ghost;
        do {
            ghost = "BK" + std::to_string(9000 + rng() % 999);
        } while (snapshot.at("bookings").contains(ghost));
        out.push_back({with_arg(call, "booking_id", Value::text(ghost)),
                       ErrorKind::MissingEntity, "missing-booking", "booking_id"});
    }
}

void trading_options(const CandidateCall& call, const json& snapshot, Rng& rng,
                     std::vector<Option>& out) {
    const std::string& t = call.tool;

    auto unknown_symbol = [&](const std::string& param) {
        if (const Value* v = specified(call, param)) {
            Value corrupted =
                pick<Value>(rng, {Value::text("ZZZZ"), Value::text(flip_case(v->as_text()))});
            out.push_back(
                {with_arg(call, param, corrupted), ErrorKind::MissingEntity, "unknown-symbol",
                 param});
        }
    };
    if (t == "get_stock_info" || t == "place_order" || t == "update_stock_price" ||
        t == "remove_stock_from_watchlist")
        unknown_symbol("symbol");
    if (t == "add_to_watchlist") unknown_symbol("stock");

    if (t == "place_order" && specified(call, "price") != nullptr) {
        double negative = -(1.0 + static_cast<double>(rng() % 100));
        out.push_back({with_arg(call, "price", Value::number(negative)), ErrorKind::Financial,
                       "financial", "price"});
        const Value* type = specified(call, "order_type");
        const Value* price = specified(call, "price");
        if (type != nullptr && type->as_text() == "Buy" && price != nullptr &&
            specified(call, "amount") != nullptr) {
            double balance = snapshot.at("balance").get<double>();
            double needed = std::ceil((balance + 1.0) / price->as_number()) +
                            static_cast<double>(rng() % 50);
            if (needed >= 1 && needed <= 10000)
                out.push_back({with_arg(call, "amount", Value::number(needed)),
                               ErrorKind::Financial, "financial", "amount"});
        }
    }
    if (t == "make_transaction" && specified(call, "amount") != nullptr) {
        std::vector<double> bad = {-(10.0 + static_cast<double>(rng() % 100))};
        const Value* type = specified(call, "xact_type");
        if (type != nullptr && type->as_text() == "withdrawal") {
            double balance = snapshot.at("balance").get<double>();
            double exceeding = balance + 500.0 + static_cast<double>(rng() % 500);
            if (exceeding <= 1000000.0) bad.push_back(exceeding);
        }
        out.push_back({with_arg(call, "amount", Value::number(pick(rng, bad))),
                       ErrorKind::Financial, "financial", "amount"});
    }
    if (t == "fund_account" && specified(call, "amount") != nullptr) {
        double negative = -(10.0 + static_cast<double>(rng() % 100));
        out.push_back({with_arg(call, "amount", Value::number(negative)), ErrorKind::Financial,
                       "financial", "amount"});
    }

    if ((t == "cancel_order" || t == "get_order_details") &&
        specified(call, "order_id") != nullptr) {
        std::vector<Value> bad;
        if (t == "cancel_order") {
            for (const auto& [id, order] : snapshot.at("orders").items())
                if (order.at("status") != "pending") bad.push_back(Value::number(std::stod(id)));
        }
        double ghost;
        do {
            ghost = static_cast<double>(9000 + rng() % 999);
        } while (snapshot.at("orders").contains(std::to_string(static_cast<int>(ghost))));
        bad.push_back(Value::number(ghost));
        out.push_back({with_arg(call, "order_id", pick(rng, bad)), ErrorKind::MissingEntity,
                       "order-state", "order_id"});
    }
}

} // namespace

std::optional<CorruptedCall> corrupt_call(const CandidateCall& call, const Environment& env,
                                          std::uint64_t seed) {
    Rng rng(seed);
    json snapshot = env.state_snapshot();
    std::vector<Option> options;
    if (env.name() == "filesystem") filesystem_options(call, snapshot, rng, options);
    else if (env.name() == "document") document_options(call, snapshot, rng, options);
    else if (env.name() == "vehicle") vehicle_options(call, snapshot, rng, options);
    else if (env.name() == "travel") travel_options(call, snapshot, rng, options);
    else if (env.name() == "trading") trading_options(call, snapshot, rng, options);
    else throw UsageError("corrupt_call: unknown domain " + env.name());

    if (options.empty()) return std::nullopt;
    const Option& chosen = options[rng() % options.size()];
    return CorruptedCall{chosen.call, chosen.kind, chosen.heuristic, chosen.param};
}

} // namespace sage::envs
