// Builtin toolkits and default fixtures for the five simulated domains.

#include "sage/envs.hpp"
#include "sage/errors.hpp"

namespace sage::envs {

namespace {

ParamSpec req(std::string name, ParamDomain domain, bool data_dependent = false) {
    ParamSpec p;
    p.name = std::move(name);
    p.domain = std::move(domain);
    p.required = true;
    p.data_dependent = data_dependent;
    return p;
}

ParamSpec opt(std::string name, ParamDomain domain, Value default_value,
              bool data_dependent = false) {
    ParamSpec p;
    p.name = std::move(name);
    p.domain = std::move(domain);
    p.required = false;
    p.data_dependent = data_dependent;
    p.default_value = std::move(default_value);
    return p;
}

ParamSpec opt_no_default(std::string name, ParamDomain domain, bool data_dependent = false) {
    ParamSpec p;
    p.name = std::move(name);
    p.domain = std::move(domain);
    p.required = false;
    p.data_dependent = data_dependent;
    return p;
}

ToolSchema tool(std::string name, std::vector<ParamSpec> params = {}) {
    ToolSchema t;
    t.name = std::move(name);
    t.params = std::move(params);
    return t;
}

ParamDomain finite_text(std::vector<std::string> values) {
    std::vector<Value> vs;
    vs.reserve(values.size());
    for (auto& s : values) vs.push_back(Value::text(std::move(s)));
    return ParamDomain::finite(std::move(vs));
}

Toolkit filesystem_toolkit() {
    Toolkit kit;
    // Schema values mirror the default fixture; environments recompute them
    // from live directory state.
    ParamDomain file_entity = finite_text({"data.csv", "readme.txt"});
    ParamDomain folder_entity = finite_text({"docs", "pics"});
    ParamDomain items_entity = finite_text({"data.csv", "readme.txt", "docs", "pics"});
    kit.tools = {
        tool("pwd"),
        tool("ls", {opt("a", ParamDomain::boolean(), Value::boolean(false))}),
        tool("cd", {req("folder", folder_entity, true)}),
        tool("mkdir", {req("dir_name", ParamDomain::text())}),
        tool("touch", {req("file_name", ParamDomain::text())}),
        tool("echo", {req("content", ParamDomain::text()),
                      opt("file_name", ParamDomain::text(), Value::text(""))}),
        tool("cat", {req("file_name", file_entity, true)}),
        tool("find", {opt("path", ParamDomain::text(), Value::text(".")),
                      opt("name", ParamDomain::text(), Value::text(""))}),
        tool("wc", {req("file_name", file_entity, true),
                    opt("mode", finite_text({"l", "w", "c"}), Value::text("l"))}),
        tool("sort", {req("file_name", file_entity, true)}),
        tool("grep", {req("file_name", file_entity, true), req("pattern", ParamDomain::text())}),
        tool("du", {opt("human_readable", ParamDomain::boolean(), Value::boolean(false))}),
        tool("tail", {req("file_name", file_entity, true),
                      opt("lines", ParamDomain::numeric_range(1, 100, true), Value::number(10))}),
        tool("diff", {req("file_name1", file_entity, true), req("file_name2", file_entity, true)}),
        tool("mv", {req("source", items_entity, true), req("destination", ParamDomain::text())}),
        tool("cp", {req("source", items_entity, true), req("destination", ParamDomain::text())}),
        tool("rm", {req("file_name", items_entity, true)}),
        tool("rmdir", {req("dir_name", folder_entity, true)}),
    };
    return kit;
}

Toolkit document_toolkit() {
    Toolkit kit;
    ParamDomain page = ParamDomain::numeric_range(1, 10, true); // recomputed from page count
    ParamDomain font_size = ParamDomain::numeric_range(8, 72, true);
    ParamDomain coordinates = ParamDomain::list_of(ParamDomain::numeric_range(0, 1000, false));
    ParamDomain positions = finite_text({"top-left", "top-center", "top-right", "center-left",
                                         "center", "center-right", "bottom-left", "bottom-center",
                                         "bottom-right"});
    auto text_span = [&](std::vector<ParamSpec> extra) {
        std::vector<ParamSpec> params = {req("object_name", ParamDomain::text()),
                                         req("start_page", page, true),
                                         req("end_page", page, true),
                                         req("overwrite", ParamDomain::boolean())};
        for (auto& p : extra) params.push_back(std::move(p));
        return params;
    };
    kit.tools = {
        tool("duplicate", {req("output_filename", ParamDomain::text())}),
        tool("rename", {req("output_filename", ParamDomain::text())}),
        tool("search", {req("object_name", ParamDomain::text())}),
        tool("count_pages"),
        tool("compress_file", {opt("output_filename", ParamDomain::text(), Value::text(""))}),
        tool("convert", {req("format", finite_text({"pptx", "doc", "png", "jpeg", "tiff"})),
                         req("output_filename", ParamDomain::text()),
                         opt("zip", ParamDomain::boolean(), Value::boolean(false))}),
        tool("add_comment", {req("page_num", page, true),
                             req("coordinates", coordinates),
                             opt("font_size", font_size, Value::number(12))}),
        tool("redact_page_range", {req("start_page", page, true), req("end_page", page, true)}),
        tool("redact_text",
             text_span({opt("output_pathname", ParamDomain::text(), Value::text(""))})),
        tool("highlight_text",
             text_span({opt("output_pathname", ParamDomain::text(), Value::text(""))})),
        tool("underline_text",
             text_span({opt("output_pathname", ParamDomain::text(), Value::text(""))})),
        tool("extract_pages", {req("start_page", page, true), req("end_page", page, true),
                               req("overwrite", ParamDomain::boolean()),
                               opt("output_pathname", ParamDomain::text(), Value::text(""))}),
        tool("delete_page", {req("page_num", page, true), req("overwrite", ParamDomain::boolean()),
                             opt("output_pathname", ParamDomain::text(), Value::text(""))}),
        tool("delete_page_range",
             {req("start_page", page, true), req("end_page", page, true),
              req("overwrite", ParamDomain::boolean()),
              opt("output_pathname", ParamDomain::text(), Value::text(""))}),
        tool("add_signature", {req("page_num", page, true), req("position", positions),
                               req("overwrite", ParamDomain::boolean()),
                               opt("output_pathname", ParamDomain::text(), Value::text(""))}),
        tool("add_page_with_text", {req("text_content", ParamDomain::text()),
                                    opt("font_size", font_size, Value::number(12)),
                                    req("page_num", ParamDomain::numeric_range(1, 11, true), true)}),
        tool("add_watermark", {req("watermark_text", ParamDomain::text()),
                               req("transparency", ParamDomain::numeric_range(0, 1, false))}),
        tool("add_password", {req("password", ParamDomain::text())}),
    };
    return kit;
}

Toolkit vehicle_toolkit() {
    Toolkit kit;
    std::vector<Value> speeds;
    for (int s = 0; s <= 120; s += 5) speeds.push_back(Value::number(s));
    ParamDomain cities = finite_text({"Rivermist", "Stonebrook", "Maplewood", "Silverpine",
                                      "Shadowridge"});
    ParamDomain zipcodes = finite_text({"83214", "74532", "56108", "62947", "47329"});
    ParamDomain doors =
        ParamDomain::list_of(finite_text({"driver", "passenger", "rear_left", "rear_right"}));
    kit.tools = {
        tool("startEngine", {req("ignitionMode", finite_text({"START", "STOP"}))}),
        tool("fillFuelTank",
             {req("fuelAmount", ParamDomain::numeric_range(0, 50, false), true)}),
        tool("lockDoors", {req("unlock", ParamDomain::boolean()), req("door", doors)}),
        tool("adjustClimateControl",
             {req("temperature", ParamDomain::numeric_range(-10, 50, false)),
              opt("unit", finite_text({"celsius", "fahrenheit"}), Value::text("celsius")),
              opt("fanSpeed", ParamDomain::numeric_range(0, 100, true), Value::number(50)),
              opt("mode", finite_text({"auto", "cool", "heat", "defrost"}), Value::text("auto"))}),
        tool("get_outside_temperature_from_google"),
        tool("get_outside_temperature_from_weather_com"),
        tool("setHeadlights", {req("mode", finite_text({"on", "off", "auto"}))}),
        tool("displayCarStatus",
             {req("option", finite_text({"fuel", "battery", "doors", "climate", "headlights",
                                         "parkingBrake", "brakePedal", "engine"}))}),
        tool("activateParkingBrake", {req("mode", finite_text({"engage", "release"}))}),
        tool("pressBrakePedal", {req("pedalPosition", ParamDomain::numeric_range(0, 1, false))}),
        tool("releaseBrakePedal"),
        tool("setCruiseControl",
             {req("speed", ParamDomain::finite(speeds), true),
              req("activate", ParamDomain::boolean()),
              opt("distanceToNextVehicle", ParamDomain::numeric_range(0, 1000, false),
                  Value::number(100))}),
        tool("get_current_speed"),
        tool("display_log", {req("messages", ParamDomain::list_of(ParamDomain::text()))}),
        tool("estimate_drive_feasibility_by_mileage",
             {req("distance", ParamDomain::numeric_range(0, 10000, false))}),
        tool("liter_to_gallon", {req("liter", ParamDomain::numeric_range(0, 1000, false))}),
        tool("gallon_to_liter", {req("gallon", ParamDomain::numeric_range(0, 1000, false))}),
        tool("estimate_distance", {req("cityA", zipcodes), req("cityB", zipcodes)}),
        tool("get_zipcode_based_on_city", {req("city", cities)}),
        tool("set_navigation", {req("destination", ParamDomain::text())}),
        tool("check_tire_pressure"),
        tool("find_nearest_tire_shop"),
    };
    return kit;
}

Toolkit travel_toolkit() {
    Toolkit kit;
    // Schema values mirror the default fixture; recomputed from live state.
    ParamDomain airports = finite_text({"SFO", "JFK", "LAX", "ORD", "BOS"});
    ParamDomain cards = finite_text({"card_7629"});
    ParamDomain bookings = ParamDomain::finite({}); // no bookings until one is made
    ParamDomain travel_class = finite_text({"economy", "business", "first"});
    ParamDomain currencies = finite_text({"USD", "EUR", "GBP", "JPY", "CNY", "CAD", "AUD", "CHF",
                                          "INR", "MXN", "BRL"});
    ParamDomain money = ParamDomain::numeric_range(0, 10000, false);
    kit.tools = {
        tool("get_budget_fiscal_year",
             {opt("lastModifiedAfter", ParamDomain::text(), Value::text("")),
              opt("includeRemoved", ParamDomain::boolean(), Value::boolean(false))}),
        tool("register_credit_card",
             {req("card_number", ParamDomain::text()),
              req("expiration_date", ParamDomain::text()),
              req("cardholder_name", ParamDomain::text()),
              req("card_verification_number", ParamDomain::numeric_range(100, 999, true))}),
        tool("get_flight_cost",
             {req("travel_from", airports, true), req("travel_to", airports, true),
              req("travel_date", ParamDomain::text()), req("travel_class", travel_class)}),
        tool("get_credit_card_balance", {req("card_id", cards, true)}),
        tool("book_flight",
             {req("card_id", cards, true), req("travel_date", ParamDomain::text()),
              req("travel_from", airports, true), req("travel_to", airports, true),
              req("travel_class", travel_class), req("travel_cost", money, true)}),
        tool("retrieve_invoice", {opt_no_default("booking_id", bookings, true),
                                  opt_no_default("insurance_id", ParamDomain::text())}),
        tool("list_all_airports"),
        tool("cancel_booking", {req("booking_id", bookings, true)}),
        tool("compute_exchange_rate",
             {req("base_currency", currencies), req("target_currency", currencies),
              req("value", ParamDomain::numeric_range(0, 1000000, false))}),
        tool("verify_traveler_information",
             {req("first_name", ParamDomain::text()), req("last_name", ParamDomain::text()),
              req("date_of_birth", ParamDomain::text()),
              req("passport_number", ParamDomain::text())}),
        tool("set_budget_limit",
             {req("budget_limit", ParamDomain::numeric_range(0, 10000, false))}),
        tool("get_nearest_airport_by_city",
             {req("location", finite_text({"Rivermist", "Stonebrook", "Maplewood", "Silverpine",
                                           "Shadowridge"}))}),
        tool("purchase_insurance",
             {req("insurance_type", finite_text({"basic", "premium", "deluxe"})),
              req("booking_id", bookings, true),
              req("insurance_cost", ParamDomain::numeric_range(0, 1000, false)),
              req("card_id", cards, true)}),
        tool("contact_customer_support",
             {req("booking_id", bookings, true), req("message", ParamDomain::text())}),
        tool("get_all_credit_cards"),
    };
    return kit;
}

Toolkit trading_toolkit() {
    Toolkit kit;
    // Schema values mirror the default fixture; recomputed from live state.
    ParamDomain symbols = finite_text({"AAPL", "AMZN", "GOOG", "JNJ", "JPM", "MSFT", "NVDA", "PFE",
                                       "PG", "XOM"});
    ParamDomain watchlist = finite_text({"NVDA", "AAPL"});
    ParamDomain order_ids = ParamDomain::numeric_range(1000, 9999, true); // recomputed from orders
    ParamDomain price = ParamDomain::numeric_range(0.01, 10000, false);
    ParamDomain cash = ParamDomain::numeric_range(0.01, 1000000, false);
    kit.tools = {
        tool("get_current_time"),
        tool("update_market_status", {req("current_time_str", ParamDomain::text())}),
        tool("get_symbol_by_name", {req("name", ParamDomain::text())}),
        tool("get_stock_info", {req("symbol", symbols, true)}),
        tool("get_order_details", {req("order_id", order_ids, true)}),
        tool("cancel_order", {req("order_id", order_ids, true)}),
        tool("place_order", {req("order_type", finite_text({"Buy", "Sell"})),
                             req("symbol", symbols, true), req("price", price),
                             req("amount", ParamDomain::numeric_range(1, 10000, true))}),
        tool("make_transaction",
             {req("xact_type", finite_text({"deposit", "withdrawal"})), req("amount", cash, true)}),
        tool("get_account_info"),
        tool("fund_account", {req("amount", cash)}),
        tool("remove_stock_from_watchlist", {req("symbol", watchlist, true)}),
        tool("get_watchlist"),
        tool("get_order_history"),
        tool("get_transaction_history",
             {opt("start_date", ParamDomain::text(), Value::text("")),
              opt("end_date", ParamDomain::text(), Value::text(""))}),
        tool("update_stock_price", {req("symbol", symbols, true), req("new_price", price)}),
        tool("get_available_stocks",
             {req("sector", finite_text({"Technology", "Healthcare", "Finance", "Energy",
                                         "Consumer"}))}),
        tool("filter_stocks_by_price",
             {req("stocks", ParamDomain::list_of(ParamDomain::text())),
              req("min_price", ParamDomain::numeric_range(0, 10000, false)),
              req("max_price", ParamDomain::numeric_range(0, 10000, false))}),
        tool("add_to_watchlist", {req("stock", symbols, true)}),
        tool("notify_price_change",
             {req("stocks", ParamDomain::list_of(ParamDomain::text())),
              req("threshold", ParamDomain::numeric_range(0.01, 100, false))}),
    };
    return kit;
}

} // namespace

Toolkit builtin_toolkit(const std::string& domain) {
    if (domain == "filesystem") return filesystem_toolkit();
    if (domain == "document") return document_toolkit();
    if (domain == "vehicle") return vehicle_toolkit();
    if (domain == "travel") return travel_toolkit();
    if (domain == "trading") return trading_toolkit();
    throw UsageError("unknown toolkit domain: " + domain);
}

json default_fixture(const std::string& domain) {
    if (domain == "filesystem") {
        return json{
            {"cwd", "/"},
            {"root",
             {{"dirs",
               {{"docs",
                 {{"dirs", json::object()},
                  {"files",
                   {{"report.txt", "quarterly numbers\n"}, {"notes.md", "todo list\n"}}}}},
                {"pics",
                 {{"dirs", json::object()}, {"files", {{"logo.png", "png bytes"}}}}}}},
              {"files", {{"readme.txt", "hello world\n"}, {"data.csv", "a,b\n1,2\n3,4\n"}}}}},
        };
    }
    if (domain == "document") {
        return json{{"filename", "report.pdf"}, {"num_pages", 10}, {"password", ""}};
    }
    if (domain == "vehicle") {
        return json{
            {"engine", "stopped"},
            {"fuel", 30.0},
            {"battery_voltage", 12.6},
            {"doors",
             {{"driver", "locked"},
              {"passenger", "locked"},
              {"rear_left", "unlocked"},
              {"rear_right", "locked"}}},
            {"climate",
             {{"temperature", 22.0}, {"unit", "celsius"}, {"fanSpeed", 50}, {"mode", "auto"}}},
            {"parking_brake", "engaged"},
            {"brake_pedal", 0.0},
            {"headlights", "off"},
            {"cruise", {{"active", false}, {"speed", 0}, {"distance", 100.0}}},
            {"speed", 0.0},
            {"tire_pressure",
             {{"front_left", 32.0}, {"front_right", 32.0}, {"rear_left", 31.0},
              {"rear_right", 31.5}}},
            {"outside_temperature", 18.5},
            {"zipcodes",
             {{"Rivermist", "83214"}, {"Stonebrook", "74532"}, {"Maplewood", "56108"},
              {"Silverpine", "62947"}, {"Shadowridge", "47329"}}},
            {"distances",
             {{"83214-74532", 120.0}, {"83214-56108", 340.0}, {"74532-56108", 210.0},
              {"56108-62947", 95.0}, {"62947-47329", 480.0}}},
        };
    }
    if (domain == "travel") {
        return json{
            {"cards", {{"card_7629", {{"card_number", "4111567812340001"}, {"balance", 5000.0}}}}},
            {"bookings", json::object()},
            {"insurances", json::object()},
            {"next_booking", 1001},
            {"budget_limit", nullptr},
            {"routes",
             json::array({{{"from", "SFO"}, {"to", "JFK"}, {"cost", 500.0}},
                          {{"from", "SFO"}, {"to", "LAX"}, {"cost", 120.0}},
                          {{"from", "JFK"}, {"to", "ORD"}, {"cost", 220.0}},
                          {{"from", "LAX"}, {"to", "BOS"}, {"cost", 450.0}},
                          {{"from", "ORD"}, {"to", "SFO"}, {"cost", 300.0}},
                          {{"from", "BOS"}, {"to", "JFK"}, {"cost", 90.0}}})},
            {"nearest_airport",
             {{"Rivermist", "SFO"}, {"Stonebrook", "JFK"}, {"Maplewood", "LAX"},
              {"Silverpine", "ORD"}, {"Shadowridge", "BOS"}}},
            {"exchange_rates",
             {{"USD", 1.0}, {"EUR", 0.92}, {"GBP", 0.79}, {"JPY", 149.0}, {"CNY", 7.2},
              {"CAD", 1.36}, {"AUD", 1.52}, {"CHF", 0.88}, {"INR", 83.2}, {"MXN", 17.1},
              {"BRL", 5.0}}},
            {"traveler",
             {{"first_name", "Avery"}, {"last_name", "Quinn"}, {"date_of_birth", "1990-04-12"},
              {"passport_number", "P1234567"}}},
            {"fiscal_year", "2025"},
        };
    }
    if (domain == "trading") {
        return json{
            {"balance", 10000.0},
            {"market_open", true},
            {"time", "10:30"},
            {"next_order", 1003},
            {"stocks",
             {{"AAPL", {{"price", 227.16}, {"sector", "Technology"}}},
              {"GOOG", {{"price", 164.50}, {"sector", "Technology"}}},
              {"MSFT", {{"price", 415.30}, {"sector", "Technology"}}},
              {"NVDA", {{"price", 880.00}, {"sector", "Technology"}}},
              {"JNJ", {{"price", 155.20}, {"sector", "Healthcare"}}},
              {"PFE", {{"price", 28.50}, {"sector", "Healthcare"}}},
              {"JPM", {{"price", 210.10}, {"sector", "Finance"}}},
              {"XOM", {{"price", 118.40}, {"sector", "Energy"}}},
              {"PG", {{"price", 165.90}, {"sector", "Consumer"}}},
              {"AMZN", {{"price", 186.30}, {"sector", "Consumer"}}}}},
            {"names",
             {{"Apple", "AAPL"}, {"Alphabet", "GOOG"}, {"Microsoft", "MSFT"}, {"Nvidia", "NVDA"},
              {"Johnson & Johnson", "JNJ"}, {"Pfizer", "PFE"}, {"JPMorgan", "JPM"},
              {"Exxon", "XOM"}, {"Procter & Gamble", "PG"}, {"Amazon", "AMZN"}}},
            {"watchlist", json::array({"NVDA", "AAPL"})},
            {"orders",
             {{"1001",
               {{"symbol", "AAPL"}, {"order_type", "Buy"}, {"price", 210.0}, {"amount", 10},
                {"status", "pending"}}},
              {"1002",
               {{"symbol", "GOOG"}, {"order_type", "Sell"}, {"price", 160.0}, {"amount", 5},
                {"status", "completed"}}}}},
            {"transactions", json::array()},
        };
    }
    throw UsageError("unknown fixture domain: " + domain);
}

} // namespace sage::envs
