// Trading environment: a stock registry, an order book and a cash account.

#include <algorithm>

#include "sage/envs.hpp"
#include "sage/errors.hpp"

namespace sage::envs {

namespace {

constexpr double kMaxPrice = 10000.0;

class TradingEnv final : public Environment {
public:
    explicit TradingEnv(const json& fixture)
        : Environment("trading", builtin_toolkit("trading"), rules()) {
        try {
            state_ = default_fixture("trading");
            if (!fixture.is_object()) throw ParseError("trading fixture: must be an object");
            state_.update(fixture);
            if (state_.at("balance").get<double>() < 0)
                throw ParseError("trading fixture: \"balance\" must be non-negative");
            for (const auto& [id, order] : state_.at("orders").items()) {
                (void)id;
                if (!order.contains("symbol") || !order.contains("status"))
                    throw ParseError("trading fixture: each order needs symbol and status");
            }
        } catch (const json::exception& e) {
            throw ParseError(std::string("trading fixture: ") + e.what());
        }
    }

    std::unique_ptr<Environment> clone() const override {
        return std::make_unique<TradingEnv>(*this);
    }

    json state_snapshot() const override { return state_; }

protected:
    std::optional<ParamDomain> dynamic_domain(const std::string& tool,
                                              const std::string& param) const override {
        const bool symbol_param = (tool == "get_stock_info" && param == "symbol") ||
                                  (tool == "place_order" && param == "symbol") ||
                                  (tool == "update_stock_price" && param == "symbol") ||
                                  (tool == "add_to_watchlist" && param == "stock");
        if (symbol_param) {
            std::vector<Value> symbols;
            for (const auto& [symbol, record] : state_.at("stocks").items()) {
                (void)record;
                symbols.push_back(Value::text(symbol));
            }
            return ParamDomain::finite(std::move(symbols));
        }
        if (tool == "remove_stock_from_watchlist" && param == "symbol") {
            std::vector<Value> symbols;
            for (const auto& entry : state_.at("watchlist"))
                symbols.push_back(Value::text(entry.get<std::string>()));
            return ParamDomain::finite(std::move(symbols));
        }
        if (tool == "get_order_details" && param == "order_id") return order_ids(false);
        if (tool == "cancel_order" && param == "order_id") return order_ids(true);
        return std::nullopt;
    }

    ExecutionResult dispatch(const CandidateCall& call) override {
        const std::string& t = call.tool;

        if (t == "get_current_time")
            return ExecutionResult::success(state_.at("time").get<std::string>(),
                                            state_.at("time"));

        if (t == "update_market_status") {
            const std::string time = arg(call, "current_time_str")->as_text();
            state_["time"] = time;
            bool open = time >= "09:30" && time < "16:00";
            state_["market_open"] = open;
            return ExecutionResult::success(open ? "market open" : "market closed", json(open));
        }

        if (t == "get_symbol_by_name") {
            const std::string name = arg(call, "name")->as_text();
            const json& names = state_.at("names");
            if (!names.contains(name))
                return ExecutionResult::failure(ErrorKind::MissingEntity,
                                                "no listed company called " + name, "name");
            return ExecutionResult::success(names.at(name).get<std::string>(), names.at(name));
        }

        if (t == "get_stock_info") {
            if (auto bad = check_domains(call)) return *bad;
            return ExecutionResult::success("stock info",
                                            state_.at("stocks").at(arg(call, "symbol")->as_text()));
        }

        if (t == "get_order_details") {
            if (auto bad = check_domains(call)) return *bad;
            const std::string id = order_key(arg(call, "order_id")->as_number());
            return ExecutionResult::success("order " + id, state_.at("orders").at(id));
        }

        if (t == "cancel_order") {
            if (auto bad = check_domains(call)) return *bad;
            const std::string id = order_key(arg(call, "order_id")->as_number());
            state_["orders"][id]["status"] = "cancelled";
            return ExecutionResult::success("cancelled order " + id, state_.at("orders").at(id));
        }

        if (t == "place_order") {
            if (auto bad = check_domains(call, {"price"})) return *bad;
            double price = arg(call, "price")->as_number();
            if (price <= 0)
                return ExecutionResult::failure(ErrorKind::Financial, "price must be positive",
                                                "price");
            if (price > kMaxPrice)
                return ExecutionResult::failure(ErrorKind::OutOfRange,
                                                "price exceeds the exchange cap", "price");
            if (!state_.at("market_open").get<bool>())
                return ExecutionResult::failure(ErrorKind::Financial, "market is closed",
                                                "order_type");
            double amount = arg(call, "amount")->as_number();
            const std::string type = arg(call, "order_type")->as_text();
            if (type == "Buy") {
                double cost = price * amount;
                if (cost > state_.at("balance").get<double>())
                    return ExecutionResult::failure(ErrorKind::Financial,
                                                    "order cost exceeds the account balance",
                                                    "amount");
                state_["balance"] = state_.at("balance").get<double>() - cost;
            }
            int id = state_.at("next_order").get<int>();
            state_["next_order"] = id + 1;
            state_["orders"][std::to_string(id)] = {{"symbol", arg(call, "symbol")->as_text()},
                                                    {"order_type", type},
                                                    {"price", price},
                                                    {"amount", amount},
                                                    {"status", "pending"}};
            return ExecutionResult::success("placed order " + std::to_string(id), json(id));
        }

        if (t == "make_transaction") {
            if (auto bad = check_domains(call, {"amount"})) return *bad;
            double amount = arg(call, "amount")->as_number();
            if (amount <= 0)
                return ExecutionResult::failure(ErrorKind::Financial,
                                                "transaction amount must be positive", "amount");
            const std::string type = arg(call, "xact_type")->as_text();
            double balance = state_.at("balance").get<double>();
            if (type == "withdrawal") {
                if (amount > balance)
                    return ExecutionResult::failure(ErrorKind::Financial,
                                                    "withdrawal exceeds the account balance",
                                                    "amount");
                balance -= amount;
            } else {
                balance += amount;
            }
            state_["balance"] = balance;
            state_["transactions"].push_back({{"type", type}, {"amount", amount}});
            return ExecutionResult::success("balance " + std::to_string(balance), json(balance));
        }

        if (t == "get_account_info")
            return ExecutionResult::success("account info",
                                            json{{"balance", state_.at("balance")},
                                                 {"market_open", state_.at("market_open")}});

        if (t == "fund_account") {
            if (auto bad = check_domains(call, {"amount"})) return *bad;
            double amount = arg(call, "amount")->as_number();
            if (amount <= 0)
                return ExecutionResult::failure(ErrorKind::Financial,
                                                "funding amount must be positive", "amount");
            state_["balance"] = state_.at("balance").get<double>() + amount;
            return ExecutionResult::success("balance " + state_.at("balance").dump(),
                                            state_.at("balance"));
        }

        if (t == "remove_stock_from_watchlist") {
            if (auto bad = check_domains(call)) return *bad;
            const std::string symbol = arg(call, "symbol")->as_text();
            json kept = json::array();
            for (const auto& entry : state_.at("watchlist"))
                if (entry.get<std::string>() != symbol) kept.push_back(entry);
            state_["watchlist"] = kept;
            return ExecutionResult::success("removed " + symbol, kept);
        }

        if (t == "get_watchlist")
            return ExecutionResult::success("watchlist", state_.at("watchlist"));

        if (t == "get_order_history")
            return ExecutionResult::success("order history", state_.at("orders"));

        if (t == "get_transaction_history")
            return ExecutionResult::success("transaction history", state_.at("transactions"));

        if (t == "update_stock_price") {
            if (auto bad = check_domains(call)) return *bad;
            const std::string symbol = arg(call, "symbol")->as_text();
            state_["stocks"][symbol]["price"] = arg(call, "new_price")->as_number();
            return ExecutionResult::success("updated " + symbol,
                                            state_.at("stocks").at(symbol).at("price"));
        }

        if (t == "get_available_stocks") {
            if (auto bad = check_domains(call)) return *bad;
            const std::string sector = arg(call, "sector")->as_text();
            json out = json::array();
            for (const auto& [symbol, record] : state_.at("stocks").items())
                if (record.at("sector") == sector) out.push_back(symbol);
            return ExecutionResult::success("stocks in " + sector, out);
        }

        if (t == "filter_stocks_by_price") {
            if (auto bad = check_domains(call)) return *bad;
            double lo = arg(call, "min_price")->as_number();
            double hi = arg(call, "max_price")->as_number();
            json out = json::array();
            for (const Value& entry : arg(call, "stocks")->as_list()) {
                const json& stocks = state_.at("stocks");
                if (!stocks.contains(entry.as_text())) continue;
                double price = stocks.at(entry.as_text()).at("price").get<double>();
                if (price >= lo && price <= hi) out.push_back(entry.as_text());
            }
            return ExecutionResult::success("filtered stocks", out);
        }

        if (t == "add_to_watchlist") {
            if (auto bad = check_domains(call)) return *bad;
            const std::string symbol = arg(call, "stock")->as_text();
            for (const auto& entry : state_.at("watchlist"))
                if (entry.get<std::string>() == symbol)
                    return ExecutionResult::failure(ErrorKind::Duplicate,
                                                    symbol + " is already on the watchlist",
                                                    "stock");
            state_["watchlist"].push_back(symbol);
            return ExecutionResult::success("watching " + symbol, state_.at("watchlist"));
        }

        if (t == "notify_price_change") {
            if (auto bad = check_domains(call)) return *bad;
            return ExecutionResult::success("price alerts armed");
        }

        throw UsageError("trading: unhandled tool " + t);
    }

private:
    static std::vector<DomainUpdateRule> rules() {
        return {
            DomainUpdateRule{{"place_order", "cancel_order"},
                             {belief::AspectId{"get_order_details", "order_id"},
                              belief::AspectId{"cancel_order", "order_id"}},
                             "order ids follow the order book; cancelling needs a pending order"},
            DomainUpdateRule{{"add_to_watchlist", "remove_stock_from_watchlist"},
                             {belief::AspectId{"remove_stock_from_watchlist", "symbol"}},
                             "removable symbols follow the watchlist"},
            DomainUpdateRule{{"update_stock_price"},
                             {belief::AspectId{"get_stock_info", "symbol"},
                              belief::AspectId{"place_order", "symbol"},
                              belief::AspectId{"update_stock_price", "symbol"},
                              belief::AspectId{"add_to_watchlist", "stock"}},
                             "tradeable symbols follow the stock registry"},
        };
    }

    // Ids of all orders, or only the pending ones, as numbers.
    ParamDomain order_ids(bool pending_only) const {
        std::vector<Value> ids;
        for (const auto& [id, order] : state_.at("orders").items()) {
            if (pending_only && order.at("status") != "pending") continue;
            ids.push_back(Value::number(std::stod(id)));
        }
        return ParamDomain::finite(std::move(ids));
    }

    static std::string order_key(double id) {
        return std::to_string(static_cast<long long>(id));
    }

    json state_;
};

} // namespace

std::unique_ptr<Environment> make_trading_env(const json& fixture) {
    return std::make_unique<TradingEnv>(fixture);
}

} // namespace sage::envs
