// Document environment: one open PDF whose page count drives the page domains.

#include <functional>

#include "sage/envs.hpp"
#include "sage/errors.hpp"

namespace sage::envs {

namespace {

class DocumentEnv final : public Environment {
public:
    explicit DocumentEnv(const json& fixture)
        : Environment("document", builtin_toolkit("document"), rules()) {
        if (!fixture.is_object() || !fixture.contains("num_pages") ||
            !fixture.at("num_pages").is_number_integer())
            throw ParseError("document fixture: needs an integer \"num_pages\"");
        num_pages_ = fixture.at("num_pages").get<int>();
        if (num_pages_ < 1) throw ParseError("document fixture: \"num_pages\" must be positive");
        filename_ = fixture.value("filename", "document.pdf");
        password_ = fixture.value("password", "");
    }

    std::unique_ptr<Environment> clone() const override {
        return std::make_unique<DocumentEnv>(*this);
    }

    json state_snapshot() const override {
        return json{{"filename", filename_}, {"num_pages", num_pages_}, {"password", password_}};
    }

protected:
    std::optional<ParamDomain> dynamic_domain(const std::string& tool,
                                              const std::string& param) const override {
        if (tool == "add_page_with_text" && param == "page_num")
            return ParamDomain::numeric_range(1, num_pages_ + 1, true);
        if (param == "page_num" || param == "start_page" || param == "end_page")
            return ParamDomain::numeric_range(1, num_pages_, true);
        return std::nullopt;
    }

    ExecutionResult dispatch(const CandidateCall& call) override {
        const std::string& t = call.tool;

        if (auto bad = check_domains(call)) return *bad;
        if (auto bad = check_page_order(call)) return *bad;

        if (t == "duplicate" || t == "compress_file") {
            const Value* out = arg_or_default(call, "output_filename");
            const std::string target =
                out != nullptr && !out->as_text().empty() ? out->as_text() : filename_;
            return ExecutionResult::success(t + " -> " + target, json(target));
        }
        if (t == "rename") {
            filename_ = arg(call, "output_filename")->as_text();
            return ExecutionResult::success("renamed to " + filename_, json(filename_));
        }
        if (t == "search") {
            const std::string needle = arg(call, "object_name")->as_text();
            // Deterministic stand-in for content search.
            int page = static_cast<int>(std::hash<std::string>{}(needle) % num_pages_) + 1;
            return ExecutionResult::success("found on page " + std::to_string(page),
                                            json::array({page}));
        }
        if (t == "count_pages")
            return ExecutionResult::success(std::to_string(num_pages_) + " pages",
                                            json(num_pages_));
        if (t == "convert") {
            const std::string format = arg(call, "format")->as_text();
            return ExecutionResult::success("converted to " + format,
                                            json(arg(call, "output_filename")->as_text()));
        }
        if (t == "add_comment" || t == "add_signature" || t == "redact_page_range" ||
            t == "redact_text" || t == "highlight_text" || t == "underline_text" ||
            t == "add_watermark" || t == "add_password") {
            if (t == "add_password") password_ = arg(call, "password")->as_text();
            return ExecutionResult::success(t + " applied");
        }
        if (t == "extract_pages") {
            int start = static_cast<int>(arg(call, "start_page")->as_number());
            int end = static_cast<int>(arg(call, "end_page")->as_number());
            return ExecutionResult::success("extracted " + std::to_string(end - start + 1) +
                                                " pages",
                                            json(end - start + 1));
        }
        if (t == "delete_page") {
            num_pages_ -= 1;
            return ExecutionResult::success("deleted 1 page", json(num_pages_));
        }
        if (t == "delete_page_range") {
            int start = static_cast<int>(arg(call, "start_page")->as_number());
            int end = static_cast<int>(arg(call, "end_page")->as_number());
            num_pages_ -= end - start + 1;
            return ExecutionResult::success("deleted " + std::to_string(end - start + 1) +
                                                " pages",
                                            json(num_pages_));
        }
        if (t == "add_page_with_text") {
            num_pages_ += 1;
            return ExecutionResult::success("added page", json(num_pages_));
        }

        throw UsageError("document: unhandled tool " + t);
    }

private:
    static std::vector<DomainUpdateRule> rules() {
        std::vector<belief::AspectId> affected;
        for (const auto& [tool, param] :
             std::vector<std::pair<std::string, std::string>>{
                 {"add_comment", "page_num"}, {"redact_page_range", "start_page"},
                 {"redact_page_range", "end_page"}, {"redact_text", "start_page"},
                 {"redact_text", "end_page"}, {"highlight_text", "start_page"},
                 {"highlight_text", "end_page"}, {"underline_text", "start_page"},
                 {"underline_text", "end_page"}, {"extract_pages", "start_page"},
                 {"extract_pages", "end_page"}, {"delete_page", "page_num"},
                 {"delete_page_range", "start_page"}, {"delete_page_range", "end_page"},
                 {"add_signature", "page_num"}, {"add_page_with_text", "page_num"}}) {
            affected.push_back(belief::AspectId{tool, param});
        }
        return {DomainUpdateRule{{"delete_page", "delete_page_range", "add_page_with_text"},
                                 std::move(affected),
                                 "page ranges follow the live page count"}};
    }

    std::optional<ExecutionResult> check_page_order(const CandidateCall& call) const {
        const Value* start = arg(call, "start_page");
        const Value* end = arg(call, "end_page");
        if (start != nullptr && end != nullptr && start->as_number() > end->as_number())
            return ExecutionResult::failure(ErrorKind::OutOfRange,
                                            "start_page exceeds end_page", "start_page");
        return std::nullopt;
    }

    std::string filename_;
    int num_pages_ = 1;
    std::string password_;
};

} // namespace

std::unique_ptr<Environment> make_document_env(const json& fixture) {
    return std::make_unique<DocumentEnv>(fixture);
}

} // namespace sage::envs
