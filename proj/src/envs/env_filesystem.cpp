// Filesystem environment: an in-memory directory tree with shell-style tools.

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sage/envs.hpp"
#include "sage/errors.hpp"

namespace sage::envs {

namespace {

struct DirNode {
    std::map<std::string, std::string> files; // name -> content
    std::map<std::string, DirNode> dirs;
};

DirNode parse_node(const json& j, const std::string& path) {
    if (!j.is_object()) throw ParseError(path + ": directory node must be an object");
    DirNode node;
    if (j.contains("files")) {
        if (!j.at("files").is_object()) throw ParseError(path + ": \"files\" must be an object");
        for (const auto& [name, content] : j.at("files").items()) {
            if (!content.is_string()) throw ParseError(path + ": file content must be a string");
            node.files[name] = content.get<std::string>();
        }
    }
    if (j.contains("dirs")) {
        if (!j.at("dirs").is_object()) throw ParseError(path + ": \"dirs\" must be an object");
        for (const auto& [name, child] : j.at("dirs").items())
            node.dirs[name] = parse_node(child, path + "/" + name);
    }
    return node;
}

json node_to_json(const DirNode& node) {
    json files = json::object();
    for (const auto& [name, content] : node.files) files[name] = content;
    json dirs = json::object();
    for (const auto& [name, child] : node.dirs) dirs[name] = node_to_json(child);
    return json{{"dirs", dirs}, {"files", files}};
}

// Name usable as a single path segment: no separators, no reserved shell
// characters, not a dot entry.
bool valid_segment(const std::string& s) {
    if (s.empty() || s == "." || s == "..") return false;
    return s.find_first_of("|/\\?*") == std::string::npos;
}

std::size_t node_bytes(const DirNode& node) {
    std::size_t total = 0;
    for (const auto& [name, content] : node.files) {
        (void)name;
        total += content.size();
    }
    for (const auto& [name, child] : node.dirs) {
        (void)name;
        total += node_bytes(child);
    }
    return total;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

class FilesystemEnv final : public Environment {
public:
    explicit FilesystemEnv(const json& fixture)
        : Environment("filesystem", builtin_toolkit("filesystem"), rules()) {
        if (!fixture.is_object() || !fixture.contains("root"))
            throw ParseError("filesystem fixture: needs a \"root\" directory node");
        root_ = parse_node(fixture.at("root"), "root");
        std::string cwd = fixture.value("cwd", "/");
        if (cwd.empty() || cwd.front() != '/')
            throw ParseError("filesystem fixture: \"cwd\" must be an absolute path");
        std::stringstream ss(cwd.substr(1));
        std::string part;
        while (std::getline(ss, part, '/')) {
            if (part.empty()) continue;
            if (resolve(cwd_)->dirs.count(part) == 0)
                throw ParseError("filesystem fixture: cwd component does not exist: " + part);
            cwd_.push_back(part);
        }
    }

    std::unique_ptr<Environment> clone() const override {
        return std::make_unique<FilesystemEnv>(*this);
    }

    json state_snapshot() const override {
        return json{{"cwd", cwd_string()}, {"root", node_to_json(root_)}};
    }

protected:
    std::optional<ParamDomain> dynamic_domain(const std::string& tool,
                                              const std::string& param) const override {
        const DirNode& here = *resolve(cwd_);
        auto finite = [](std::vector<std::string> names) {
            std::vector<Value> vs;
            for (auto& n : names) vs.push_back(Value::text(std::move(n)));
            return ParamDomain::finite(std::move(vs));
        };
        if (tool == "cd" && param == "folder") {
            std::vector<std::string> names;
            for (const auto& [name, child] : here.dirs) {
                (void)child;
                names.push_back(name);
            }
            if (!cwd_.empty()) names.push_back("..");
            return finite(std::move(names));
        }
        const bool file_param = tool == "cat" || tool == "wc" || tool == "sort" ||
                                tool == "grep" || tool == "tail" || tool == "diff";
        if (file_param && (param == "file_name" || param == "file_name1" || param == "file_name2"))
            return finite(file_names(here));
        if ((tool == "mv" || tool == "cp") && param == "source") return finite(item_names(here));
        if (tool == "rm" && param == "file_name") return finite(item_names(here));
        if (tool == "rmdir" && param == "dir_name") return finite(dir_names(here));
        return std::nullopt;
    }

    ExecutionResult dispatch(const CandidateCall& call) override {
        DirNode& here = *resolve_mut(cwd_);
        const std::string& t = call.tool;

        if (t == "pwd") return ExecutionResult::success(cwd_string(), json(cwd_string()));

        if (t == "ls") {
            bool all = arg_or_default(call, "a")->as_boolean();
            json names = json::array();
            for (const auto& name : item_names(here))
                if (all || name.empty() || name.front() != '.') names.push_back(name);
            return ExecutionResult::success("listed " + std::to_string(names.size()) + " entries",
                                            names);
        }

        if (t == "cd") {
            const std::string folder = arg(call, "folder")->as_text();
            if (folder != ".." && !valid_segment(folder))
                return ExecutionResult::failure(ErrorKind::Path,
                                                "folder name may not contain path separators or "
                                                "reserved characters: " + folder,
                                                "folder");
            if (auto bad = check_domains(call)) return *bad;
            if (folder == "..") {
                if (!cwd_.empty()) cwd_.pop_back();
            } else {
                cwd_.push_back(folder);
            }
            return ExecutionResult::success(cwd_string(), json(cwd_string()));
        }

        if (t == "mkdir" || t == "touch") {
            const std::string pname = t == "mkdir" ? "dir_name" : "file_name";
            const std::string name = arg(call, pname)->as_text();
            if (!valid_segment(name))
                return ExecutionResult::failure(ErrorKind::Path,
                                                "name may not contain path separators or reserved "
                                                "characters: " + name,
                                                pname);
            if (here.dirs.count(name) > 0 || here.files.count(name) > 0)
                return ExecutionResult::failure(ErrorKind::Duplicate,
                                                "an entry named " + name + " already exists", pname);
            if (t == "mkdir")
                here.dirs[name] = DirNode{};
            else
                here.files[name] = "";
            return ExecutionResult::success("created " + name);
        }

        if (t == "echo") {
            const std::string content = arg(call, "content")->as_text();
            const std::string file_name = arg_or_default(call, "file_name")->as_text();
            if (file_name.empty()) return ExecutionResult::success(content, json(content));
            if (!valid_segment(file_name))
                return ExecutionResult::failure(ErrorKind::Path,
                                                "name may not contain path separators or reserved "
                                                "characters: " + file_name,
                                                "file_name");
            if (here.dirs.count(file_name) > 0)
                return ExecutionResult::failure(ErrorKind::Duplicate,
                                                "a directory named " + file_name + " exists",
                                                "file_name");
            here.files[file_name] = content + "\n";
            return ExecutionResult::success("wrote " + file_name);
        }

        if (t == "cat" || t == "wc" || t == "sort" || t == "grep" || t == "tail") {
            const std::string name = arg(call, "file_name")->as_text();
            if (!valid_segment(name))
                return ExecutionResult::failure(ErrorKind::Path,
                                                "name may not contain path separators or reserved "
                                                "characters: " + name,
                                                "file_name");
            if (auto bad = check_domains(call)) return *bad;
            const std::string& content = here.files.at(name);
            if (t == "cat") return ExecutionResult::success(content, json(content));
            if (t == "wc") {
                const std::string mode = arg_or_default(call, "mode")->as_text();
                auto lines = split_lines(content);
                std::size_t count = 0;
                if (mode == "l") {
                    count = lines.size();
                } else if (mode == "w") {
                    for (const auto& line : lines) {
                        std::istringstream ws(line);
                        std::string w;
                        while (ws >> w) ++count;
                    }
                } else {
                    count = content.size();
                }
                return ExecutionResult::success(std::to_string(count), json(count));
            }
            if (t == "sort") {
                auto lines = split_lines(content);
                std::sort(lines.begin(), lines.end());
                json out = json::array();
                for (auto& line : lines) out.push_back(line);
                return ExecutionResult::success("sorted " + name, out);
            }
            if (t == "grep") {
                const std::string pattern = arg(call, "pattern")->as_text();
                json out = json::array();
                for (const auto& line : split_lines(content))
                    if (line.find(pattern) != std::string::npos) out.push_back(line);
                return ExecutionResult::success("matched " + std::to_string(out.size()) + " lines",
                                                out);
            }
            // tail
            auto lines = split_lines(content);
            auto n = static_cast<std::size_t>(arg_or_default(call, "lines")->as_number());
            json out = json::array();
            for (std::size_t i = lines.size() > n ? lines.size() - n : 0; i < lines.size(); ++i)
                out.push_back(lines[i]);
            return ExecutionResult::success("last " + std::to_string(out.size()) + " lines", out);
        }

        if (t == "find") {
            const std::string path = arg_or_default(call, "path")->as_text();
            const std::string pattern = arg_or_default(call, "name")->as_text();
            if (path != "." && !valid_segment(path))
                return ExecutionResult::failure(ErrorKind::Path,
                                                "search path may not traverse directories: " + path,
                                                "path");
            const DirNode* start = &here;
            std::string prefix = ".";
            if (path != ".") {
                auto it = here.dirs.find(path);
                if (it == here.dirs.end())
                    return ExecutionResult::failure(ErrorKind::MissingEntity,
                                                    "no such directory: " + path, "path");
                start = &it->second;
                prefix = "./" + path;
            }
            json out = json::array();
            collect(*start, prefix, pattern, out);
            return ExecutionResult::success("found " + std::to_string(out.size()) + " entries", out);
        }

        if (t == "du") {
            bool human = arg_or_default(call, "human_readable")->as_boolean();
            std::size_t total = node_bytes(here);
            std::string text = human ? std::to_string((total + 1023) / 1024) + "K"
                                     : std::to_string(total);
            return ExecutionResult::success(text, json(total));
        }

        if (t == "diff") {
            const std::string n1 = arg(call, "file_name1")->as_text();
            const std::string n2 = arg(call, "file_name2")->as_text();
            for (const auto& [pname, n] :
                 std::vector<std::pair<std::string, std::string>>{{"file_name1", n1},
                                                                  {"file_name2", n2}}) {
                if (!valid_segment(n))
                    return ExecutionResult::failure(ErrorKind::Path,
                                                    "name may not contain path separators or "
                                                    "reserved characters: " + n,
                                                    pname);
            }
            if (auto bad = check_domains(call)) return *bad;
            auto l1 = split_lines(here.files.at(n1));
            auto l2 = split_lines(here.files.at(n2));
            json out = json::array();
            for (std::size_t i = 0; i < std::max(l1.size(), l2.size()); ++i) {
                const std::string a = i < l1.size() ? l1[i] : "";
                const std::string b = i < l2.size() ? l2[i] : "";
                if (a != b) out.push_back("< " + a + " | > " + b);
            }
            return ExecutionResult::success(out.empty() ? "files match" : "files differ", out);
        }

        if (t == "mv" || t == "cp") {
            const std::string source = arg(call, "source")->as_text();
            const std::string dest = arg(call, "destination")->as_text();
            if (!valid_segment(source))
                return ExecutionResult::failure(ErrorKind::Path,
                                                "name may not contain path separators or reserved "
                                                "characters: " + source,
                                                "source");
            if (!valid_segment(dest))
                return ExecutionResult::failure(ErrorKind::Path,
                                                "destination may not contain path separators or "
                                                "reserved characters: " + dest,
                                                "destination");
            if (auto bad = check_domains(call)) return *bad;
            if (here.dirs.count(dest) > 0 || here.files.count(dest) > 0)
                return ExecutionResult::failure(ErrorKind::Duplicate,
                                                "an entry named " + dest + " already exists",
                                                "destination");
            if (here.files.count(source) > 0) {
                here.files[dest] = here.files.at(source);
                if (t == "mv") here.files.erase(source);
            } else {
                here.dirs[dest] = here.dirs.at(source);
                if (t == "mv") here.dirs.erase(source);
            }
            return ExecutionResult::success(t + " " + source + " -> " + dest);
        }

        if (t == "rm") {
            const std::string name = arg(call, "file_name")->as_text();
            if (!valid_segment(name))
                return ExecutionResult::failure(ErrorKind::Path,
                                                "name may not contain path separators or reserved "
                                                "characters: " + name,
                                                "file_name");
            if (auto bad = check_domains(call)) return *bad;
            if (here.files.erase(name) == 0) here.dirs.erase(name);
            return ExecutionResult::success("removed " + name);
        }

        if (t == "rmdir") {
            const std::string name = arg(call, "dir_name")->as_text();
            if (!valid_segment(name))
                return ExecutionResult::failure(ErrorKind::Path,
                                                "name may not contain path separators or reserved "
                                                "characters: " + name,
                                                "dir_name");
            if (auto bad = check_domains(call)) return *bad;
            const DirNode& victim = here.dirs.at(name);
            if (!victim.files.empty() || !victim.dirs.empty())
                return ExecutionResult::failure(ErrorKind::Duplicate,
                                                "directory not empty: " + name, "dir_name");
            here.dirs.erase(name);
            return ExecutionResult::success("removed " + name);
        }

        throw UsageError("filesystem: unhandled tool " + t);
    }

private:
    static std::vector<DomainUpdateRule> rules() {
        std::vector<belief::AspectId> affected;
        for (const auto& [tool, param] :
             std::vector<std::pair<std::string, std::string>>{
                 {"cd", "folder"}, {"cat", "file_name"}, {"wc", "file_name"}, {"sort", "file_name"},
                 {"grep", "file_name"}, {"tail", "file_name"}, {"diff", "file_name1"},
                 {"diff", "file_name2"}, {"mv", "source"}, {"cp", "source"}, {"rm", "file_name"},
                 {"rmdir", "dir_name"}}) {
            affected.push_back(belief::AspectId{tool, param});
        }
        return {DomainUpdateRule{{"cd", "mkdir", "touch", "echo", "mv", "cp", "rm", "rmdir"},
                                 std::move(affected),
                                 "directory listings follow create, remove, rename and cwd moves"}};
    }

    static std::vector<std::string> file_names(const DirNode& node) {
        std::vector<std::string> names;
        for (const auto& [name, content] : node.files) {
            (void)content;
            names.push_back(name);
        }
        return names;
    }

    static std::vector<std::string> dir_names(const DirNode& node) {
        std::vector<std::string> names;
        for (const auto& [name, child] : node.dirs) {
            (void)child;
            names.push_back(name);
        }
        return names;
    }

    static std::vector<std::string> item_names(const DirNode& node) {
        std::vector<std::string> names = file_names(node);
        for (auto& name : dir_names(node)) names.push_back(std::move(name));
        return names;
    }

    static void collect(const DirNode& node, const std::string& prefix, const std::string& pattern,
                        json& out) {
        for (const auto& [name, content] : node.files) {
            (void)content;
            if (pattern.empty() || name.find(pattern) != std::string::npos)
                out.push_back(prefix + "/" + name);
        }
        for (const auto& [name, child] : node.dirs) {
            if (pattern.empty() || name.find(pattern) != std::string::npos)
                out.push_back(prefix + "/" + name);
            collect(child, prefix + "/" + name, pattern, out);
        }
    }

    const DirNode* resolve(const std::vector<std::string>& path) const {
        const DirNode* node = &root_;
        for (const auto& part : path) node = &node->dirs.at(part);
        return node;
    }

    DirNode* resolve_mut(const std::vector<std::string>& path) {
        DirNode* node = &root_;
        for (const auto& part : path) node = &node->dirs.at(part);
        return node;
    }

    std::string cwd_string() const {
        if (cwd_.empty()) return "/";
        std::string out;
        for (const auto& part : cwd_) out += "/" + part;
        return out;
    }

    DirNode root_;
    std::vector<std::string> cwd_;
};

} // namespace

std::unique_ptr<Environment> make_filesystem_env(const json& fixture) {
    return std::make_unique<FilesystemEnv>(fixture);
}

} // namespace sage::envs
