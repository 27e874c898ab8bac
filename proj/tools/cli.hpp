#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "saito/rational.hpp"

namespace saito::cli {

inline constexpr int kSchemaVersion = 1;

// A malformed input document; path names the offending field, e.g. "weights[1]".
class SpecError : public std::runtime_error {
public:
    SpecError(std::string path, const std::string& detail)
        : std::runtime_error(path + ": " + detail), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct Orders {
    int s_order = 2;
    std::optional<int> z_order;  // z-cap of the fixed-point oracle; automatic when absent
    int r_order = 2;
};

struct InputSpec {
    std::vector<std::string> variables;
    std::vector<Rational> weights;
    std::string f;
    std::optional<std::vector<std::string>> basis;
    std::optional<std::vector<std::string>> good_basis;
    Orders orders;
    std::map<std::string, Rational> point;
    bool allow_unverified_basis = false;
};

InputSpec parse_spec(const nlohmann::json& doc);
InputSpec load_spec(const std::string& path);

// "s1=0,s2=1/2" into a name -> value map.
std::map<std::string, Rational> parse_point(const std::string& text);

// Renders a result document as indented text with aligned matrices.
std::string render_human(const nlohmann::ordered_json& doc);

// Exit codes: 0 success, 1 spec validation error, 2 precondition failure,
// 3 truncation exhausted, 4 internal error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace saito::cli
