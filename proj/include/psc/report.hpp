#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "psc/arith.hpp"

namespace psc::cli {

using Json = nlohmann::json;

enum class Status { Ok, Inconclusive, Error };
std::string_view to_string(Status status);

/// Exit code contract: 0 Ok, 1 Error, 2 Inconclusive.
int exit_code(Status status);

/// One command invocation. Integers are rendered as decimal strings so that
/// values beyond 2^53 survive any JSON reader.
struct Report {
    std::string command;
    std::map<std::string, Json> inputs;
    Json result = Json::object();
    Status status = Status::Ok;
    std::vector<std::string> notes;

    Json to_json() const;
    /// Canonical text: sorted keys, two-space indent, trailing newline.
    std::string dump() const;
};

inline Json to_json(const Nat& n) { return n.get_str(); }
Json to_json(const std::vector<Nat>& values);
Json to_json(const Factorization& fac);

}  // namespace psc::cli
