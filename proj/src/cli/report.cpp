#include "psc/report.hpp"

namespace psc::cli {

std::string_view to_string(Status status) {
    switch (status) {
        case Status::Ok: return "Ok";
        case Status::Inconclusive: return "Inconclusive";
        case Status::Error: return "Error";
    }
    return "?";
}

int exit_code(Status status) {
    switch (status) {
        case Status::Ok: return 0;
        case Status::Error: return 1;
        case Status::Inconclusive: return 2;
    }
    return 1;
}

Json Report::to_json() const {
    Json j = Json::object();
    j["command"] = command;
    j["inputs"] = Json::object();
    for (const auto& [k, v] : inputs) j["inputs"][k] = v;
    j["result"] = result;
    j["status"] = std::string(to_string(status));
    j["notes"] = notes;
    return j;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

Json to_json(const std::vector<Nat>& values) {
    Json arr = Json::array();
    for (const auto& v : values) arr.push_back(v.get_str());
    return arr;
}

Json to_json(const Factorization& fac) {
    Json arr = Json::array();
    for (const auto& f : fac)
        arr.push_back({{"prime", f.prime.get_str()}, {"exponent", std::to_string(f.exponent)}});
    return arr;
}

}  // namespace psc::cli
