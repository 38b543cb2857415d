#include "pwl/coefficients.hpp"

#include "pwl/errors.hpp"

#include <cmath>
#include <string>

namespace pwl {

PWLCoefficients to_double(const ExactPWLCoefficients& exact) {
    PWLCoefficients out;
    const auto exact_fields = coefficient_fields<PiLaurent>();
    const auto fields = coefficient_fields<double>();
    for (std::size_t i = 0; i < fields.size(); ++i) out.*(fields[i].member) = (exact.*(exact_fields[i].member)).to_double();
    return out;
}

void validate(const PWLCoefficients& c) {
    for (const auto& f : coefficient_fields<double>())
        if (!std::isfinite(c.*(f.member))) throw DomainError("coefficient " + std::string(f.name) + " is not finite");
}

namespace {

PiLaurent value_from_json(const nlohmann::json& v, std::string_view key) {
    if (v.is_number_integer()) return PiLaurent(Rational(v.get<long>()));
    if (v.is_number()) return PiLaurent(rational_from_double(v.get<double>()));
    if (v.is_string()) {
        try {
            return PiLaurent::parse(v.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError("coefficient " + std::string(key) + ": " + e.what());
        }
    }
    throw ParseError("coefficient " + std::string(key) + " must be a number or a string");
}

}  // namespace

ExactPWLCoefficients exact_coefficients_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("coefficient config must be a JSON object");
    ExactPWLCoefficients out;
    const auto fields = coefficient_fields<PiLaurent>();
    for (const auto& [block, body] : j.items()) {
        int order = 0;
        if (block == "order1")
            order = 1;
        else if (block == "order2")
            order = 2;
        else
            throw ParseError("unknown block '" + block + "' (expected order1/order2)");
        if (!body.is_object()) throw ParseError("block '" + block + "' must be an object");
        for (const auto& [key, value] : body.items()) {
            bool found = false;
            for (const auto& f : fields) {
                if (f.name == key && f.order == order) {
                    out.*(f.member) = value_from_json(value, key);
                    found = true;
                    break;
                }
            }
            if (!found) throw ParseError("unknown coefficient '" + key + "' in block '" + block + "'");
        }
    }
    return out;
}

PWLCoefficients coefficients_from_json(const nlohmann::json& j) {
    PWLCoefficients c = to_double(exact_coefficients_from_json(j));
    validate(c);
    return c;
}

nlohmann::json to_json(const PWLCoefficients& c) {
    nlohmann::json j = {{"order1", nlohmann::json::object()}, {"order2", nlohmann::json::object()}};
    for (const auto& f : coefficient_fields<double>())
        j[f.order == 1 ? "order1" : "order2"][std::string(f.name)] = c.*(f.member);
    return j;
}

nlohmann::json to_json(const ExactPWLCoefficients& c) {
    nlohmann::json j = {{"order1", nlohmann::json::object()}, {"order2", nlohmann::json::object()}};
    for (const auto& f : coefficient_fields<PiLaurent>())
        j[f.order == 1 ? "order1" : "order2"][std::string(f.name)] = (c.*(f.member)).to_string();
    return j;
}

}  // namespace pwl
