#include "pwl/presets.hpp"

#include "pwl/errors.hpp"

#include <cstdlib>
#include <string>

namespace pwl {

namespace {

constexpr PresetDigits kExample2[] = {
    {"a01", "0.2628711426502877993009044945809099724768"},
    {"alpha01", "0.2628711426502877993009044945809099724768"},
    {"a11", "0.4997657346183855769962242990042696406618"},
    {"a21", "0.1587247188578360140598196071011815636378"},
    {"b01", "-0.2161673107770941415469240107275149229748"},
    {"beta01", "-0.2161673107770941415469240107275149229748"},
    {"b21", "0.001604495031669943459721173147037811968175"},
    {"alpha11", "-0.50137022965005552045594547215130745263"},
    {"a02", "0.2521791819440772910022552386775514465043"},
    {"a12", "0.03979111297191990659775224834398375723229"},
    {"b02", "0.1111660143794399816753841920742664602404"},
};

Rational q(long num, long den) {
    Rational r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return r;
}

ExactPWLCoefficients example1_exact(long a01) {
    ExactPWLCoefficients c;
    c.a01 = PiLaurent(a01);
    c.a11 = PiLaurent::pi_power(-1, -2);
    c.b01 = PiLaurent(q(1, 40));
    return c;
}

}  // namespace

std::vector<std::string> preset_names() { return {"example1", "example1-literal", "example2"}; }

std::span<const PresetDigits> example2_digits() { return kExample2; }

std::optional<ExactPWLCoefficients> exact_preset(std::string_view name) {
    if (name == "example1") return example1_exact(-1);
    if (name == "example1-literal") return example1_exact(-2);
    if (name == "example2") return std::nullopt;
    throw UnknownPreset("unknown preset '" + std::string(name) + "' (known: example1, example1-literal, example2)");
}

PWLCoefficients preset(std::string_view name) {
    if (auto exact = exact_preset(name)) return to_double(*exact);
    PWLCoefficients c;
    constexpr auto fields = coefficient_fields<double>();
    for (const auto& entry : kExample2)
        for (const auto& f : fields)
            if (f.name == entry.field) c.*(f.member) = std::strtod(std::string(entry.digits).c_str(), nullptr);
    return c;
}

std::optional<std::array<Rational, 8>> preset_lambdas(std::string_view name) {
    exact_preset(name);  // validates the name
    if (name == "example2") return choice_lambdas();
    return std::nullopt;
}

std::array<Rational, 8> choice_lambdas() {
    return {Rational(1),
            q(-434699860, 124987243),
            q(-18912094, 124987243),
            q(5527397195, 874910701),
            q(1929240, 1582117),
            q(-613409686, 124987243),
            q(11037105503, 1749821402),
            q(-6534, 874910701)};
}

}  // namespace pwl
