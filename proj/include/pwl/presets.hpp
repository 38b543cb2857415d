#pragma once

#include "pwl/coefficients.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pwl {

/// "example1", "example1-literal", "example2".
std::vector<std::string> preset_names();

/// UnknownPreset for other names.
PWLCoefficients preset(std::string_view name);

/// Exact form where one exists (example1, example1-literal); nullopt for
/// example2, whose entries involve square roots. UnknownPreset otherwise.
std::optional<ExactPWLCoefficients> exact_preset(std::string_view name);

/// The published rational lambda choice giving roots at x = 1..7.
std::array<Rational, 8> choice_lambdas();

/// Exact lambdas a preset was constructed from (example2: the choice
/// above); nullopt for the others. UnknownPreset otherwise.
std::optional<std::array<Rational, 8>> preset_lambdas(std::string_view name);

/// Decimal expansions (40 significant digits) of the example2 entries.
struct PresetDigits {
    std::string_view field;
    std::string_view digits;
};
std::span<const PresetDigits> example2_digits();

}  // namespace pwl
