#pragma once

#include "replete/ideal.hpp"
#include "replete/number_field.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace replete {

// Presets: "Q", "Qi", "Qsqrt:<d>" (also "Q(sqrt,<d>)") and "poly:c0,c1,...,1"
// for a monic polynomial with its power basis.
NumberField field_from_name(std::string_view name);

// JSON document {"poly": [c0, ..., 1], "basis": [["p/q", ...], ...]} with
// the basis optional.
FieldSpec parse_field_spec(std::string_view text);
// Throws IoError when the file cannot be read.
NumberField field_from_spec_file(const std::string& path);

RationalVector parse_rational_list(std::string_view text);
// "[c1,...,cn]" or "c1,...,cn" in integral-basis coordinates.
FieldElement parse_element(const NumberField& k, std::string_view text);

// "gen:[...]" where the list is either a flat coordinate list cut into
// chunks of n or a list of bracketed elements; "O" is the unit ideal.
FracIdeal parse_ideal(const NumberField& k, std::string_view text);
// "<ideal> | n1, n2, ..." with one value per place or a single shared value.
// Without the bar every archimedean component is 1.
RepleteIdeal parse_replete(const NumberField& k, std::string_view text);

// Finite edits "[coords]^e; [coords]^e; ..."; an empty string gives none.
std::vector<PrincipalEdit> parse_edits(const NumberField& k, std::string_view text);

struct ExpressionValue {
  std::optional<FracIdeal> ideal;
  std::optional<Rational> number;
};

// Expressions over ideal literals: mul(A, B), inv(A), pow(A, e), norm(A).
ExpressionValue evaluate_ideal_expression(const NumberField& k, std::string_view text);

}  // namespace replete
