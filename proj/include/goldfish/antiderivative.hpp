#pragma once

#include <optional>

#include "goldfish/sym_matrix.hpp"

namespace goldfish {

// Antiderivative of a rational expression with respect to one variable,
// computed by the Horowitz-Ostrogradsky reduction. Returns nullopt when the
// antiderivative is not a rational function (nonzero logarithmic part).
// Other variables are carried along as symbolic constants.
std::optional<expr> antiderivative(const expr& e, int var);

}  // namespace goldfish
