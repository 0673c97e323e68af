#pragma once

#include <optional>
#include <vector>

#include "polcheck/field/field_element.hpp"

namespace polcheck {

using Matrix = std::vector<std::vector<FieldElement>>;

/// Rank by Gaussian elimination, pivoting on the first nonzero entry of each column.
std::size_t matrix_rank(Matrix m);

/// One exact solution c of A c = b (free unknowns set to zero), or nullopt when inconsistent.
/// `spec` supplies the zero for an empty system.
std::optional<std::vector<FieldElement>> solve_linear(Matrix a, std::vector<FieldElement> b, const SpecPtr& spec);

}  // namespace polcheck
