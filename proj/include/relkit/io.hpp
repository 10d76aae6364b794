#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "relkit/algebra.hpp"

namespace relkit {

/// Directory holding the bundled algebra fixtures. RELKIT_FIXTURES overrides
/// the compiled-in location.
std::filesystem::path fixture_directory();

/// Parse the JSON algebra document: {"size": n, "ops": [{name, arity, table}]}.
/// Extra top-level fields (name, description) are ignored.
FiniteAlgebra algebra_from_json(std::string_view text);
std::string algebra_to_json(const FiniteAlgebra& algebra);

/// Load from a file path, or from a bundled fixture when `name_or_path` is a
/// bare fixture name such as "lattice2".
FiniteAlgebra load_algebra(std::string_view name_or_path);

}  // namespace relkit
