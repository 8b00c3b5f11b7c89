#pragma once
// Named model lookup shared by the command-line tools and the bindings.

#include <string>
#include <vector>

#include "cuntz/model.hpp"

namespace cuntz {

// Builds the model a name refers to. Plain names: extnat, twopoint, calkin,
// lsc-step, goodearl, rotation, whk, laff, wtilde-goodearl, wtilde-rotation.
// Parametrized: subsemigroup:2,3  intervals:2  tuples:3  uhf:2.
// Throws std::invalid_argument for anything else.
ModelPtr modelByName(const std::string& name);

std::vector<std::string> modelNames();

}  // namespace cuntz
