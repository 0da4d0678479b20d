#pragma once

#include "moolts/stmt.hpp"

namespace moolts::scpp {

// Structural equality modulo a bijective renaming of generated "__fv*"
// variables and "__lbl*" labels. User identifiers must match exactly.
bool alpha_equal(const Program& a, const Program& b);

}  // namespace moolts::scpp
