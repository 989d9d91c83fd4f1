#pragma once

#include <string>
#include <vector>

#include "dimersim/config.hpp"

namespace dimersim {

// Ready-made run configurations reproducing the library's reference
// figures. Names are stable identifiers like "fig2a".
std::vector<std::string> preset_names();

// The configuration behind a preset name; throws InvalidParameter for
// names not in preset_names(). Every preset validates cleanly and sets an
// 'output' file name.
RunConfig preset_config(const std::string& name);

}  // namespace dimersim
