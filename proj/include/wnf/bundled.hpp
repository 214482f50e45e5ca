#pragma once

#include <map>
#include <string>

namespace wnf::bundled {

// Scenario texts compiled in from scenarios/*.ini, keyed by file stem.
const std::map<std::string, std::string>& scenarios();

}  // namespace wnf::bundled
