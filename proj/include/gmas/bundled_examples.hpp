#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gmas {

// Bundled example networks by name. Each entry is a list of
// (filename, file content) pairs.
const std::map<std::string, std::vector<std::pair<std::string, std::string>>>&
bundled_networks();

}  // namespace gmas
