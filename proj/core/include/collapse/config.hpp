#pragma once

#include <iosfwd>
#include <string>

#include "collapse/study.hpp"

namespace collapse {

// INI-style file with sections [profile], [fluid], [solver], [initial], [study].
// Missing keys keep the defaults of StudyConfig.
StudyConfig load_config(const std::string& path);
StudyConfig parse_config(std::istream& is);

// Thin-run specific key: [solver] epsilon (default 0.1).
double config_epsilon(const std::string& path);

}  // namespace collapse
