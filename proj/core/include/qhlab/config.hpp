#pragma once

#include <json.hpp>

#include <string>

namespace qhlab {

// Parses the key = value configuration dialect into JSON.
//
//   # comment
//   seed = 7
//   scenarios = ["run_diam_lemma"]
//   [run_diam_lemma]
//   domain = {kind = "Ball", center = [0, 0], radius = 1}
//
// Section headers open nested objects; values are numbers, booleans,
// strings, arrays and {key = value, ...} records. Text starting with '{' is
// read as JSON instead. Throws ConfigError with the line number on failure.
nlohmann::json parse_config(const std::string& text);
nlohmann::json load_config_file(const std::string& path);

} // namespace qhlab
