#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace qhlab::cli {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::uint64_t> budget;
  std::optional<double> mesh;
  std::optional<unsigned> jobs;
};

// Exit status: 0 when every scenario passes, 1 on a failed check, 2 on a
// configuration or runtime error.
int run_config(const nlohmann::json& config, const Overrides& flags, std::ostream& log);
int run_config_file(const std::string& path, const Overrides& flags, std::ostream& log);

void list_scenarios(std::ostream& os);

} // namespace qhlab::cli
