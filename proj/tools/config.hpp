#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cfou::cli {

enum class Command { Simulate, Estimate, Mc, VerifyKernels, VerifyQuad, Bridge };

std::string command_name(Command c);
std::optional<Command> parse_command(const std::string& name);
const std::vector<Command>& all_commands();

enum class KeyType { Real, Count, Seed, RealList, CountList, Text };

struct KeySpec {
  std::string name;  // config key, e.g. "gamma.lambda"
  std::string flag;  // long flag, e.g. "--gamma.lambda"
  KeyType type;
  std::string help;
};

// Keys accepted by a command, in a fixed order.
const std::vector<KeySpec>& command_keys(Command c);

struct ExperimentConfig {
  Command command;
  nlohmann::json params;  // every accepted key, defaults filled in

  // Flat object {"command": ..., key: value, ...}.
  nlohmann::json to_json() const;
  double real(const std::string& key) const;
  std::size_t count(const std::string& key) const;
  std::uint64_t seed() const;
  std::string text(const std::string& key) const;
  std::vector<double> real_list(const std::string& key) const;
  std::vector<std::size_t> count_list(const std::string& key) const;
  bool has(const std::string& key) const;  // present and not null
};

// Converts a flag string to the key's JSON type; throws DomainError on bad input.
nlohmann::json parse_value(const KeySpec& ks, const std::string& text);

// Merges `base` (from a config file, may be empty) and flag overrides over
// the command defaults, rejects unknown keys and validates every range.
ExperimentConfig resolve(Command c, const nlohmann::json& base, const std::map<std::string, std::string>& flags);

// Reads a JSON config, a JSON report, or a CSV carrying "# config:".
nlohmann::json load_config_file(const std::string& path);

}  // namespace cfou::cli
