#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cfou/errors.hpp"
#include "cfou/report_io.hpp"

namespace cfou::cli {

using nlohmann::json;

namespace {

const KeySpec kLambda{"gamma.lambda", "--gamma.lambda", KeyType::Real, "real part of the drift (> 0)"};
const KeySpec kOmega{"gamma.omega", "--gamma.omega", KeyType::Real, "drift is lambda - i omega"};
const KeySpec kHurst{"hurst", "--hurst", KeyType::Real, "Hurst parameter in (0,1)"};
const KeySpec kTEnd{"t_end", "--t-end", KeyType::Real, "time horizon"};
const KeySpec kSteps{"n_steps", "--n-steps", KeyType::Count, "grid cells"};
const KeySpec kReps{"n_reps", "--n-reps", KeyType::Count, "Monte Carlo replications"};
const KeySpec kSeed{"seed", "--seed", KeyType::Seed, "base seed"};
const KeySpec kTList{"t_list", "--t-list", KeyType::RealList, "comma-separated horizons"};
const KeySpec kNList{"n_list", "--n-list", KeyType::CountList, "comma-separated grid sizes"};
const KeySpec kAlpha{"alpha", "--alpha", KeyType::Real, "kernel exponent in (0,hurst)"};
const KeySpec kGExp{"g_exp", "--g-exp", KeyType::Real, "bridge exponent in (hurst,1)"};
const KeySpec kMethod{"method", "--method", KeyType::Text, "estimator numerator or moment method"};
const KeySpec kMode{"mode", "--mode", KeyType::Text, "drift|inner|divergence|contraction|reduction"};
const KeySpec kOut{"out_path", "--out", KeyType::Text, "output file (stdout when empty)"};
const KeySpec kFormat{"format", "--format", KeyType::Text, "csv|json"};

constexpr std::uint64_t kDefaultSeed = 20240607;

json defaults(Command c) {
  json d = {{"out_path", ""}, {"format", "csv"}};
  switch (c) {
    case Command::Simulate:
      d.update({{"gamma.lambda", 1.0}, {"gamma.omega", 1.0}, {"hurst", 0.35}, {"t_end", 10.0}, {"n_steps", 4096},
                {"seed", kDefaultSeed}});
      break;
    case Command::Estimate:
      d.update({{"gamma.lambda", 1.0}, {"gamma.omega", 1.0}, {"hurst", 0.35}, {"t_end", 100.0}, {"n_steps", 16384},
                {"seed", kDefaultSeed}, {"method", "divergence"}});
      break;
    case Command::Mc:
      d.update({{"gamma.lambda", 1.0}, {"gamma.omega", 1.0}, {"hurst", 0.35}, {"t_list", {25.0, 50.0, 100.0}},
                {"n_steps", 16384}, {"n_reps", 500}, {"seed", kDefaultSeed}, {"method", "divergence"}});
      break;
    case Command::VerifyKernels:
      d.update({{"gamma.lambda", 1.0}, {"gamma.omega", 1.0}, {"hurst", 0.35}, {"mode", "drift"},
                {"t_list", nullptr}, {"n_list", {64, 128, 256, 512}}, {"t_end", nullptr}, {"n_steps", 48}});
      break;
    case Command::VerifyQuad:
      d.update({{"gamma.lambda", 1.0}, {"gamma.omega", 0.0}, {"hurst", 0.35}, {"t_list", {25.0, 50.0, 100.0}}});
      break;
    case Command::Bridge:
      d.update({{"hurst", 0.3}, {"alpha", 0.1}, {"g_exp", nullptr}, {"t_end", 1.0}, {"method", "all"},
                {"n_steps", 8192}, {"n_reps", 100000}, {"seed", kDefaultSeed}});
      break;
  }
  return d;
}

[[noreturn]] void invalid(const std::string& key, const std::string& why) {
  throw DomainError(key + ": " + why);
}

double to_real(const std::string& key, const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e || !std::isfinite(v)) invalid(key, "expected a number, got '" + s + "'");
  return v;
}

std::uint64_t to_count(const std::string& key, const std::string& s) {
  std::uint64_t v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e) invalid(key, "expected a non-negative integer, got '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

void check_type(const KeySpec& ks, const json& v) {
  if (v.is_null()) return;
  auto is_count = [](const json& x) { return x.is_number_unsigned() || (x.is_number_integer() && x.get<long long>() >= 0); };
  switch (ks.type) {
    case KeyType::Real:
      if (!v.is_number()) invalid(ks.name, "expected a number");
      break;
    case KeyType::Count:
    case KeyType::Seed:
      if (!is_count(v)) invalid(ks.name, "expected a non-negative integer");
      break;
    case KeyType::RealList:
      if (!v.is_array() || v.empty()) invalid(ks.name, "expected a non-empty list of numbers");
      for (const auto& x : v)
        if (!x.is_number()) invalid(ks.name, "expected a non-empty list of numbers");
      break;
    case KeyType::CountList:
      if (!v.is_array() || v.empty()) invalid(ks.name, "expected a non-empty list of integers");
      for (const auto& x : v)
        if (!is_count(x)) invalid(ks.name, "expected a non-empty list of integers");
      break;
    case KeyType::Text:
      if (!v.is_string()) invalid(ks.name, "expected a string");
      break;
  }
}

void require_one_of(const ExperimentConfig& c, const std::string& key, std::initializer_list<const char*> allowed) {
  const std::string v = c.text(key);
  for (const char* a : allowed)
    if (v == a) return;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  invalid(key, "must be one of " + list + ", got '" + v + "'");
}

void validate(ExperimentConfig& c) {
  auto positive = [&](const std::string& k) {
    if (c.has(k) && !(c.real(k) > 0.0)) invalid(k, "must be positive");
  };
  if (c.has("gamma.lambda")) positive("gamma.lambda");
  if (c.has("hurst")) {
    const double h = c.real("hurst");
    if (!(h > 0.0 && h < 1.0)) invalid("hurst", "must lie in (0,1)");
  }
  positive("t_end");
  if (c.has("n_steps") && c.count("n_steps") < 2) invalid("n_steps", "must be at least 2");
  if (c.has("n_reps") && c.count("n_reps") < 2) invalid("n_reps", "must be at least 2");
  if (c.has("t_list"))
    for (double t : c.real_list("t_list"))
      if (!(t > 0.0)) invalid("t_list", "entries must be positive");
  if (c.has("n_list"))
    for (std::size_t n : c.count_list("n_list"))
      if (n < 2) invalid("n_list", "entries must be at least 2");
  require_one_of(c, "format", {"csv", "json"});

  switch (c.command) {
    case Command::Estimate:
    case Command::Mc:
      require_one_of(c, "method", {"divergence", "forward"});
      break;
    case Command::VerifyKernels: {
      require_one_of(c, "mode", {"drift", "inner", "divergence", "contraction", "reduction"});
      const std::string mode = c.text("mode");
      if (!c.has("t_list"))
        c.params["t_list"] = mode == "contraction" ? json{5.0, 10.0, 20.0} : json{10.0, 20.0, 40.0};
      if (!c.has("t_end")) c.params["t_end"] = mode == "reduction" ? 10.0 : 5.0;
      break;
    }
    case Command::Bridge: {
      require_one_of(c, "method", {"closed", "quadrature", "mc", "all"});
      const double h = c.real("hurst"), a = c.real("alpha");
      if (!(a > 0.0 && a < h)) invalid("alpha", "must lie in (0,hurst)");
      if (c.has("g_exp")) {
        const double g = c.real("g_exp");
        if (!(g > h && g < 1.0)) invalid("g_exp", "must lie in (hurst,1)");
      }
      break;
    }
    default:
      break;
  }
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::Simulate:
      return "simulate";
    case Command::Estimate:
      return "estimate";
    case Command::Mc:
      return "mc";
    case Command::VerifyKernels:
      return "verify-kernels";
    case Command::VerifyQuad:
      return "verify-quad";
    case Command::Bridge:
      return "bridge";
  }
  return "";
}

const std::vector<Command>& all_commands() {
  static const std::vector<Command> all{Command::Simulate,      Command::Estimate,   Command::Mc,
                                        Command::VerifyKernels, Command::VerifyQuad, Command::Bridge};
  return all;
}

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : all_commands())
    if (command_name(c) == name) return c;
  return std::nullopt;
}

const std::vector<KeySpec>& command_keys(Command c) {
  static const std::vector<KeySpec> simulate{kLambda, kOmega, kHurst, kTEnd, kSteps, kSeed, kOut, kFormat};
  static const std::vector<KeySpec> estimate{kLambda, kOmega, kHurst, kTEnd, kSteps, kSeed, kMethod, kOut, kFormat};
  static const std::vector<KeySpec> mc{kLambda, kOmega, kHurst, kTList, kSteps, kReps, kSeed, kMethod, kOut, kFormat};
  static const std::vector<KeySpec> kernels{kLambda, kOmega, kHurst, kMode, kTList, kNList, kTEnd, kSteps, kOut,
                                            kFormat};
  static const std::vector<KeySpec> quadk{kLambda, kOmega, kHurst, kTList, kOut, kFormat};
  static const std::vector<KeySpec> bridge{kHurst, kAlpha, kGExp, kTEnd, kMethod, kSteps, kReps, kSeed, kOut, kFormat};
  switch (c) {
    case Command::Simulate:
      return simulate;
    case Command::Estimate:
      return estimate;
    case Command::Mc:
      return mc;
    case Command::VerifyKernels:
      return kernels;
    case Command::VerifyQuad:
      return quadk;
    case Command::Bridge:
      return bridge;
  }
  return simulate;
}

json parse_value(const KeySpec& ks, const std::string& text) {
  switch (ks.type) {
    case KeyType::Real:
      return to_real(ks.name, text);
    case KeyType::Count:
    case KeyType::Seed:
      return to_count(ks.name, text);
    case KeyType::RealList: {
      json a = json::array();
      for (const auto& s : split(text)) a.push_back(to_real(ks.name, s));
      if (a.empty()) invalid(ks.name, "expected a non-empty list");
      return a;
    }
    case KeyType::CountList: {
      json a = json::array();
      for (const auto& s : split(text)) a.push_back(to_count(ks.name, s));
      if (a.empty()) invalid(ks.name, "expected a non-empty list");
      return a;
    }
    case KeyType::Text:
      return text;
  }
  return nullptr;
}

ExperimentConfig resolve(Command c, const json& base, const std::map<std::string, std::string>& flags) {
  const auto& keys = command_keys(c);
  auto find = [&](const std::string& name) -> const KeySpec* {
    for (const auto& k : keys)
      if (k.name == name) return &k;
    return nullptr;
  };
  ExperimentConfig cfg{c, defaults(c)};
  if (!base.is_null()) {
    if (!base.is_object()) throw DomainError("config: expected a JSON object");
    for (const auto& [k, v] : base.items()) {
      if (k == "command") {
        if (!v.is_string() || v.get<std::string>() != command_name(c))
          throw DomainError("config: command does not match '" + command_name(c) + "'");
        continue;
      }
      const KeySpec* ks = find(k);
      if (!ks) throw DomainError("config: unknown key '" + k + "' for " + command_name(c));
      check_type(*ks, v);
      cfg.params[k] = v;
    }
  }
  for (const auto& [k, text] : flags) {
    const KeySpec* ks = find(k);
    if (!ks) throw DomainError("config: unknown key '" + k + "' for " + command_name(c));
    cfg.params[k] = parse_value(*ks, text);
  }
  validate(cfg);
  return cfg;
}

json ExperimentConfig::to_json() const {
  json j = {{"command", command_name(command)}};
  for (const auto& k : command_keys(command)) j[k.name] = params.contains(k.name) ? params.at(k.name) : json(nullptr);
  return j;
}

bool ExperimentConfig::has(const std::string& key) const { return params.contains(key) && !params.at(key).is_null(); }

double ExperimentConfig::real(const std::string& key) const {
  if (!has(key)) invalid(key, "missing");
  return params.at(key).get<double>();
}

std::size_t ExperimentConfig::count(const std::string& key) const {
  if (!has(key)) invalid(key, "missing");
  return params.at(key).get<std::size_t>();
}

std::uint64_t ExperimentConfig::seed() const { return has("seed") ? params.at("seed").get<std::uint64_t>() : 0; }

std::string ExperimentConfig::text(const std::string& key) const {
  if (!has(key)) invalid(key, "missing");
  return params.at(key).get<std::string>();
}

std::vector<double> ExperimentConfig::real_list(const std::string& key) const {
  if (!has(key)) invalid(key, "missing");
  return params.at(key).get<std::vector<double>>();
}

std::vector<std::size_t> ExperimentConfig::count_list(const std::string& key) const {
  if (!has(key)) invalid(key, "missing");
  return params.at(key).get<std::vector<std::size_t>>();
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open '" + path + "'");
  auto cfg = io::read_embedded_config(in);
  if (!cfg) throw DomainError("config: no configuration found in '" + path + "'");
  return *cfg;
}

}  // namespace cfou::cli
