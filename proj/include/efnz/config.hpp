#ifndef EFNZ_CONFIG_HPP
#define EFNZ_CONFIG_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "efnz/denoiser.hpp"
#include "efnz/schedule.hpp"

namespace efnz {

using Json = nlohmann::json;

/// Schedule declaration:
///   {"base_steps": 1000, "beta_start": 1e-4, "beta_end": 0.02,
///    "eta": 1.0, "steps": 100, "zero_final_noise": false}
/// steps < base_steps respaces; omitted steps keeps the base schedule.
Schedule schedule_from_json(const Json& j);

/// Model declaration; see README for the per-type fields:
///   isotropic_gaussian, full_gaussian, gmm, stationary_field, conditional.
ModelPtr model_from_json(const Json& j);

/// Parses a config file. A manifest (object with an "effective_config"
/// key) is unwrapped to its embedded config, so runs can be repeated from
/// their manifests.
Json load_config_file(const std::filesystem::path& path);

/// Fetch helpers that raise ConfigError with the offending key.
double config_number(const Json& j, const std::string& key);
double config_number_or(const Json& j, const std::string& key, double fallback);
long long config_int(const Json& j, const std::string& key);
long long config_int_or(const Json& j, const std::string& key, long long fallback);
std::string config_string(const Json& j, const std::string& key);
bool config_bool_or(const Json& j, const std::string& key, bool fallback);

}  // namespace efnz

#endif  // EFNZ_CONFIG_HPP
