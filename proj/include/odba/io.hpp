#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "odba/bae.hpp"
#include "odba/boundary.hpp"
#include "odba/identities.hpp"
#include "odba/transfer.hpp"

namespace odba {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "odba-su3/1";

// Bad configuration or input file; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double newton = 1e-12;  // BAE residual norm
  double match = 1e-6;    // sup-norm distance to an exact eigenvalue curve
};

struct RunConfig {
  ChainSpec spec;
  BoundaryPair pair;
  Tolerances tolerances;
  std::uint64_t rng_seed = 1;
};

// Strict: unknown keys, wrong types, eta = 0, c = 0 or c' = 0 and c1 = 0 all throw ConfigError.
// Complex numbers are a JSON number or [re, im].
RunConfig parse_config(const json& j);
RunConfig load_config(const std::string& path);
json config_to_json(const RunConfig& cfg);

// The benchmark configuration (N = 2, eta = 0.3, kind I).
RunConfig reference_config();

// Seed files: array of {"M": int, "lambda1": [[re, im], ...], "lambda2": [[re, im], ...]}.
std::vector<BetheState> parse_states(const json& j, int n_sites);
std::vector<BetheState> load_states(const std::string& path, int n_sites);
json state_to_json(const BetheState& s);
json states_to_json(const std::vector<BetheState>& states);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j, const std::string& what);

json report_to_json(const Report& r);

// Serializer with 17 significant digits for every double; two-space indent when indent > 0.
std::string dump(const json& j, int indent = 2);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace odba
