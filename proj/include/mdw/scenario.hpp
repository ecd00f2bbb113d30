#ifndef MDW_SCENARIO_HPP
#define MDW_SCENARIO_HPP

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "mdw/global_measure.hpp"

namespace mdw {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One parsed value: number, bare string, or (possibly nested) list. Tuples
/// (a, b, c) and lists [a, b, c] read identically.
struct ConfigValue {
  enum class Kind { number, string, list } kind = Kind::number;
  Real num = 0;
  std::string str;
  std::vector<ConfigValue> list;

  Real as_number() const;
  const std::string& as_string() const;
  const std::vector<ConfigValue>& as_list() const;
};

/// Nested key-value tree: `key = value` entries and `name { ... }` blocks.
/// Keys may repeat (atom/channel rows).
struct ConfigNode {
  std::vector<std::pair<std::string, ConfigValue>> entries;
  std::vector<std::pair<std::string, ConfigNode>> blocks;

  bool has(const std::string& key) const;
  const ConfigValue& get(const std::string& key) const;
  Real num(const std::string& key) const;
  Real num_or(const std::string& key, Real fallback) const;
  std::string str_or(const std::string& key, const std::string& fallback) const;
  std::vector<const ConfigValue*> all(const std::string& key) const;
  const ConfigNode* block(const std::string& name) const;
  const ConfigNode& require_block(const std::string& name) const;
};

ConfigNode parse_config(const std::string& text);
ConfigNode parse_config_file(const std::string& path);

/// Forcing block -> family; expected_dim checks coefficient indices (pass 0
/// to accept any declared dimension).
GlobalMeasure parse_forcing(const ConfigNode& node, int expected_dim);

/// Measure -> config text block (17-digit floats, bit-exact round trip for
/// atom times/values and density breakpoints/nodes).
std::string serialize_measure(const VectorMeasure& mu);
VectorMeasure parse_measure(const ConfigNode& node);

struct RunResult {
  json summary;
  bool all_checks_pass = true;
  int exit_code = 0;
};

/// Dispatch a parsed scenario: writes CSV artifacts and summary.json under
/// out_dir, returns the summary. Deterministic for fixed (config, seed),
/// independent of the thread count.
RunResult run_scenario(const ConfigNode& scenario, const std::string& out_dir,
                       std::uint64_t seed, unsigned threads);

/// Bundled scenario catalog: name -> config text. Every acceptance criterion
/// is covered by at least one entry (the `criteria` list in each config).
const std::map<std::string, std::string>& builtin_scenarios();

}  // namespace mdw

#endif
