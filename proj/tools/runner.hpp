#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zetafock/fock.hpp"
#include "zetafock/rational.hpp"
#include "zetafock/report.hpp"

namespace zetafock::cli {

/// Usage or configuration error; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& suite_names();

struct RunConfig {
  fock::TwistSetup setup;
  std::vector<std::string> suites;
  long r_max = 2;
  long s_max = 2;
  long m_max = 3;
  Rational degree_max{2};
  long window = 2;
  long y_order = 1;
  std::string output;
  unsigned jobs = 0;
  bool timing = false;
};

/// Reads a configuration object. Unknown keys and suite names are rejected
/// with the offending field named in the message.
RunConfig config_from_json(const nlohmann::json& j);

/// Parses a configuration file; JSON syntax errors report line and column.
RunConfig load_config(const std::string& path);

/// Applies the invariants: bounds in range, degree_max denominator dividing p,
/// known suites ("all" expands to every suite).
void validate(RunConfig& config);

fock::TwistSetup parse_setup(int p, const std::string& dims_csv);

Report run(const RunConfig& config);

/// One line per failing record plus the totals.
std::string summary_text(const Report& report);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::string render() const;
  nlohmann::json to_json() const;
};

Table corrections_table(const fock::TwistSetup& setup, long r_max);
Table central_table(long r_max, long s_max, long m_max);
Table zeta_table(long r_max);
Table delta_table(const fock::TwistSetup& setup, long k_max);

}  // namespace zetafock::cli
