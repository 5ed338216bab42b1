#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hardy/szego.hpp"
#include "hardy/symbol.hpp"

namespace hardy::tools {

/// One runner invocation: an optional JSON config file with command-line
/// flags layered on top. Unset list fields get per-subcommand defaults.
struct ExperimentConfig {
  std::string subcommand;
  std::vector<std::string> symbols;
  double alpha = 0.0;  // 0 = catalog default for the family
  double scale = 1.0;
  std::string g = "square";
  std::vector<std::size_t> ns;  // strictly increasing
  std::size_t m_nodes = 0;      // 0 = module default
  double r_cut = 0.0;           // 0 = symbol default
  int moment = 2;
  int j_max = 5;
  std::vector<double> lambdas;
  std::vector<double> scales;
  double tol = 1e-8;
  std::string kind = "K";  // build: K | T | diag | pochhammer
  std::string dump_path;
  std::string output;  // empty = stdout
  std::string format = "csv";
  bool quick = false;
};

using Cell = std::variant<std::string, std::int64_t, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Doubles use the shortest representation that parses back to the same
/// value, so CSV bodies are byte-deterministic and lossless.
std::string format_cell(const Cell& cell);

/// Leading `#` comment line carries the tool version and a config echo; the
/// body below it is byte-deterministic for identical configs.
void write_csv(std::ostream& out, const Table& table, const ExperimentConfig& cfg);
void write_json_rows(std::ostream& out, const Table& table, const ExperimentConfig& cfg);

/// Merge a JSON config file into cfg. Flags parsed afterwards override.
void load_config_file(const std::string& path, ExperimentConfig& cfg);

/// Fill empty list fields with the subcommand's defaults.
void apply_defaults(ExperimentConfig& cfg);

/// Range and consistency checks; throws DomainError with actionable text.
void validate(const ExperimentConfig& cfg);

nlohmann::json config_echo(const ExperimentConfig& cfg);

Symbol config_symbol(const ExperimentConfig& cfg, const std::string& name);

/// Descriptors: identity, square, power:M, ramp:L0:W.
TestFunction parse_g(const std::string& descriptor);

/// Dispatch on cfg.subcommand. Returns the process exit code.
int run(const ExperimentConfig& cfg);

}  // namespace hardy::tools
