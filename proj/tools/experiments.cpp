#include "experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>
#include <set>
#include <string>

#include "hardy/errors.hpp"
#include "hardy/factorization.hpp"
#include "hardy/linalg.hpp"
#include "hardy/operators.hpp"
#include "hardy/verify.hpp"
#include "hardy/version.hpp"

namespace hardy::tools {
namespace {

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::vector<double> parse_numbers(const std::string& descriptor, std::size_t skip) {
  std::vector<double> out;
  std::size_t pos = skip;
  while (pos < descriptor.size()) {
    std::size_t next = descriptor.find(':', pos);
    if (next == std::string::npos) next = descriptor.size();
    const std::string piece = descriptor.substr(pos, next - pos);
    try {
      out.push_back(std::stod(piece));
    } catch (const std::exception&) {
      throw DomainError("bad numeric field '" + piece + "' in descriptor '" + descriptor + "'");
    }
    pos = next + 1;
  }
  return out;
}

Table density_table(const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"symbol", "alpha",           "g",
               "N",      "M_N",             "predicted_limit",
               "extrapolated_limit", "abs_err"};
  const TestFunction g = parse_g(cfg.g);
  for (const auto& name : cfg.symbols) {
    const Symbol sym = config_symbol(cfg, name);
    const DensityReport rep = density_report(sym, g, cfg.ns, cfg.tol);
    for (const auto& row : rep.rows)
      t.rows.push_back({sym.id().family, sym.id().alpha, g.name(),
                        static_cast<std::int64_t>(row.n), row.m_n,
                        rep.predicted_limit, rep.extrapolated_limit, row.abs_err});
  }
  return t;
}

Table counting_table(const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"symbol", "alpha", "lambda", "N", "count", "count_over_logN", "predicted"};
  for (const auto& name : cfg.symbols) {
    const Symbol sym = config_symbol(cfg, name);
    std::vector<Spectrum> spectra;
    spectra.reserve(cfg.ns.size());
    for (std::size_t n : cfg.ns) spectra.push_back(eigh(build_K(sym, n).entries));
    for (double lambda : cfg.lambdas) {
      const CountingLimit limit = counting_limit(sym, lambda);
      if (limit.ambiguous)
        std::cerr << "note: phi has a plateau at lambda=" << format_double(lambda)
                  << " for symbol " << sym.id().str() << "; the predicted density is ambiguous\n";
      for (std::size_t i = 0; i < cfg.ns.size(); ++i) {
        const std::size_t n = cfg.ns[i];
        const auto count = static_cast<std::int64_t>(spectra[i].count_above(lambda));
        t.rows.push_back({sym.id().family, sym.id().alpha, lambda,
                          static_cast<std::int64_t>(n), count,
                          counting_ratio(spectra[i], lambda, n), limit.value});
      }
    }
  }
  return t;
}

Table trace_table(const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"symbol", "alpha", "N", "trace_kn", "trace_formula", "rel_err"};
  for (const auto& name : cfg.symbols) {
    const Symbol sym = config_symbol(cfg, name);
    for (std::size_t n : cfg.ns) {
      const auto [from_entries, from_formula] = trace_identity(sym, n);
      t.rows.push_back({sym.id().family, sym.id().alpha, static_cast<std::int64_t>(n),
                        from_entries, from_formula,
                        std::abs(from_entries - from_formula) / std::abs(from_formula)});
    }
  }
  return t;
}

Table moments_table(const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"symbol", "alpha", "m", "N", "m_nodes", "gap"};
  for (const auto& name : cfg.symbols) {
    const Symbol sym = config_symbol(cfg, name);
    for (std::size_t n : cfg.ns) {
      const std::size_t nodes =
          cfg.moment == 1 ? 0
                          : (cfg.m_nodes != 0 ? cfg.m_nodes
                                              : default_t_nodes(static_cast<double>(n)));
      t.rows.push_back({sym.id().family, sym.id().alpha,
                        static_cast<std::int64_t>(cfg.moment),
                        static_cast<std::int64_t>(n), static_cast<std::int64_t>(nodes),
                        moment_gap(sym, cfg.moment, n, cfg.m_nodes)});
    }
  }
  return t;
}

Table dn_table(const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"symbol", "alpha",   "N",         "m_nodes", "R",
               "dn_trace_norm", "zeta_norm", "eta_norm", "trace_dn"};
  for (const auto& name : cfg.symbols) {
    const Symbol sym = config_symbol(cfg, name);
    for (std::size_t n : cfg.ns) {
      const DnRow row = dn_study_row(sym, n, cfg.r_cut, cfg.m_nodes);
      t.rows.push_back({sym.id().family, sym.id().alpha, static_cast<std::int64_t>(row.n),
                        static_cast<std::int64_t>(row.m_nodes), row.r_cut,
                        row.dn_trace_norm, row.zeta_norm, row.eta_norm, row.trace_dn});
    }
  }
  return t;
}

Table thm3_table(const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"symbol", "alpha", "scale", "N", "j_max", "deviation"};
  for (const auto& name : cfg.symbols) {
    const Symbol sym = config_symbol(cfg, name);
    for (double scale : cfg.scales)
      for (std::size_t n : cfg.ns)
        t.rows.push_back({sym.id().family, sym.id().alpha, scale,
                          static_cast<std::int64_t>(n),
                          static_cast<std::int64_t>(cfg.j_max),
                          eigen13_deviation(sym, scale, n, cfg.j_max)});
  }
  return t;
}

nlohmann::json catalog_json() {
  auto arr = nlohmann::json::array();
  for (const auto& entry : catalog()) {
    const Symbol sym = catalog_symbol(entry.name, entry.default_alpha);
    arr.push_back({{"name", entry.name},
                   {"alpha", entry.default_alpha},
                   {"hat_zero", sym.hat_zero()},
                   {"sup_norm", sym.sup_norm()},
                   {"l1_norm", sym.l1_norm()}});
  }
  return arr;
}

int run_verify(const ExperimentConfig& cfg, std::ostream& out) {
  const VerifyReport report = run_acceptance(cfg.quick, &std::cerr);
  nlohmann::json j;
  j["tool"] = "hardy-spectra";
  j["version"] = version_string;
  j["config"] = config_echo(cfg);
  j["passed"] = report.passed();
  auto results = nlohmann::json::array();
  for (const auto& r : report.results)
    results.push_back({{"check", r.check},
                       {"value", r.value},
                       {"expected", r.expected},
                       {"tol", r.tol},
                       {"pass", r.pass},
                       {"detail", r.detail}});
  j["results"] = std::move(results);
  out << j.dump(2) << '\n';
  return report.passed() ? 0 : 1;
}

int run_build(const ExperimentConfig& cfg, std::ostream& out) {
  const std::size_t n = cfg.ns.front();
  Matrix entries;
  std::string built;
  double quad_bound = -1.0;
  bool warn = false;
  if (cfg.kind == "pochhammer") {
    if (cfg.alpha < 1.0 || cfg.alpha != std::floor(cfg.alpha))
      throw DomainError("build --kind pochhammer needs an integer --alpha >= 1");
    const KernelMatrix km = build_pochhammer(static_cast<std::int64_t>(cfg.alpha), n);
    entries = km.entries;
    built = km.symbol.str();
  } else {
    const Symbol sym = config_symbol(cfg, cfg.symbols.front());
    built = sym.id().str();
    if (cfg.kind == "K") {
      entries = build_K(sym, n).entries;
    } else if (cfg.kind == "diag") {
      entries = build_diagonal_limit(sym, n).entries;
    } else {
      const std::size_t nodes =
          cfg.m_nodes != 0 ? cfg.m_nodes : default_t_nodes(static_cast<double>(n));
      const NystromOperator op = build_T(sym, static_cast<double>(n), nodes);
      entries = op.entries;
      quad_bound = op.quad_error_bound;
      warn = op.bandwidth_warning;
    }
  }
  write_matrix_dump(cfg.dump_path, entries);
  out << "kind=" << cfg.kind << " symbol=" << built << " N=" << n
      << " dim=" << entries.rows() << " trace=" << format_double(entries.trace())
      << " frobenius=" << format_double(entries.frobenius_norm());
  if (quad_bound >= 0.0) out << " quad_error_bound=" << format_double(quad_bound);
  out << " dump=" << cfg.dump_path << '\n';
  if (warn) std::cerr << "warning: grid step exceeds a quarter of the kernel bandwidth\n";
  return 0;
}

const std::set<std::string>& known_subcommands() {
  static const std::set<std::string> s = {"catalog", "build",   "density",
                                          "counting", "trace",  "moments",
                                          "dn",       "thm3",   "verify"};
  return s;
}

}  // namespace

std::string format_cell(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return format_double(std::get<double>(cell));
}

void write_csv(std::ostream& out, const Table& table, const ExperimentConfig& cfg) {
  out << "# hardy-spectra " << version_string << ' ' << config_echo(cfg).dump() << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
  for (const auto& row : table.rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      out << format_cell(row[c]) << (c + 1 < row.size() ? "," : "\n");
}

void write_json_rows(std::ostream& out, const Table& table, const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["tool"] = "hardy-spectra";
  j["version"] = version_string;
  j["config"] = config_echo(cfg);
  j["columns"] = table.columns;
  auto rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string& key = table.columns[c];
      if (const auto* s = std::get_if<std::string>(&row[c]))
        obj[key] = *s;
      else if (const auto* i = std::get_if<std::int64_t>(&row[c]))
        obj[key] = *i;
      else
        obj[key] = std::get<double>(row[c]);
    }
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << '\n';
}

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file: " + path);
  const nlohmann::json j = nlohmann::json::parse(in);
  if (!j.is_object()) throw DomainError("config file must hold a JSON object: " + path);
  for (const auto& [key, val] : j.items()) {
    if (key == "subcommand") {
      cfg.subcommand = val.get<std::string>();
    } else if (key == "symbol") {
      if (val.is_string())
        cfg.symbols = {val.get<std::string>()};
      else
        cfg.symbols = val.get<std::vector<std::string>>();
    } else if (key == "alpha") {
      cfg.alpha = val.get<double>();
    } else if (key == "scale") {
      cfg.scale = val.get<double>();
    } else if (key == "g") {
      cfg.g = val.get<std::string>();
    } else if (key == "N") {
      cfg.ns = val.get<std::vector<std::size_t>>();
    } else if (key == "m_nodes") {
      cfg.m_nodes = val.get<std::size_t>();
    } else if (key == "r_cut") {
      cfg.r_cut = val.get<double>();
    } else if (key == "moment") {
      cfg.moment = val.get<int>();
    } else if (key == "j_max") {
      cfg.j_max = val.get<int>();
    } else if (key == "lambda") {
      if (val.is_number())
        cfg.lambdas = {val.get<double>()};
      else
        cfg.lambdas = val.get<std::vector<double>>();
    } else if (key == "scales") {
      cfg.scales = val.get<std::vector<double>>();
    } else if (key == "tol") {
      cfg.tol = val.get<double>();
    } else if (key == "kind") {
      cfg.kind = val.get<std::string>();
    } else if (key == "dump") {
      cfg.dump_path = val.get<std::string>();
    } else if (key == "output") {
      cfg.output = val.get<std::string>();
    } else if (key == "format") {
      cfg.format = val.get<std::string>();
    } else if (key == "quick") {
      cfg.quick = val.get<bool>();
    } else {
      throw DomainError("unknown config key: " + key);
    }
  }
}

void apply_defaults(ExperimentConfig& cfg) {
  if (cfg.symbols.empty())
    cfg.symbols = {cfg.subcommand == "thm3" ? "min" : "hilbert"};
  if (cfg.ns.empty()) {
    if (cfg.subcommand == "density" || cfg.subcommand == "counting")
      cfg.ns = {256, 1024, 4096};
    else if (cfg.subcommand == "trace")
      cfg.ns = {10, 100, 1000};
    else if (cfg.subcommand == "moments")
      cfg.ns = {256, 1024};
    else if (cfg.subcommand == "dn")
      cfg.ns = {16, 64, 256, 1024};
    else if (cfg.subcommand == "thm3")
      cfg.ns = {2000};
    else
      cfg.ns = {64};
  }
  if (cfg.lambdas.empty()) cfg.lambdas = {1.0};
  if (cfg.scales.empty()) cfg.scales = {10.0, 20.0, 40.0};
}

void validate(const ExperimentConfig& cfg) {
  if (known_subcommands().count(cfg.subcommand) == 0)
    throw DomainError("unknown subcommand: " + cfg.subcommand);
  if (cfg.symbols.empty()) throw DomainError("at least one --symbol is required");
  for (std::size_t i = 0; i < cfg.ns.size(); ++i) {
    if (cfg.ns[i] < 1) throw DomainError("--N entries must be >= 1");
    if (i > 0 && cfg.ns[i] <= cfg.ns[i - 1])
      throw DomainError("--N list must be strictly increasing");
  }
  if (cfg.alpha < 0.0) throw DomainError("--alpha must be positive (or 0 for the catalog default)");
  if (!(cfg.scale > 0.0)) throw DomainError("--scale must be positive");
  if (!(cfg.tol > 0.0) || cfg.tol > 0.5)
    throw DomainError("--tol must lie in (0, 0.5]");
  if (cfg.m_nodes != 0 && cfg.m_nodes < 2)
    throw DomainError("--m-nodes must be 0 (default) or >= 2");
  if (cfg.r_cut < 0.0) throw DomainError("--r-cut must be >= 0");
  if (cfg.moment < 1 || cfg.moment > 12)
    throw DomainError("--moment must lie in [1, 12]");
  if (cfg.j_max < 1 || cfg.j_max > 10)
    throw DomainError("--j-max must lie in [1, 10]");
  if (cfg.format != "csv" && cfg.format != "json")
    throw DomainError("--format must be csv or json");
  if (cfg.subcommand == "counting")
    for (double lambda : cfg.lambdas)
      if (!(lambda > 0.0)) throw DomainError("--lambda entries must be positive");
  if (cfg.subcommand == "thm3")
    for (double scale : cfg.scales)
      if (!(scale >= 1.0)) throw DomainError("--scales entries must be >= 1");
  if (cfg.subcommand == "build") {
    if (cfg.kind != "K" && cfg.kind != "T" && cfg.kind != "diag" && cfg.kind != "pochhammer")
      throw DomainError("--kind must be one of K, T, diag, pochhammer");
    if (cfg.dump_path.empty()) throw DomainError("build requires --dump PATH");
    if (cfg.ns.size() != 1) throw DomainError("build takes exactly one --N value");
  }
}

nlohmann::json config_echo(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["subcommand"] = cfg.subcommand;
  j["symbol"] = cfg.symbols;
  j["alpha"] = cfg.alpha;
  j["scale"] = cfg.scale;
  j["g"] = cfg.g;
  j["N"] = cfg.ns;
  j["m_nodes"] = cfg.m_nodes;
  j["r_cut"] = cfg.r_cut;
  j["moment"] = cfg.moment;
  j["j_max"] = cfg.j_max;
  j["lambda"] = cfg.lambdas;
  j["scales"] = cfg.scales;
  j["tol"] = cfg.tol;
  j["kind"] = cfg.kind;
  j["dump"] = cfg.dump_path;
  j["output"] = cfg.output;
  j["format"] = cfg.format;
  j["quick"] = cfg.quick;
  return j;
}

Symbol config_symbol(const ExperimentConfig& cfg, const std::string& name) {
  double alpha = cfg.alpha;
  if (alpha == 0.0) {
    for (const auto& entry : catalog())
      if (entry.name == name) {
        alpha = entry.default_alpha;
        break;
      }
    if (alpha == 0.0) throw DomainError("unknown symbol: " + name);
  }
  Symbol sym = catalog_symbol(name, alpha);
  if (cfg.scale != 1.0) sym = scale_symbol(sym, cfg.scale);
  return sym;
}

TestFunction parse_g(const std::string& descriptor) {
  if (descriptor == "identity") return TestFunction::power(1);
  if (descriptor == "square") return TestFunction::power(2);
  if (descriptor.rfind("power:", 0) == 0) {
    const auto fields = parse_numbers(descriptor, 6);
    if (fields.size() != 1 || fields[0] != std::floor(fields[0]) || fields[0] < 1.0)
      throw DomainError("power descriptor needs one integer degree >= 1: " + descriptor);
    return TestFunction::power(static_cast<int>(fields[0]));
  }
  if (descriptor.rfind("ramp:", 0) == 0) {
    const auto fields = parse_numbers(descriptor, 5);
    if (fields.size() != 2)
      throw DomainError("ramp descriptor needs two fields ramp:L0:W: " + descriptor);
    return TestFunction::clipped_ramp(fields[0], fields[1]);
  }
  throw DomainError("unknown test function descriptor: " + descriptor +
                    " (expected identity, square, power:M, or ramp:L0:W)");
}

int run(const ExperimentConfig& cfg) {
  validate(cfg);
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) throw DomainError("cannot open output path: " + cfg.output);
    out = &file;
  }

  if (cfg.subcommand == "catalog") {
    *out << catalog_json().dump(2) << '\n';
    return 0;
  }
  if (cfg.subcommand == "verify") return run_verify(cfg, *out);
  if (cfg.subcommand == "build") return run_build(cfg, *out);

  Table table;
  if (cfg.subcommand == "density")
    table = density_table(cfg);
  else if (cfg.subcommand == "counting")
    table = counting_table(cfg);
  else if (cfg.subcommand == "trace")
    table = trace_table(cfg);
  else if (cfg.subcommand == "moments")
    table = moments_table(cfg);
  else if (cfg.subcommand == "dn")
    table = dn_table(cfg);
  else
    table = thm3_table(cfg);

  if (cfg.format == "json")
    write_json_rows(*out, table, cfg);
  else
    write_csv(*out, table, cfg);
  return 0;
}

}  // namespace hardy::tools
