#include <cstddef>
#include <exception>
#include <iostream>
#include <new>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "experiments.hpp"
#include "hardy/errors.hpp"
#include "hardy/version.hpp"

namespace {

std::string config_path_from_argv(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  using hardy::tools::ExperimentConfig;
  ExperimentConfig cfg;

  const std::string config_path = config_path_from_argv(argc, argv);
  if (!config_path.empty()) {
    try {
      hardy::tools::load_config_file(config_path, cfg);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "invalid config file: " << e.what() << '\n';
      return 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << "invalid config: " << e.what() << '\n';
      return 2;
    }
  }
  const std::string file_subcommand = cfg.subcommand;

  CLI::App app{"Hardy kernel spectra experiment runner"};
  app.require_subcommand(1);
  std::string config_sink;
  app.add_option("--config", config_sink, "JSON config file; flags override its values");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_sink, "JSON config file; flags override its values");
    sub->add_option("--output", cfg.output, "write to this path instead of stdout");
    sub->add_option("--format", cfg.format, "csv or json");
  };
  auto add_symbol = [&](CLI::App* sub) {
    sub->add_option("--symbol", cfg.symbols, "catalog symbol names (comma separated)")
        ->delimiter(',');
    sub->add_option("--alpha", cfg.alpha, "family parameter (0 = catalog default)");
    sub->add_option("--scale", cfg.scale, "dilation applied to the symbol");
  };
  auto add_ns = [&](CLI::App* sub) {
    sub->add_option("--N", cfg.ns, "matrix sizes, strictly increasing")->delimiter(',');
  };

  CLI::App* cat = app.add_subcommand("catalog", "dump symbol catalog metadata as JSON");
  add_common(cat);

  CLI::App* build = app.add_subcommand("build", "build one matrix and write a binary dump");
  add_common(build);
  add_symbol(build);
  add_ns(build);
  build->add_option("--kind", cfg.kind, "K, T, diag, or pochhammer");
  build->add_option("--dump", cfg.dump_path, "dump file path");
  build->add_option("--m-nodes", cfg.m_nodes, "quadrature nodes for kind=T (0 = default)");

  CLI::App* density = app.add_subcommand("density", "spectral density sweep");
  add_common(density);
  add_symbol(density);
  add_ns(density);
  density->add_option("--g", cfg.g, "test function: identity, square, power:M, ramp:L0:W");
  density->add_option("--tol", cfg.tol, "limit quadrature tolerance");

  CLI::App* counting = app.add_subcommand("counting", "eigenvalue counting-law sweep");
  add_common(counting);
  add_symbol(counting);
  add_ns(counting);
  counting->add_option("--lambda", cfg.lambdas, "thresholds (comma separated)")->delimiter(',');

  CLI::App* trace = app.add_subcommand("trace", "trace identity table");
  add_common(trace);
  add_symbol(trace);
  add_ns(trace);

  CLI::App* moments = app.add_subcommand("moments", "matrix vs operator moment gap");
  add_common(moments);
  add_symbol(moments);
  add_ns(moments);
  moments->add_option("--moment", cfg.moment, "moment order m >= 1");
  moments->add_option("--m-nodes", cfg.m_nodes, "operator quadrature nodes (0 = default)");

  CLI::App* dn = app.add_subcommand("dn", "Gram difference trace-norm sweep");
  add_common(dn);
  add_symbol(dn);
  add_ns(dn);
  dn->add_option("--m-nodes", cfg.m_nodes, "Gram quadrature nodes (0 = default)");
  dn->add_option("--r-cut", cfg.r_cut, "t-domain cutoff (0 = symbol default)");

  CLI::App* thm3 = app.add_subcommand("thm3", "eigenvalue emergence under symbol dilation");
  add_common(thm3);
  add_symbol(thm3);
  add_ns(thm3);
  thm3->add_option("--scales", cfg.scales, "dilation factors (comma separated)")->delimiter(',');
  thm3->add_option("--j-max", cfg.j_max, "eigenvalue index cap");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  add_common(verify);
  verify->add_flag("--quick", cfg.quick, "smoke subset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (!file_subcommand.empty() && file_subcommand != cfg.subcommand) {
    std::cerr << "config file requests subcommand '" << file_subcommand
              << "' but the command line invoked '" << cfg.subcommand << "'\n";
    return 2;
  }

  try {
    hardy::tools::apply_defaults(cfg);
    return hardy::tools::run(cfg);
  } catch (const hardy::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return 2;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
