#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "hardy/operators.hpp"
#include "hardy/symbol.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string read_all(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  ++counter;
  const fs::path dir = fs::temp_directory_path();
  const fs::path out = dir / ("hardy_cli_out_" + std::to_string(counter) + ".txt");
  const fs::path err = dir / ("hardy_cli_err_" + std::to_string(counter) + ".txt");
  const std::string cmd =
      std::string(HARDY_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_all(out);
  r.err = read_all(err);
  fs::remove(out);
  fs::remove(err);
  return r;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream is(line);
  std::string f;
  while (std::getline(is, f, ',')) fields.push_back(f);
  return fields;
}

// CSV layout: comment line, header, then data rows.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  const auto lines = split_lines(text);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 2; i < lines.size(); ++i)
    if (!lines[i].empty()) rows.push_back(split_fields(lines[i]));
  return rows;
}

int field_index(const std::string& header, const std::string& name) {
  const auto fields = split_fields(header);
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (fields[i] == name) return static_cast<int>(i);
  return -1;
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_CASE("catalog subcommand emits the full table") {
  const CliResult r = run_cli("catalog");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 6);
  bool saw_hilbert = false;
  for (const auto& entry : doc) {
    CHECK(entry.size() == 5);
    CHECK(entry.contains("name"));
    CHECK(entry.contains("alpha"));
    CHECK(entry.contains("hat_zero"));
    CHECK(entry.contains("sup_norm"));
    CHECK(entry.contains("l1_norm"));
    if (entry["name"] == "hilbert") {
      saw_hilbert = true;
      CHECK(entry["alpha"].get<double>() == 1.0);
      CHECK(entry["hat_zero"].get<double>() == 0.5);
      CHECK(std::abs(entry["sup_norm"].get<double>() - 3.14159265358979324) <= 1e-12);
      CHECK(std::abs(entry["l1_norm"].get<double>() - 3.14159265358979324) <= 1e-9);
    }
  }
  CHECK(saw_hilbert);
}

TEST_CASE("trace subcommand reproduces the harmonic sum") {
  const CliResult r = run_cli("trace --symbol min --alpha 1 --N 10");
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() >= 3);
  CHECK(lines[0].rfind("# hardy-spectra ", 0) == 0);
  const int ti = field_index(lines[1], "trace_kn");
  const int fi = field_index(lines[1], "trace_formula");
  const int ei = field_index(lines[1], "rel_err");
  REQUIRE(ti >= 0);
  REQUIRE(fi >= 0);
  REQUIRE(ei >= 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 1);
  const double h10 = 2.928968253968253968;
  CHECK(std::abs(std::stod(rows[0][ti]) - h10) <= 1e-7);
  CHECK(std::abs(std::stod(rows[0][fi]) - h10) <= 1e-7);
  CHECK(std::stod(rows[0][ei]) <= 1e-12);
}

TEST_CASE("density subcommand converges to the predicted limit") {
  const CliResult r = run_cli("density --symbol hilbert --N 32,64,128 --g square");
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() >= 5);
  const int pi = field_index(lines[1], "predicted_limit");
  const int ni = field_index(lines[1], "N");
  REQUIRE(pi >= 0);
  REQUIRE(ni >= 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) CHECK(std::abs(std::stod(row[pi]) - 1.0) <= 2e-8);
  CHECK(rows[0][ni] == "32");
  CHECK(rows[2][ni] == "128");
}

TEST_CASE("output bytes are deterministic") {
  const std::string args = "counting --symbol sinc --N 64,256 --lambda 1.5";
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.out == b.out);

  const auto la = split_lines(a.out);
  REQUIRE(la.size() >= 2);
  const auto rows = csv_rows(a.out);
  REQUIRE(rows.size() == 2);
}

TEST_CASE("error exit codes") {
  CHECK(run_cli("density --symbol nosuch").exit_code == 2);
  CHECK(run_cli("build --symbol hilbert --N 8").exit_code == 2);
  CHECK(run_cli("counting --symbol hilbert --N 25000 --lambda 1").exit_code == 3);
  CHECK(run_cli("density --symbol hilbert --g cubic").exit_code == 2);
  CHECK(run_cli("density --symbol hilbert --format xml").exit_code == 2);
  CHECK(run_cli("density --symbol hilbert --N 64,32").exit_code == 2);
  CHECK(run_cli("counting --symbol hilbert --lambda 0").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);

  const fs::path bad = temp_file("hardy_cli_bad_config.json");
  {
    std::ofstream os(bad);
    os << "{\"bogus_key\": 1}\n";
  }
  CHECK(run_cli("density --config " + bad.string()).exit_code == 2);
  {
    std::ofstream os(bad);
    os << "{\"subcommand\": \"trace\"}\n";
  }
  CHECK(run_cli("density --config " + bad.string()).exit_code == 2);
  {
    std::ofstream os(bad);
    os << "not json\n";
  }
  CHECK(run_cli("trace --config " + bad.string()).exit_code == 2);
  fs::remove(bad);
}

TEST_CASE("build subcommand writes a loadable dump") {
  const fs::path dump = temp_file("hardy_cli_dump.bin");
  const CliResult r = run_cli("build --symbol hilbert --N 6 --dump " + dump.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("kind=K") != std::string::npos);
  CHECK(r.out.find("N=6") != std::string::npos);

  std::ifstream raw(dump, std::ios::binary);
  REQUIRE(raw.good());
  char magic[4];
  raw.read(magic, 4);
  CHECK(std::string(magic, 4) == "HKM1");
  unsigned char dim_bytes[8];
  raw.read(reinterpret_cast<char*>(dim_bytes), 8);
  std::uint64_t dim = 0;
  for (int b = 7; b >= 0; --b) dim = (dim << 8) | dim_bytes[b];
  CHECK(dim == 6);
  raw.close();

  const hardy::Matrix back = hardy::read_matrix_dump(dump.string());
  const hardy::KernelMatrix direct = hardy::build_K(hardy::catalog_symbol("hilbert", 1.0), 6);
  REQUIRE(back.rows() == 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(back(i, j) == direct.entries(i, j));
  fs::remove(dump);
}

TEST_CASE("config file supplies defaults and flags override") {
  const fs::path cfg = temp_file("hardy_cli_config.json");
  {
    std::ofstream os(cfg);
    os << "{\"subcommand\": \"trace\", \"symbol\": \"min\", \"N\": [10]}\n";
  }

  const CliResult base = run_cli("trace --config " + cfg.string());
  REQUIRE(base.exit_code == 0);
  auto rows = csv_rows(base.out);
  REQUIRE(rows.size() == 1);
  const int ni = field_index(split_lines(base.out)[1], "N");
  REQUIRE(ni >= 0);
  CHECK(rows[0][ni] == "10");

  const CliResult over = run_cli("trace --config " + cfg.string() + " --N 12");
  REQUIRE(over.exit_code == 0);
  rows = csv_rows(over.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][ni] == "12");
  fs::remove(cfg);
}

TEST_CASE("json format carries the same data") {
  const CliResult r = run_cli("trace --symbol min --N 10 --format json");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["tool"] == "hardy-spectra");
  CHECK(doc.contains("version"));
  CHECK(doc.contains("config"));
  REQUIRE(doc["rows"].is_array());
  REQUIRE(doc["rows"].size() == 1);
  CHECK(std::abs(doc["rows"][0]["trace_kn"].get<double>() - 2.928968253968253968) <= 1e-7);
}

TEST_CASE("moments subcommand pins the first-moment gap") {
  const CliResult r = run_cli("moments --symbol hilbert --moment 1 --N 2");
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.out);
  const int gi = field_index(lines[1], "gap");
  REQUIRE(gi >= 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(std::abs(std::stod(rows[0][gi]) - 0.403426409720027345) <= 1e-12);
}

TEST_CASE("thm3 and dn subcommands run on small inputs") {
  const CliResult t = run_cli("thm3 --symbol min --scales 5,10 --N 200 --j-max 2");
  REQUIRE(t.exit_code == 0);
  const auto trows = csv_rows(t.out);
  REQUIRE(trows.size() == 2);
  const int di = field_index(split_lines(t.out)[1], "deviation");
  REQUIRE(di >= 0);
  for (const auto& row : trows) CHECK(std::stod(row[di]) > 0.0);

  const CliResult d = run_cli("dn --symbol hilbert --N 4 --m-nodes 64");
  REQUIRE(d.exit_code == 0);
  const auto drows = csv_rows(d.out);
  REQUIRE(drows.size() == 1);
  const auto header = split_lines(d.out)[1];
  CHECK(header == "symbol,alpha,N,m_nodes,R,dn_trace_norm,zeta_norm,eta_norm,trace_dn");
  const int ti = field_index(header, "dn_trace_norm");
  CHECK(std::stod(drows[0][ti]) > 0.0);
}

TEST_CASE("output flag writes the same bytes to a file") {
  const fs::path out = temp_file("hardy_cli_redirect.csv");
  const CliResult direct = run_cli("trace --symbol min --N 10");
  const CliResult filed = run_cli("trace --symbol min --N 10 --output " + out.string());
  REQUIRE(direct.exit_code == 0);
  REQUIRE(filed.exit_code == 0);
  CHECK(filed.out.empty());
  // The comment line echoes the config (including the output path), so
  // compare everything after it.
  const std::string file_text = read_all(out);
  const auto body = [](const std::string& s) { return s.substr(s.find('\n') + 1); };
  CHECK(body(file_text) == body(direct.out));
  fs::remove(out);
}

TEST_CASE("quick verification passes end to end") {
  const CliResult r = run_cli("verify --quick");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["tool"] == "hardy-spectra");
  CHECK(doc["passed"] == true);
  REQUIRE(doc["results"].is_array());
  CHECK(doc["results"].size() >= 5);
  for (const auto& res : doc["results"]) {
    CHECK(res.contains("check"));
    CHECK(res.contains("value"));
    CHECK(res.contains("expected"));
    CHECK(res.contains("tol"));
    CHECK(res.contains("pass"));
    CHECK(res["pass"] == true);
  }
}
