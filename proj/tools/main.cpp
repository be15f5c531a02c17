#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#ifdef ZETAFOCK_SYSTEM_CLI11
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "runner.hpp"
#include "zetafock/bernoulli.hpp"

using namespace zetafock;
using namespace zetafock::cli;

namespace {

struct CommonOptions {
  std::string config;
  std::optional<int> p;
  std::optional<std::string> dims;
  std::optional<long> r_max, s_max, m_max, window, y_order;
  std::optional<std::string> degree_max;
  std::string out;
  std::optional<unsigned> jobs;
  bool timing = false;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--config", o.config, "JSON configuration file");
  app->add_option("--p", o.p, "period of the isometry");
  app->add_option("--dims", o.dims, "eigenspace dimensions d_0,...,d_{p-1}");
  app->add_option("--r-max", o.r_max, "largest generator level r");
  app->add_option("--s-max", o.s_max, "largest generator level s (defaults to r-max)");
  app->add_option("--m-max", o.m_max, "largest |mode|");
  app->add_option("--degree-max", o.degree_max, "largest Fock degree, a fraction with denominator dividing p");
  app->add_option("--window", o.window, "largest |exponent| in identity checks");
  app->add_option("--y-order", o.y_order, "largest y-order in generating-function checks");
  app->add_option("--out", o.out, "write JSON here");
  app->add_option("--jobs", o.jobs, "worker threads");
  app->add_flag("--timing", o.timing, "include elapsed_ms in JSON");
}

RunConfig make_config(const CommonOptions& o, std::vector<std::string> suites) {
  RunConfig c;
  if (!o.config.empty()) c = load_config(o.config);
  if (o.p || o.dims) {
    if (!o.p || !o.dims) throw ConfigError("--p and --dims must be given together");
    c.setup = parse_setup(*o.p, *o.dims);
  } else if (o.config.empty()) {
    throw ConfigError("a setup is required: --p INT --dims CSV or --config FILE");
  }
  if (!suites.empty()) c.suites = std::move(suites);
  if (o.r_max) {
    c.r_max = *o.r_max;
    if (!o.s_max) c.s_max = *o.r_max;
  }
  if (o.s_max) c.s_max = *o.s_max;
  if (o.m_max) c.m_max = *o.m_max;
  if (o.window) c.window = *o.window;
  if (o.y_order) c.y_order = *o.y_order;
  if (o.degree_max) {
    try {
      c.degree_max = Rational::parse(*o.degree_max);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("--degree-max: ") + e.what());
    }
  }
  if (!o.out.empty()) c.output = o.out;
  if (o.jobs) {
    if (*o.jobs == 0) throw ConfigError("--jobs: must be at least 1");
    c.jobs = *o.jobs;
  }
  if (o.timing) c.timing = true;
  validate(c);
  return c;
}

void emit_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << j.dump(2) << "\n";
}

int run_verify(const CommonOptions& o, const std::string& suite) {
  const RunConfig c = make_config(o, suite.empty() ? std::vector<std::string>{} : std::vector<std::string>{suite});
  const auto t0 = std::chrono::steady_clock::now();
  const Report report = run(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit_json(report.to_json(c.timing), c.output);
  std::ostream& text = c.output.empty() ? std::cerr : std::cout;
  text << summary_text(report) << "wall time " << std::fixed << std::setprecision(2) << secs << " s\n";
  return report.ok() ? 0 : 1;
}

int run_table(const CommonOptions& o, const std::string& kind) {
  const long r_max = o.r_max.value_or(3);
  Table t;
  if (kind == "zeta") {
    t = zeta_table(r_max);
  } else if (kind == "central") {
    t = central_table(r_max, o.s_max.value_or(r_max), o.m_max.value_or(3));
  } else {
    RunConfig c = make_config(o, {"all"});
    t = kind == "corrections" ? corrections_table(c.setup, o.r_max.value_or(1)) : delta_table(c.setup, o.r_max.value_or(4));
  }
  std::cout << t.render();
  if (!o.out.empty()) emit_json(t.to_json(), o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of twisted modules for the differential-operator algebra"};
  app.require_subcommand(1);

  CommonOptions verify_opts, table_opts;
  std::string suite, kind;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> verify_choices = suite_names();
  verify_choices.push_back("all");
  verify->add_option("suite", suite, "suite to run (defaults to the configuration's list)")->check(CLI::IsMember(verify_choices));
  add_common(verify, verify_opts);

  auto* table = app.add_subcommand("table", "print exact tables");
  table->add_option("kind", kind, "table kind")
      ->required()
      ->check(CLI::IsMember({"corrections", "central", "zeta", "delta"}));
  add_common(table, table_opts);

  long n = 0;
  std::optional<std::string> x;
  auto* bern = app.add_subcommand("bernoulli", "Bernoulli numbers and polynomials");
  bern->add_option("--n", n, "index")->required()->check(CLI::NonNegativeNumber);
  bern->add_option("--x", x, "evaluate B_n(x) at this fraction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return run_verify(verify_opts, suite);
    if (table->parsed()) return run_table(table_opts, kind);
    if (bern->parsed()) {
      std::cout << (x ? bernoulli_poly(n, Rational::parse(*x)) : bernoulli_number(n)).str() << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
