#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "zetafock/bernoulli.hpp"
#include "zetafock/diffop.hpp"
#include "zetafock/field_checks.hpp"
#include "zetafock/fields.hpp"
#include "zetafock/fock_checks.hpp"

namespace zetafock::cli {

using fock::TwistSetup;
using fock::Variant;

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"abstract", "rep",        "jacobi", "mwa", "iterates",
                                              "genfun",   "delta", "generators", "dims"};
  return names;
}

namespace {

long integer_field(const nlohmann::json& j, const std::string& key, long fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError("field '" + key + "': expected an integer");
  return v.get<long>();
}

Rational fraction_field(const nlohmann::json& j, const std::string& key, const Rational& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  try {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError("field '" + key + "': " + e.what());
  }
  throw ConfigError("field '" + key + "': expected a fraction string");
}

void check_range(const std::string& name, long value, long lo) {
  if (value < lo) throw ConfigError("field '" + name + "': must be at least " + std::to_string(lo));
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  static const std::set<std::string> known{"setup", "suites", "r_max", "s_max", "m_max", "degree_max",
                                           "window", "y_order", "output", "jobs", "timing"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("unknown field '" + key + "'");
  RunConfig c;
  if (!j.contains("setup")) throw ConfigError("field 'setup': required");
  const auto& s = j.at("setup");
  if (!s.is_object() || !s.contains("p") || !s.contains("dims") || !s.at("p").is_number_integer() ||
      !s.at("dims").is_array())
    throw ConfigError("field 'setup': expected {\"p\": INT, \"dims\": [INT, ...]}");
  std::vector<int> dims;
  for (const auto& d : s.at("dims")) {
    if (!d.is_number_integer()) throw ConfigError("field 'setup.dims': expected integers");
    dims.push_back(d.get<int>());
  }
  try {
    c.setup = TwistSetup::make(s.at("p").get<int>(), dims);
  } catch (const fock::InvalidSetup& e) {
    throw ConfigError(std::string("field 'setup': ") + e.what());
  }
  if (j.contains("suites")) {
    if (!j.at("suites").is_array()) throw ConfigError("field 'suites': expected a list of names");
    for (const auto& n : j.at("suites")) {
      if (!n.is_string()) throw ConfigError("field 'suites': expected strings");
      c.suites.push_back(n.get<std::string>());
    }
  }
  c.r_max = integer_field(j, "r_max", c.r_max);
  c.s_max = integer_field(j, "s_max", c.s_max);
  c.m_max = integer_field(j, "m_max", c.m_max);
  c.degree_max = fraction_field(j, "degree_max", c.degree_max);
  c.window = integer_field(j, "window", c.window);
  c.y_order = integer_field(j, "y_order", c.y_order);
  if (j.contains("jobs")) {
    const long jobs = integer_field(j, "jobs", 1);
    check_range("jobs", jobs, 1);
    c.jobs = static_cast<unsigned>(jobs);
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string()) throw ConfigError("field 'output': expected a path");
    c.output = j.at("output").get<std::string>();
  }
  if (j.contains("timing")) {
    if (!j.at("timing").is_boolean()) throw ConfigError("field 'timing': expected a boolean");
    c.timing = j.at("timing").get<bool>();
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n');
    const auto nl = text.rfind('\n', pos == 0 ? 0 : pos - 1);
    const std::size_t col = nl == std::string::npos ? pos + 1 : pos - nl;
    throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
  }
  try {
    return config_from_json(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void validate(RunConfig& c) {
  check_range("r_max", c.r_max, 0);
  check_range("s_max", c.s_max, 0);
  check_range("m_max", c.m_max, 1);
  check_range("window", c.window, 1);
  check_range("y_order", c.y_order, 0);
  if (c.degree_max.sign() <= 0) throw ConfigError("field 'degree_max': must be positive");
  try {
    fock::degree_numerator(c.setup, c.degree_max);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("field 'degree_max': ") + e.what());
  }
  std::vector<std::string> expanded;
  for (const auto& s : c.suites) {
    if (s == "all") {
      expanded.insert(expanded.end(), suite_names().begin(), suite_names().end());
    } else if (std::find(suite_names().begin(), suite_names().end(), s) != suite_names().end()) {
      expanded.push_back(s);
    } else {
      throw ConfigError("field 'suites': unknown suite '" + s + "'");
    }
  }
  std::sort(expanded.begin(), expanded.end());
  expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());
  if (expanded.empty()) throw ConfigError("field 'suites': no suite requested");
  c.suites = expanded;
}

TwistSetup parse_setup(int p, const std::string& dims_csv) {
  std::vector<int> dims;
  std::stringstream ss(dims_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      dims.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--dims: '" + item + "' is not an integer");
    }
  }
  try {
    return TwistSetup::make(p, dims);
  } catch (const fock::InvalidSetup& e) {
    throw ConfigError(std::string("invalid setup: ") + e.what());
  }
}

namespace {

using Task = std::function<std::vector<CheckRecord>()>;

CheckRecord record(const std::string& suite, const std::string& name, nlohmann::json params) {
  CheckRecord rec;
  rec.suite = suite;
  rec.name = name;
  rec.params = std::move(params);
  return rec;
}

std::vector<CheckRecord> central_and_closure(long r, long s, long m_max) {
  using namespace diffop;
  std::vector<CheckRecord> out;
  {
    CheckRecord rec = record("abstract", "pure_monomial_central", {{"r", r}, {"s", s}, {"m_max", m_max}});
    nlohmann::json lhs = nlohmann::json::object(), rhs = nlohmann::json::object();
    for (long m = 1; m <= m_max; ++m) {
      const Rational a = bar_central_term(r, s, m), b = pure_monomial_central(r, s, m);
      lhs[std::to_string(m)] = a.str();
      rhs[std::to_string(m)] = b.str();
      if (a != b && rec.status == Status::Pass) {
        rec.status = Status::Fail;
        rec.witness = {{"m", m}};
      }
    }
    rec.lhs = lhs;
    rec.rhs = rhs;
    out.push_back(std::move(rec));
  }
  {
    CheckRecord rec = record("abstract", "closure_and_range", {{"r", r}, {"s", s}, {"m_max", m_max}});
    long cells = 0;
    for (long m = -m_max; m <= m_max && rec.passed(); ++m) {
      for (long n = -m_max; n <= m_max && rec.passed(); ++n) {
        const auto d = decompose(bracket(generator({m, r}), generator({n, s})), m + n);
        ++cells;
        bool ok = d.residual.is_zero();
        for (const auto& [i, c] : d.coefficients) ok = ok && i >= std::min(r, s) && i <= r + s;
        if (!ok) {
          rec.status = Status::Fail;
          nlohmann::json coeffs = nlohmann::json::object();
          for (const auto& [i, c] : d.coefficients) coeffs[std::to_string(i)] = c.str();
          rec.witness = {{"m", m}, {"n", n}, {"residual", d.residual.str()}, {"coefficients", coeffs}};
        }
      }
    }
    rec.info = {{"cells_compared", cells}};
    out.push_back(std::move(rec));
  }
  return out;
}

CheckRecord vacuum_record(const TwistSetup& setup, long r_max) {
  CheckRecord rec = record("rep", "vacuum_eigenvalues", {{"setup", setup}, {"r_max", r_max}});
  nlohmann::json lhs = nlohmann::json::object(), rhs = nlohmann::json::object();
  for (auto variant : {Variant::Plain, Variant::Bar}) {
    const std::string tag = variant == Variant::Plain ? "plain" : "bar";
    for (long r = 0; r <= r_max; ++r) {
      const Rational applied = fock::vacuum_eigenvalue(setup, r, variant);
      Rational closed(0);
      for (int k = 0; k < setup.p; ++k) {
        Rational b = bernoulli_poly(2 * r + 2, Rational(k, setup.p));
        if (variant == Variant::Plain) b -= bernoulli_number(2 * r + 2);
        closed += Rational(setup.dims[static_cast<std::size_t>(k)]) * b;
      }
      closed *= -Rational(r % 2 == 0 ? 1 : -1, 4 * (r + 1));
      const std::string key = tag + ":" + std::to_string(r);
      lhs[key] = applied.str();
      rhs[key] = closed.str();
      if (applied != closed && rec.status == Status::Pass) {
        rec.status = Status::Fail;
        rec.witness = {{"variant", tag}, {"r", r}};
      }
    }
  }
  rec.lhs = lhs;
  rec.rhs = rhs;
  return rec;
}

std::vector<Task> build_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  const TwistSetup setup = c.setup;
  const fields::FieldWindow win{c.window, c.degree_max};
  const auto has = [&](const char* s) { return std::find(c.suites.begin(), c.suites.end(), s) != c.suites.end(); };
  const auto one = [](CheckRecord r) { return std::vector<CheckRecord>{std::move(r)}; };

  // Source lists depend only on the setup.
  const fields::FieldEngine probe(setup);
  const auto with_vac = fields::weight_one_sources(probe, true);
  const auto plain = fields::weight_one_sources(probe, false);

  if (has("abstract"))
    for (long r = 0; r <= c.r_max; ++r)
      for (long s = 0; s <= c.s_max; ++s)
        tasks.push_back([=] { return central_and_closure(r, s, c.m_max); });

  if (has("rep")) {
    tasks.push_back([=] { return std::vector<CheckRecord>{vacuum_record(setup, c.r_max)}; });
    for (long r = 0; r <= c.r_max; ++r)
      for (long s = 0; s <= c.s_max; ++s)
        tasks.push_back([=] {
          fock::RepresentationChecker checker(setup, c.degree_max);
          std::vector<CheckRecord> out;
          for (long m = -c.m_max; m <= c.m_max; ++m)
            for (long n = -c.m_max; n <= c.m_max; ++n) out.push_back(checker.check(r, s, m, n, Variant::Plain));
          return out;
        });
  }

  if (has("jacobi")) {
    for (const auto& u : with_vac)
      for (const auto& v : with_vac)
        tasks.push_back([=] {
          fields::FieldEngine eng(setup);
          std::vector<CheckRecord> out{fields::jacobi_check(eng, u, v, win)};
          if (!u.empty() && !v.empty()) {
            out.push_back(fields::homogeneous_jacobi_check(eng, u, v, win));
            out.push_back(fields::homogeneous_commutator_check(eng, u, v, win));
          }
          return out;
        });
    tasks.push_back([=] {
      fields::FieldEngine eng(setup);
      return one(fields::virasoro_axiom_check(eng, c.window, c.degree_max));
    });
  }

  if (has("mwa")) {
    for (const auto& u : with_vac)
      for (const auto& v : with_vac)
        tasks.push_back([=] {
          fields::FieldEngine eng(setup);
          return one(fields::iterate_limit_check(eng, u, v, win));
        });
    tasks.push_back([=] {
      fields::FieldEngine eng(setup);
      return one(fields::assembly_check(eng, c.window, c.degree_max));
    });
  }

  if (has("iterates")) {
    tasks.push_back([=] {
      fields::FieldEngine eng(setup);
      return one(fields::iterate_identity_check(eng, 2, c.y_order, c.window, c.degree_max));
    });
    for (const auto& u1 : plain)
      for (const auto& v1 : plain)
        for (const auto& u2 : plain)
          for (const auto& v2 : plain)
            tasks.push_back([=] {
              fields::FieldEngine eng(setup);
              return one(fields::iterate_commutator_check(eng, u1, v1, u2, v2, c.y_order, c.window, c.degree_max));
            });
  }

  if (has("genfun")) {
    for (auto variant : {Variant::Plain, Variant::Bar})
      tasks.push_back([=] { return one(fields::genfun_check(setup, c.r_max, c.window, variant)); });
    tasks.push_back([=] { return one(fields::lbar_bracket_check(setup, c.y_order, c.window, c.degree_max)); });
  }

  if (has("delta")) tasks.push_back([=] { return one(fock::delta_genfun(setup, 2 * (c.r_max + 2))); });

  if (has("generators"))
    for (long m = 0; m <= std::min(c.r_max, 2L); ++m)
      tasks.push_back([=] {
        fields::FieldEngine eng(setup);
        return one(fields::generators_corollary_check(eng, m, c.window, c.degree_max));
      });

  if (has("dims")) tasks.push_back([=] { return one(fock::graded_dimension_check(setup, c.degree_max)); });
  return tasks;
}

}  // namespace

Report run(const RunConfig& c) {
  const std::vector<Task> tasks = build_tasks(c);
  std::vector<std::vector<CheckRecord>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        results[i] = tasks[i]();
      } catch (const std::exception& e) {
        CheckRecord rec = record("error", "task_" + std::to_string(i), nlohmann::json::object());
        rec.status = Status::Fail;
        rec.witness = {{"exception", e.what()}};
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        results[i] = {rec};
      }
    }
  };
  unsigned jobs = c.jobs != 0 ? c.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, tasks.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
  }
  Report report;
  for (auto& batch : results)
    for (auto& rec : batch) report.add(std::move(rec));
  report.sort();
  return report;
}

std::string summary_text(const Report& report) {
  std::ostringstream out;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_suite;
  for (const auto& r : report.records) {
    auto& [total, failed] = per_suite[r.suite];
    ++total;
    if (!r.passed()) {
      ++failed;
      out << "FAIL " << r.suite << "/" << r.name << " " << r.params.dump() << "\n"
          << "     witness " << r.witness.dump() << "\n";
    }
  }
  for (const auto& [suite, counts] : per_suite)
    out << std::left << std::setw(12) << suite << counts.first - counts.second << "/" << counts.first << " passed\n";
  out << "total " << report.records.size() << ", passed " << report.records.size() - report.failed() << ", failed "
      << report.failed() << "\n";
  return out.str();
}

std::string Table::render() const {
  std::vector<std::size_t> width(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::ostringstream out;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out << (i ? "  " : "") << std::right << std::setw(static_cast<int>(width[i])) << cells[i];
    out << "\n";
  };
  line(columns);
  for (const auto& row : rows) line(row);
  return out.str();
}

nlohmann::json Table::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
    out.push_back(obj);
  }
  return out;
}

Table corrections_table(const TwistSetup& setup, long r_max) {
  Table t{{"r", "plain", "bar"}, {}};
  for (long r = 0; r <= r_max; ++r)
    t.rows.push_back({std::to_string(r), fock::correction_scalar(setup, r, Variant::Plain).str(),
                      fock::correction_scalar(setup, r, Variant::Bar).str()});
  return t;
}

Table central_table(long r_max, long s_max, long m_max) {
  Table t{{"r", "s", "m", "central"}, {}};
  for (long r = 0; r <= r_max; ++r)
    for (long s = 0; s <= s_max; ++s)
      for (long m = 1; m <= m_max; ++m)
        t.rows.push_back({std::to_string(r), std::to_string(s), std::to_string(m), diffop::bar_central_term(r, s, m).str()});
  return t;
}

Table zeta_table(long r_max) {
  Table t{{"r", "argument", "zeta"}, {}};
  for (long r = 0; r <= r_max; ++r)
    t.rows.push_back({std::to_string(r), std::to_string(-1 - 2 * r), zeta_negative(1 + 2 * r).str()});
  return t;
}

Table delta_table(const TwistSetup& setup, long k_max) {
  const CheckRecord rec = fock::delta_genfun(setup, 2 * k_max);
  Table t{{"k", "eigenvalue_side", "closed_form_side", "status"}, {}};
  for (long k = 1; k <= k_max; ++k) {
    const std::string key = std::to_string(k);
    const std::string a = rec.lhs.at(key).get<std::string>(), b = rec.rhs.at(key).get<std::string>();
    t.rows.push_back({key, a, b, a == b ? "pass" : "fail"});
  }
  return t;
}

}  // namespace zetafock::cli
