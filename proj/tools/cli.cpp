#include "cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/casimir.h"

namespace casimir::cli {

namespace {

using nlohmann::json;

/// Engine failure after valid input; maps to exit_computation.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelDeleter {
  void operator()(casimir_model* m) const { casimir_model_free(m); }
};
struct ResultDeleter {
  void operator()(casimir_result* r) const { casimir_result_free(r); }
};
struct TraceDeleter {
  void operator()(casimir_trace* t) const { casimir_trace_free(t); }
};
using ModelHandle = std::unique_ptr<casimir_model, ModelDeleter>;
using ResultHandle = std::unique_ptr<casimir_result, ResultDeleter>;
using TraceHandle = std::unique_ptr<casimir_trace, TraceDeleter>;

struct Options {
  std::string model = "drude";
  std::string omega_p = "9eV";
  std::string gamma_d = "0.035eV";
  double temp = 300.0;
  double d_min = 0.1e-6;
  double d_max = 5e-6;
  std::optional<double> d_single;
  int points = 50;
  bool linear = false;
  std::string prescription = "both";
  std::string out_format = "csv";
  bool plot = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::optional<double> rel_tol;
  std::optional<std::size_t> max_terms;
  std::string output;

  double radius = 0.0;

  std::string path = "fixed-q";
  double q = 1e6;
  double p = 2.0;
  double xi_start = 1e14;
  int decades = 8;
  int per_decade = 3;
};

struct Prescribed {
  casimir_prescription id;
  const char* name;
};

constexpr Prescribed pointwise{CASIMIR_POINTWISE, "pointwise"};
constexpr Prescribed ideal_te0{CASIMIR_IDEAL_TE_ZERO, "ideal-te0"};

std::vector<Prescribed> prescriptions_of(const std::string& flag) {
  if (flag == "pointwise") return {pointwise};
  if (flag == "ideal-te0") return {ideal_te0};
  if (flag == "both") return {pointwise, ideal_te0};
  throw UsageError("--prescription must be pointwise, ideal-te0 or both");
}

ModelHandle make_model(const Options& o) {
  casimir_model* raw = nullptr;
  casimir_status s;
  if (o.model == "ideal") {
    s = casimir_model_ideal(&raw);
  } else if (o.model == "vacuum") {
    s = casimir_model_vacuum(&raw);
  } else if (o.model == "plasma") {
    s = casimir_model_plasma(parse_frequency(o.omega_p), &raw);
  } else if (o.model == "drude") {
    s = casimir_model_drude(parse_frequency(o.omega_p), parse_frequency(o.gamma_d), &raw);
  } else if (o.model.rfind("table:", 0) == 0) {
    s = casimir_model_load_table(o.model.substr(6).c_str(), &raw);
  } else {
    throw UsageError("--model must be ideal, plasma, drude, vacuum or table:PATH");
  }
  if (s != CASIMIR_OK) throw UsageError(std::string("cannot build material model: ") + casimir_last_error());
  return ModelHandle(raw);
}

casimir_sum_config make_config(const Options& o) {
  casimir_sum_config cfg;
  casimir_sum_config_default(&cfg);
  if (o.rel_tol) {
    if (!(*o.rel_tol > 0.0 && *o.rel_tol <= 1e-4)) throw UsageError("--rel-tol must be in (0, 1e-4]");
    cfg.term_rel_tol = *o.rel_tol;
  }
  if (o.max_terms) {
    if (*o.max_terms < 10) throw UsageError("--max-terms must be >= 10");
    cfg.max_terms = *o.max_terms;
  }
  return cfg;
}

std::vector<double> gaps_of(const Options& o) {
  if (o.d_single) {
    if (!(*o.d_single > 0.0)) throw UsageError("--d must be positive");
    return {*o.d_single};
  }
  if (!(o.d_min > 0.0) || !(o.d_min < o.d_max)) throw UsageError("need 0 < --dmin < --dmax");
  if (o.points < 2) throw UsageError("--points must be >= 2");
  return gap_grid(o.d_min, o.d_max, o.points, !o.linear);
}

void check_common(const Options& o) {
  if (!(o.temp > 0.0) || !std::isfinite(o.temp)) throw UsageError("--temp must be positive");
  if (o.jobs < 1) throw UsageError("--jobs must be >= 1");
  if (o.out_format != "csv" && o.out_format != "json") throw UsageError("--out must be csv or json");
  if (o.plot && o.output.empty()) throw UsageError("--plot needs -o/--output so the script can find the data");
  if (o.plot && o.out_format != "csv") throw UsageError("--plot reads CSV; use --out csv");
}

// Runs fn(i) for i in [0, count) on `jobs` threads. fn must not throw.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
  };
  std::vector<std::jthread> pool;
  const unsigned extra = std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)) - 1;
  for (unsigned j = 0; j < extra; ++j) pool.emplace_back(worker);
  worker();
}

/// Tabular output shared by every subcommand.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> cells;  // already formatted
  std::vector<std::vector<json>> values;        // same content for JSON

  void add(std::vector<std::pair<std::string, json>> row) {
    std::vector<std::string> text;
    std::vector<json> vals;
    for (auto& [cell, value] : row) {
      text.push_back(std::move(cell));
      vals.push_back(std::move(value));
    }
    cells.push_back(std::move(text));
    values.push_back(std::move(vals));
  }
};

std::pair<std::string, json> num(double v) { return {format_number(v), v}; }
std::pair<std::string, json> str(const std::string& s) { return {s, s}; }
std::pair<std::string, json> count(std::size_t n) { return {std::to_string(n), n}; }

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
  os << '\n';
  for (const auto& row : t.cells) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << row[k];
    os << '\n';
  }
}

json metadata(const std::string& command, const Options& o, const casimir_sum_config& cfg) {
  json m;
  m["command"] = command;
  m["version"] = casimir_version();
  m["constants"] = {{"hbar_J_s", casimir_const_hbar()},
                    {"c_m_s", casimir_const_c()},
                    {"k_B_J_K", casimir_const_kb()}};
  json c = {{"model", o.model}, {"T_K", o.temp}, {"term_rel_tol", cfg.term_rel_tol},
            {"max_terms", cfg.max_terms}, {"quad_rel_tol", cfg.quad_rel_tol},
            {"quad_tail_cut", cfg.quad_tail_cut}};
  if (o.model == "plasma" || o.model == "drude") c["omega_p_rad_s"] = parse_frequency(o.omega_p);
  if (o.model == "drude") c["gamma_d_rad_s"] = parse_frequency(o.gamma_d);
  m["config"] = std::move(c);
  return m;
}

void write_json(std::ostream& os, const Table& t, json meta) {
  json rows = json::array();
  for (const auto& row : t.values) {
    json obj = json::object();
    for (std::size_t k = 0; k < row.size(); ++k) obj[t.columns[k]] = row[k];
    rows.push_back(std::move(obj));
  }
  os << json{{"metadata", std::move(meta)}, {"rows", std::move(rows)}}.dump(2) << '\n';
}

std::string plot_script(const std::string& csv_path, const std::string& x, const std::string& y,
                        const std::string& group, bool log_y) {
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
    << "# Generated by casimir-cli; plots " << y << " against " << x << ".\n"
    << "import csv\nimport matplotlib.pyplot as plt\n\n"
    << "series = {}\n"
    << "with open(" << json(csv_path).dump() << ") as fh:\n"
    << "    for row in csv.DictReader(line for line in fh if not line.startswith('#')):\n"
    << "        key = row.get(" << json(group).dump() << ", " << json(y).dump() << ")\n"
    << "        series.setdefault(key, ([], []))\n"
    << "        series[key][0].append(float(row[" << json(x).dump() << "]))\n"
    << "        series[key][1].append(abs(float(row[" << json(y).dump() << "])))\n\n"
    << "for key, (xs, ys) in series.items():\n"
    << "    plt.plot(xs, ys, label=key)\n"
    << "plt.xscale('log')\n"
    << (log_y ? "plt.yscale('log')\n" : "")
    << "plt.xlabel(" << json(x).dump() << ")\n"
    << "plt.ylabel(" << json("|" + y + "|").dump() << ")\n"
    << "plt.legend()\n"
    << "plt.savefig(" << json(csv_path + ".png").dump() << ", dpi=150)\n";
  return s.str();
}

void emit(const Options& o, std::ostream& out, const Table& t, const json& meta, const std::string& x,
          const std::string& y, const std::string& group, bool log_y, const std::string& trailer = {}) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) throw UsageError("cannot open output file " + o.output);
    os = &file;
  }
  if (o.out_format == "json") {
    write_json(*os, t, meta);
  } else {
    write_csv(*os, t);
    if (!trailer.empty() && os == &out) out << "# " << trailer << '\n';
  }
  if (o.plot) {
    std::ofstream script(o.output + ".plot.py");
    if (!script) throw UsageError("cannot write plot script");
    script << plot_script(o.output, x, y, group, log_y);
  }
  if (!trailer.empty() && os != &out) out << trailer << '\n';
}

struct PointResult {
  casimir_status status = CASIMIR_OK;
  std::string message;
  double pressure = 0.0;
  double free_energy = 0.0;
  double eta = 0.0;
  std::size_t n_terms = 0;
  double est_rel_err = 0.0;
};

PointResult compute_point(const casimir_model* model, double d, double T, casimir_prescription p,
                          const casimir_sum_config& cfg) {
  PointResult r;
  casimir_result* raw = nullptr;
  r.status = casimir_pressure(model, d, T, p, &cfg, &raw);
  ResultHandle result(raw);
  if (r.status != CASIMIR_OK) r.message = casimir_last_error();
  if (result) {
    r.pressure = casimir_result_pressure(result.get());
    r.free_energy = casimir_result_free_energy(result.get());
    r.eta = casimir_result_eta(result.get());
    r.n_terms = casimir_result_n_used(result.get());
    r.est_rel_err = casimir_result_est_rel_err(result.get());
  }
  return r;
}

// Evaluates every (gap, prescription) pair on the worker pool, in deterministic slots.
std::vector<PointResult> compute_grid(const Options& o, const casimir_model* model,
                                      const std::vector<double>& gaps,
                                      const std::vector<Prescribed>& presc, const casimir_sum_config& cfg) {
  std::vector<PointResult> results(gaps.size() * presc.size());
  parallel_for(results.size(), o.jobs, [&](std::size_t i) {
    results[i] = compute_point(model, gaps[i / presc.size()], o.temp, presc[i % presc.size()].id, cfg);
  });
  return results;
}

// Reports failures on stderr; returns true when any point failed.
bool report_failures(const std::vector<PointResult>& results, const std::vector<double>& gaps,
                     const std::vector<Prescribed>& presc, std::ostream& err) {
  bool failed = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].status == CASIMIR_OK) continue;
    failed = true;
    err << "error: d=" << format_number(gaps[i / presc.size()]) << " " << presc[i % presc.size()].name
        << ": " << results[i].message << '\n';
  }
  if (failed) err << "error: output is partial; failed points were omitted\n";
  return failed;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  check_common(o);
  const auto presc = prescriptions_of(o.prescription);
  const auto gaps = gaps_of(o);
  const auto cfg = make_config(o);
  const ModelHandle model = make_model(o);
  const std::string model_name = casimir_model_name(model.get());

  const auto results = compute_grid(o, model.get(), gaps, presc, cfg);
  Table t;
  t.columns = {"d_m", "T_K", "model", "prescription", "pressure_Pa", "free_energy_J_m2", "eta",
               "n_terms", "est_rel_err"};
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (r.status != CASIMIR_OK) continue;
    t.add({num(gaps[i / presc.size()]), num(o.temp), str(model_name), str(presc[i % presc.size()].name),
           num(r.pressure), num(r.free_energy), num(r.eta), count(r.n_terms), num(r.est_rel_err)});
  }
  const bool failed = report_failures(results, gaps, presc, err);
  emit(o, out, t, metadata("sweep", o, cfg), "d_m", "pressure_Pa", "prescription", true);
  return failed ? exit_computation : exit_ok;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  check_common(o);
  const std::vector<Prescribed> presc = {pointwise, ideal_te0};
  const auto gaps = gaps_of(o);
  const auto cfg = make_config(o);
  const ModelHandle model = make_model(o);

  const auto results = compute_grid(o, model.get(), gaps, presc, cfg);
  Table t;
  t.columns = {"d_m", "ratio", "abs_diff_Pa"};
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    const auto& pw = results[2 * k];
    const auto& te0 = results[2 * k + 1];
    if (pw.status != CASIMIR_OK || te0.status != CASIMIR_OK) continue;
    const double ratio = te0.pressure != 0.0 ? pw.pressure / te0.pressure : 1.0;
    t.add({num(gaps[k]), num(ratio), num(std::abs(te0.pressure - pw.pressure))});
  }
  const bool failed = report_failures(results, gaps, presc, err);
  emit(o, out, t, metadata("compare", o, cfg), "d_m", "ratio", "", false);
  return failed ? exit_computation : exit_ok;
}

int cmd_pfa(const Options& o, std::ostream& out, std::ostream& err) {
  check_common(o);
  if (!(o.radius > 0.0)) throw UsageError("--radius must be positive");
  const auto presc = prescriptions_of(o.prescription);
  const auto gaps = gaps_of(o);
  const auto cfg = make_config(o);
  const ModelHandle model = make_model(o);

  if (o.radius < 100.0 * gaps.back())
    err << "warning: proximity force approximation needs R >> d; R = " << format_number(o.radius)
        << " m is below 100 d_max = " << format_number(100.0 * gaps.back()) << " m\n";

  struct Force {
    casimir_status status;
    std::string message;
    double value;
  };
  std::vector<Force> forces(gaps.size() * presc.size());
  parallel_for(forces.size(), o.jobs, [&](std::size_t i) {
    double f = 0.0;
    const casimir_status s = casimir_pfa_sphere_plate(model.get(), o.radius, gaps[i / presc.size()], o.temp,
                                                      presc[i % presc.size()].id, &cfg, &f, nullptr);
    forces[i] = Force{s, s == CASIMIR_OK ? std::string() : casimir_last_error(), f};
  });

  Table t;
  t.columns = {"d_m", "prescription", "force_N"};
  bool failed = false;
  for (std::size_t i = 0; i < forces.size(); ++i) {
    if (forces[i].status != CASIMIR_OK) {
      failed = true;
      err << "error: d=" << format_number(gaps[i / presc.size()]) << ": " << forces[i].message << '\n';
      continue;
    }
    t.add({num(gaps[i / presc.size()]), str(presc[i % presc.size()].name), num(forces[i].value)});
  }
  if (failed) err << "error: output is partial; failed points were omitted\n";
  json meta = metadata("pfa", o, cfg);
  meta["config"]["radius_m"] = o.radius;
  emit(o, out, t, meta, "d_m", "force_N", "prescription", true);
  return failed ? exit_computation : exit_ok;
}

int cmd_limit_probe(const Options& o, std::ostream& out, std::ostream&) {
  if (o.out_format != "csv" && o.out_format != "json") throw UsageError("--out must be csv or json");
  if (o.plot && o.output.empty()) throw UsageError("--plot needs -o/--output");
  casimir_path_kind kind;
  double param;
  if (o.path == "fixed-q") {
    kind = CASIMIR_PATH_FIXED_Q;
    param = o.q;
  } else if (o.path == "fixed-p") {
    kind = CASIMIR_PATH_FIXED_P;
    param = o.p;
  } else {
    throw UsageError("--path must be fixed-q or fixed-p");
  }
  const ModelHandle model = make_model(o);
  casimir_trace* raw = nullptr;
  if (casimir_trace_limit(model.get(), kind, param, o.xi_start, o.decades, o.per_decade, &raw) != CASIMIR_OK)
    throw UsageError(casimir_last_error());
  const TraceHandle trace(raw);
  casimir_limit_class cls;
  if (casimir_trace_classify(trace.get(), &cls) != CASIMIR_OK) throw UsageError(casimir_last_error());

  Table t;
  t.columns = {"xi", "gamma0", "gamma1", "diff", "ratio", "rte2"};
  for (std::size_t i = 0; i < casimir_trace_row_count(trace.get()); ++i) {
    casimir_trace_row r;
    casimir_trace_get_row(trace.get(), i, &r);
    t.add({num(r.xi), num(r.gamma0), num(r.gamma1), num(r.diff), num(r.ratio), num(r.rte2)});
  }
  json meta;
  meta["command"] = "limit-probe";
  meta["version"] = casimir_version();
  meta["config"] = {{"model", o.model}, {"path", o.path}, {"path_param", param}, {"xi_start", o.xi_start},
                    {"decades", o.decades}, {"per_decade", o.per_decade}};
  meta["classification"] = casimir_limit_class_name(cls);
  emit(o, out, t, meta, "xi", "rte2", "", true,
       std::string("classification: ") + casimir_limit_class_name(cls));
  return exit_ok;
}

void add_material_flags(CLI::App* app, Options& o) {
  app->add_option("--model", o.model, "ideal | plasma | drude | vacuum | table:PATH")->capture_default_str();
  app->add_option("--omega-p", o.omega_p, "plasma frequency, e.g. 9eV or 1.37e16rad/s")->capture_default_str();
  app->add_option("--gamma-d", o.gamma_d, "Drude relaxation frequency, e.g. 0.035eV")->capture_default_str();
  app->add_option("-o,--output", o.output, "write results to this file instead of stdout");
  app->add_option("--out", o.out_format, "csv | json")->capture_default_str();
  app->add_flag("--plot", o.plot, "also write <output>.plot.py for matplotlib");
}

void add_sweep_flags(CLI::App* app, Options& o) {
  add_material_flags(app, o);
  app->add_option("--temp", o.temp, "temperature, K")->capture_default_str();
  app->add_option("--dmin", o.d_min, "smallest gap, m")->capture_default_str();
  app->add_option("--dmax", o.d_max, "largest gap, m")->capture_default_str();
  app->add_option("--d", o.d_single, "single gap, m (overrides the range)");
  app->add_option("--points", o.points, "number of gaps")->capture_default_str();
  auto* log = app->add_flag("--log", "logarithmic gap spacing (default)");
  app->add_flag("--linear", o.linear, "linear gap spacing")->excludes(log);
  app->add_option("--prescription", o.prescription, "pointwise | ideal-te0 | both")->capture_default_str();
  app->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
  app->add_option("--rel-tol", o.rel_tol, "Matsubara truncation tolerance");
  app->add_option("--max-terms", o.max_terms, "Matsubara term cap");
}

}  // namespace

double parse_frequency(std::string_view text) {
  const std::string s(text);
  const char* begin = s.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) throw UsageError("expected a number with unit eV or rad/s, got '" + s + "'");
  std::string unit(end);
  unit.erase(0, unit.find_first_not_of(" \t"));
  unit.erase(unit.find_last_not_of(" \t") + 1);
  if (!std::isfinite(value) || value < 0.0) throw UsageError("frequency must be finite and >= 0: '" + s + "'");
  if (unit == "eV") return casimir_ev_to_rad_per_s(value);
  if (unit == "rad/s") return value;
  throw UsageError("unknown frequency unit in '" + s + "' (use eV or rad/s)");
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", value);
  return buf;
}

std::vector<double> gap_grid(double d_min, double d_max, int points, bool log_spacing) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / (points - 1);
    grid[k] = log_spacing ? d_min * std::pow(d_max / d_min, t) : d_min + t * (d_max - d_min);
  }
  grid.front() = d_min;
  grid.back() = d_max;
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite-temperature Casimir force between metal plates (Lifshitz theory)", "casimir-cli"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "pressure and free energy over a gap range");
  add_sweep_flags(sweep, o);
  auto* compare = app.add_subcommand("compare", "pointwise / ideal-TE0 pressure ratio over a gap range");
  add_sweep_flags(compare, o);
  auto* pfa = app.add_subcommand("pfa", "sphere-plate force in the proximity force approximation");
  add_sweep_flags(pfa, o);
  pfa->add_option("--radius", o.radius, "sphere radius, m")->required();
  auto* probe = app.add_subcommand("limit-probe", "trace the zero-frequency limit along a path");
  add_material_flags(probe, o);
  probe->add_option("--path", o.path, "fixed-q | fixed-p")->capture_default_str();
  probe->add_option("--q", o.q, "transverse wave number for fixed-q, rad/m")->capture_default_str();
  probe->add_option("--p", o.p, "Lifshitz variable for fixed-p")->capture_default_str();
  probe->add_option("--xi-start", o.xi_start, "first frequency, rad/s")->capture_default_str();
  probe->add_option("--decades", o.decades, "decades to descend")->capture_default_str();
  probe->add_option("--per-decade", o.per_decade, "points per decade")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (compare->parsed()) return cmd_compare(o, out, err);
    if (pfa->parsed()) return cmd_pfa(o, out, err);
    if (probe->parsed()) return cmd_limit_probe(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_computation;
  }
  return exit_usage;
}

}  // namespace casimir::cli
