#include "qscatter/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "qscatter/closed_form.hpp"
#include "qscatter/observables.hpp"
#include "qscatter/optimizer.hpp"
#include "qscatter/oracle.hpp"
#include "qscatter/sweep.hpp"
#include "qscatter/verify.hpp"

namespace qscatter::cli {
namespace {

using json = nlohmann::ordered_json;

/// Bad flag combinations detected after parsing; reported as usage errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kPhysicalNames = {"gA", "gB", "k"};
const std::vector<std::string> kDimensionlessNames = {"omegaA", "omegaB", "phase", "sin2kd"};

bool is_parameter(const std::string& n) {
  return std::find(kPhysicalNames.begin(), kPhysicalNames.end(), n) != kPhysicalNames.end() ||
         std::find(kDimensionlessNames.begin(), kDimensionlessNames.end(), n) != kDimensionlessNames.end();
}

// Fixed parameter values plus the names supplied by scan axes; resolves a
// full DimensionlessPoint for any combination of axis values.
class ParameterResolver {
 public:
  ParameterResolver(std::map<std::string, double> fixed, const std::vector<Axis>& axes, ModelKind model)
      : fixed_(std::move(fixed)), model_(model) {
    for (const Axis& a : axes) {
      if (!is_parameter(a.name)) throw UsageError("unknown axis parameter '" + a.name + "'");
      if (fixed_.count(a.name)) throw UsageError("'" + a.name + "' given both as an axis and as a fixed value");
      for (const std::string& other : axis_names_) {
        if (other == a.name) throw UsageError("axis '" + a.name + "' given twice");
      }
      axis_names_.push_back(a.name);
    }
    std::vector<std::string> all = axis_names_;
    for (const auto& [k, v] : fixed_) all.push_back(k);
    auto has = [&](const std::string& n) { return std::find(all.begin(), all.end(), n) != all.end(); };
    const bool any_phys = has("gA") || has("gB") || has("k");
    const bool any_dim = has("omegaA") || has("omegaB") || has("phase") || has("sin2kd");
    if (any_phys && any_dim) {
      throw UsageError("physical (--gA/--gB/--k) and dimensionless (--omegaA/--omegaB/--phase/--sin2kd) "
                       "parameters are mutually exclusive");
    }
    if (any_phys) {
      physical_ = true;
      for (const auto& n : kPhysicalNames) {
        if (!has(n)) throw UsageError("missing parameter --" + n);
      }
    } else {
      if (!has("omegaA") || !has("omegaB")) throw UsageError("missing parameters: need --omegaA and --omegaB");
      if (has("phase") == has("sin2kd")) throw UsageError("give exactly one of --phase or --sin2kd");
    }
  }

  bool physical() const { return physical_; }

  DimensionlessPoint resolve(const std::vector<double>& axis_values) const {
    std::map<std::string, double> v = fixed_;
    for (std::size_t i = 0; i < axis_names_.size(); ++i) v[axis_names_[i]] = axis_values[i];
    if (physical_) return to_dimensionless({v.at("gA"), v.at("gB"), v.at("k"), 1.0}, model_);
    DimensionlessPoint p{v.at("omegaA"), v.at("omegaB"), 0.0, model_};
    if (v.count("phase")) {
      p.phase = v.at("phase");
    } else {
      const double s = v.at("sin2kd");
      if (!(s >= 0.0 && s <= 1.0)) throw DomainError("sin2kd", "sin2kd must lie in [0, 1]");
      p.phase = std::asin(std::sqrt(s));
    }
    return p;
  }

  const std::map<std::string, double>& fixed() const { return fixed_; }

 private:
  std::map<std::string, double> fixed_;
  std::vector<std::string> axis_names_;
  ModelKind model_;
  bool physical_ = false;
};

struct GlobalOptions {
  std::string model = "xy";
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 42;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::map<std::string, double> params;
  std::vector<std::string> axes;
};

std::string units_description(bool physical) {
  return physical ? "g[hbar^2 pi/(m d)] k[pi/d] hbar=m=1" : "dimensionless omega=m g/(hbar^2 k) phase=kd";
}

std::string join(const std::vector<std::string>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

void add_common_metadata(SweepGrid& g, const std::string& command, ModelKind model, const ParameterResolver& res) {
  g.metadata.emplace_back("tool", "qscatter");
  g.metadata.emplace_back("version", kToolVersion);
  g.metadata.emplace_back("command", command);
  g.metadata.emplace_back("model", std::string(to_string(model)));
  g.metadata.emplace_back("units", units_description(res.physical()));
  for (const auto& [k, v] : res.fixed()) g.metadata.emplace_back("fixed." + k, format_double(v));
}

void emit(const GlobalOptions& opt, const SweepGrid& grid, std::ostream& out) {
  std::ostringstream buf;
  if (opt.format == "json") {
    write_json(buf, grid);
  } else {
    write_csv(buf, grid);
  }
  if (opt.out.empty()) {
    out << buf.str();
    return;
  }
  std::ofstream f(opt.out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open output file '" + opt.out + "'");
  f << buf.str();
  f.close();
  if (!f) throw std::runtime_error("failed writing output file '" + opt.out + "'");
}

std::vector<Axis> parse_axes(const GlobalOptions& opt, std::size_t min_axes, std::size_t max_axes) {
  std::vector<Axis> axes;
  for (const std::string& s : opt.axes) axes.push_back(parse_axis(s));
  if (axes.size() < min_axes || axes.size() > max_axes) {
    throw UsageError("expected between " + std::to_string(min_axes) + " and " + std::to_string(max_axes) +
                     " --axis specifications");
  }
  return axes;
}

std::vector<double> axis_values(const std::vector<Axis>& axes, const std::vector<int>& idx) {
  std::vector<double> v(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i) v[i] = axes[i].value(idx[i]);
  return v;
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kObservableColumns = {"omegaA", "omegaB", "phase", "C_t", "P_t",
                                                     "a_t",    "C_r",    "P_r",   "a_r"};

Cell observable_cell(const std::string& name, const CheckedPoint& pt, const ObservableSet& o) {
  if (name == "omegaA") return {pt.omega_a()};
  if (name == "omegaB") return {pt.omega_b()};
  if (name == "phase") return {pt.phase()};
  if (name == "C_t") return o.concurrence_t_defined ? Cell{o.concurrence_t} : Cell::undefined();
  if (name == "P_t") return {o.probability_t};
  if (name == "a_t") return o.concurrence_t_defined ? Cell{o.ratio_a_t} : Cell::undefined();
  if (name == "C_r") return o.concurrence_r_defined ? Cell{o.concurrence_r} : Cell::undefined();
  if (name == "P_r") return {o.probability_r};
  if (name == "a_r") return o.concurrence_r_defined ? Cell{o.ratio_a_r} : Cell::undefined();
  throw UsageError("unknown observable '" + name + "'");
}

int cmd_point(const GlobalOptions& opt, const std::string& side, std::ostream& out) {
  const ModelKind model = parse_model(opt.model);
  const ParameterResolver res(opt.params, {}, model);
  const CheckedPoint pt = validate(res.resolve({}));
  const AmplitudeSet amps = amplitudes(pt);
  const ObservableSet o = observables_from(amps);

  std::vector<const char*> obs_names;
  if (side != "r") obs_names.insert(obs_names.end(), {"C_t", "P_t", "a_t"});
  if (side != "t") obs_names.insert(obs_names.end(), {"C_r", "P_r", "a_r"});

  auto cell_json = [](const Cell& c) -> json {
    if (!c.defined) return nullptr;
    if (!std::isfinite(c.value)) return format_double(c.value);
    return c.value;
  };

  if (opt.format == "json") {
    json doc;
    doc["meta"] = {{"tool", "qscatter"},
                   {"version", kToolVersion},
                   {"command", "point"},
                   {"model", std::string(to_string(model))}};
    doc["point"] = {{"omegaA", pt.omega_a()}, {"omegaB", pt.omega_b()}, {"phase", pt.phase()}};
    json amp = json::object();
    const std::array<std::string, 6> names = {"T_noflip", "R_noflip", "T_flipB", "R_flipB", "T_flipA", "R_flipA"};
    const auto arr = amps.as_array();
    for (std::size_t i = 0; i < names.size(); ++i) amp[names[i]] = {arr[i].real(), arr[i].imag()};
    doc["amplitudes"] = amp;
    json obs = json::object();
    for (const char* n : obs_names) obs[n] = cell_json(observable_cell(n, pt, o));
    doc["observables"] = obs;
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  auto line = [&](const std::string& k, const Cell& c) {
    out << k << ' ' << (c.defined ? format_double(c.value) : std::string("undefined")) << '\n';
  };
  out << "model " << to_string(model) << '\n';
  line("omegaA", {pt.omega_a()});
  line("omegaB", {pt.omega_b()});
  line("phase", {pt.phase()});
  const std::array<std::string, 6> names = {"T_noflip", "R_noflip", "T_flipB", "R_flipB", "T_flipA", "R_flipA"};
  const auto arr = amps.as_array();
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << names[i] << ' ' << format_double(arr[i].real()) << ' ' << format_double(arr[i].imag()) << '\n';
  }
  for (const char* n : obs_names) line(n, observable_cell(n, pt, o));
  return kExitOk;
}

int cmd_scan(const GlobalOptions& opt, const std::vector<std::string>& observables, std::ostream& out) {
  const ModelKind model = parse_model(opt.model);
  const std::vector<Axis> axes = parse_axes(opt, 1, 2);
  for (const Axis& a : axes) {
    if (a.count < 2) throw UsageError("scan axes need at least 2 samples");
  }
  const ParameterResolver res(opt.params, axes, model);
  const std::vector<std::string> cols = observables.empty() ? kObservableColumns : observables;
  for (const auto& c : cols) {
    if (std::find(kObservableColumns.begin(), kObservableColumns.end(), c) == kObservableColumns.end()) {
      throw UsageError("unknown observable '" + c + "'");
    }
  }

  SweepGrid g;
  g.axes = axes;
  for (const Axis& a : axes) g.columns.push_back(a.name);
  g.columns.insert(g.columns.end(), cols.begin(), cols.end());
  add_common_metadata(g, "scan", model, res);
  g.metadata.emplace_back("columns", join(g.columns, '|'));

  fill_grid(
      g,
      [&](const std::vector<int>& idx) {
        const std::vector<double> av = axis_values(axes, idx);
        const CheckedPoint pt = validate(res.resolve(av));
        const ObservableSet o = observables_at(pt);
        std::vector<Cell> row;
        for (double v : av) row.push_back({v});
        for (const auto& c : cols) row.push_back(observable_cell(c, pt, o));
        return row;
      },
      opt.threads);
  emit(opt, g, out);
  return kExitOk;
}

int cmd_truncate(const GlobalOptions& opt, const std::vector<int>& orders, std::ostream& out) {
  const ModelKind model = parse_model(opt.model);
  if (model != ModelKind::SpinExchange) throw UsageError("truncate supports only --model xy");
  if (orders.empty()) throw UsageError("give at least one bounce order with --n");
  for (int n : orders) {
    if (n < 0) throw UsageError("bounce orders must be non-negative");
  }
  const std::vector<Axis> axes = parse_axes(opt, 1, 1);
  if (axes[0].count < 2) throw UsageError("scan axes need at least 2 samples");
  const ParameterResolver res(opt.params, axes, model);

  SweepGrid g;
  g.axes = axes;
  g.columns = {axes[0].name, "omegaA", "omegaB", "phase"};
  for (int n : orders) {
    g.columns.push_back("C_n" + std::to_string(n));
    g.columns.push_back("P_n" + std::to_string(n));
  }
  g.columns.push_back("C_exact");
  g.columns.push_back("P_exact");
  add_common_metadata(g, "truncate", model, res);
  g.metadata.emplace_back("columns", join(g.columns, '|'));

  auto conc_cell = [](const ConcurrenceResult& c) { return c.defined ? Cell{c.concurrence} : Cell::undefined(); };
  fill_grid(
      g,
      [&](const std::vector<int>& idx) {
        const std::vector<double> av = axis_values(axes, idx);
        const CheckedPoint pt = validate(res.resolve(av));
        std::vector<Cell> row = {{av[0]}, {pt.omega_a()}, {pt.omega_b()}, {pt.phase()}};
        for (int n : orders) {
          const PostSelectedState s = post_selected_state(truncated_amplitudes(pt, n).amplitudes, Side::Transmitted);
          row.push_back(conc_cell(concurrence_and_ratio(s)));
          row.push_back({probability(s)});
        }
        const PostSelectedState s = post_selected_state(amplitudes(pt), Side::Transmitted);
        row.push_back(conc_cell(concurrence_and_ratio(s)));
        row.push_back({probability(s)});
        return row;
      },
      opt.threads);
  emit(opt, g, out);
  return kExitOk;
}

int cmd_optimize(const GlobalOptions& opt, const std::string& target, std::ostream& out) {
  const auto old_prec = out.precision(12);
  auto restore = [&] { out.precision(old_prec); };

  if (target == "popt") {
    const GlobalOptimum g = find_global_p_opt();
    const double wb_cf = p_opt_omega_b_closed_form();
    const double p_cf = resonance_curve_probability(wb_cf);
    if (opt.format == "json") {
      json doc = {{"omegaA", g.omega_a},        {"omegaB", g.omega_b},
                  {"sin2kd", 1.0},              {"concurrence", 1.0},
                  {"probability", g.probability}, {"closed_form_omegaB", wb_cf},
                  {"delta_omegaB", g.omega_b - wb_cf}, {"closed_form_probability", p_cf},
                  {"delta_probability", g.probability - p_cf}};
      out << doc.dump(2) << '\n';
    } else {
      out << "omegaA " << g.omega_a << '\n'
          << "omegaB " << g.omega_b << '\n'
          << "sin2kd " << 1.0 << '\n'
          << "concurrence " << 1.0 << '\n'
          << "probability " << g.probability << '\n'
          << "closed_form_omegaB " << wb_cf << '\n'
          << "delta_omegaB " << g.omega_b - wb_cf << '\n'
          << "closed_form_probability " << p_cf << '\n'
          << "delta_probability " << g.probability - p_cf << '\n';
    }
    restore();
    return kExitOk;
  }

  if (target == "report") {
    if (!opt.params.count("omegaA") || !opt.params.count("omegaB") || opt.params.size() != 2) {
      throw UsageError("optimize report needs exactly --omegaA and --omegaB");
    }
    const OptimalityReport r = optimal_concurrence(opt.params.at("omegaA"), opt.params.at("omegaB"));
    if (opt.format == "json") {
      json doc = {{"omegaA", r.omega_a},
                  {"omegaB", r.omega_b},
                  {"regime", std::string(to_string(r.regime))},
                  {"sin2kd", r.phase_choice},
                  {"concurrence", r.concurrence_defined ? json(r.concurrence) : json(nullptr)},
                  {"probability", r.probability}};
      out << doc.dump(2) << '\n';
    } else {
      out << "omegaA " << r.omega_a << '\n'
          << "omegaB " << r.omega_b << '\n'
          << "regime " << to_string(r.regime) << '\n'
          << "sin2kd " << r.phase_choice << '\n'
          << "concurrence " << (r.concurrence_defined ? format_double(r.concurrence) : "undefined") << '\n'
          << "probability " << r.probability << '\n';
    }
    restore();
    return kExitOk;
  }

  if (target == "map") {
    const std::vector<Axis> axes = parse_axes(opt, 2, 2);
    if (axes[0].name != "omegaA" || axes[1].name != "omegaB") {
      throw UsageError("optimize map needs --axis omegaA:... then --axis omegaB:...");
    }
    if (!opt.params.empty()) throw UsageError("optimize map takes no fixed parameters");
    SweepGrid g;
    g.axes = axes;
    g.columns = {"omegaA", "omegaB", "regime", "sin2kd", "C_opt", "P_opt"};
    g.metadata = {{"tool", "qscatter"},
                  {"version", kToolVersion},
                  {"command", "optimize-map"},
                  {"model", "xy"},
                  {"units", units_description(false)},
                  {"regime_codes", "0=LeftRegion|1=UnitConcurrenceRegion|2=RightRegion"},
                  {"columns", join(g.columns, '|')}};
    fill_grid(
        g,
        [&](const std::vector<int>& idx) {
          const double wa = axes[0].value(idx[0]);
          const double wb = axes[1].value(idx[1]);
          const OptimalityReport r = optimal_concurrence(wa, wb);
          return std::vector<Cell>{{wa},
                                   {wb},
                                   {static_cast<double>(static_cast<int>(r.regime))},
                                   {r.phase_choice},
                                   r.concurrence_defined ? Cell{r.concurrence} : Cell::undefined(),
                                   {r.probability}};
        },
        opt.threads);
    restore();
    emit(opt, g, out);
    return kExitOk;
  }
  restore();
  throw UsageError("unknown optimize target '" + target + "' (popt, report, map)");
}

int cmd_verify(const GlobalOptions& opt, bool model_given, std::size_t samples, double tolerance, std::ostream& out) {
  VerifyOptions v;
  v.samples = samples;
  v.seed = opt.seed;
  v.tolerance = tolerance;
  if (model_given) v.models = {parse_model(opt.model)};
  const VerifyReport rep = run_verification(v);
  out << "samples " << samples << " seed " << opt.seed << '\n';
  print_report(out, rep, tolerance);
  return rep.passed() ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement generation by resonant scattering off two delta-coupled qubits", "qscatter"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opt;
  auto* model_opt = app.add_option("--model", opt.model, "Interaction model: xy | heis")
                        ->check(CLI::IsMember({"xy", "heis"}));
  app.add_option("--format", opt.format, "Output format: csv | json")->check(CLI::IsMember({"csv", "json"}));
  bool json_flag = false;
  app.add_flag("--json", json_flag, "Shorthand for --format json");
  app.add_option("--out", opt.out, "Output file (default: stdout)");
  app.add_option("--seed", opt.seed, "Random seed");
  app.add_option("--threads", opt.threads, "Worker threads for grid evaluation")->check(CLI::PositiveNumber);

  std::map<std::string, double> raw;
  std::map<std::string, CLI::Option*> param_opts;
  const std::map<std::string, std::string> param_help = {
      {"gA", "Coupling of A [hbar^2 pi/(m d)]"},
      {"gB", "Coupling of B [hbar^2 pi/(m d)]"},
      {"k", "Incident momentum [pi/d]"},
      {"omegaA", "Dimensionless coupling of A"},
      {"omegaB", "Dimensionless coupling of B"},
      {"phase", "kd in radians"},
      {"sin2kd", "sin^2(kd) in [0, 1]"},
  };
  for (const auto& [name, help] : param_help) {
    param_opts[name] = app.add_option("--" + name, raw[name], help);
  }
  app.add_option("--axis", opt.axes, "Scan axis name:start:stop:count (repeatable)");

  auto* point = app.add_subcommand("point", "Amplitudes and observables at one parameter point");
  std::string side = "both";
  point->add_option("--side", side, "Detection side: t | r | both")->check(CLI::IsMember({"t", "r", "both"}));

  auto* scan = app.add_subcommand("scan", "1D/2D parameter sweep to CSV/JSON");
  std::vector<std::string> observables;
  scan->add_option("--observables", observables, "Columns to emit")->delimiter(',');

  auto* truncate = app.add_subcommand("truncate", "Bounce-series truncation study (xy model)");
  std::vector<int> orders;
  truncate->add_option("--n", orders, "Bounce orders, e.g. 0,1,3")->delimiter(',');

  auto* optimize = app.add_subcommand("optimize", "Optimal concurrence / probability");
  std::string target;
  optimize->add_option("target", target, "popt | report | map")->required();

  auto* verify = app.add_subcommand("verify", "Cross-check closed forms against the matching-system solve");
  std::size_t samples = 1000;
  double tolerance = 1e-10;
  verify->add_option("--samples", samples, "Random points per model")->check(CLI::PositiveNumber);
  verify->add_option("--tolerance", tolerance, "Maximum allowed deviation");

  std::vector<std::string> argv_store = {"qscatter"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  for (const auto& [name, o] : param_opts) {
    if (o->count() > 0) opt.params[name] = raw[name];
  }
  if (json_flag) opt.format = "json";

  try {
    if (*point) return cmd_point(opt, side, out);
    if (*scan) return cmd_scan(opt, observables, out);
    if (*truncate) return cmd_truncate(opt, orders, out);
    if (*optimize) return cmd_optimize(opt, target, out);
    if (*verify) return cmd_verify(opt, model_opt->count() > 0, samples, tolerance, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedModel& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qscatter::cli
