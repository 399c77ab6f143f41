#include "tailpath_tools/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string_view>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "tailpath/acceptance.hpp"
#include "tailpath/copula.hpp"
#include "tailpath/errors.hpp"
#include "tailpath/model_spec.hpp"
#include "tailpath/path.hpp"
#include "tailpath/schedule.hpp"
#include "tailpath/singular.hpp"
#include "tailpath/spectral.hpp"
#include "tailpath/tail.hpp"
#include "tailpath_tools/writers.hpp"

namespace tailpath::tools {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kFigureModels[][2] = {
    {"smo", "smo:alpha=0.35,beta=0.7"},
    {"sag", "sag:alpha=0.35,beta=0.7,theta=2"},
};

// Raised for configuration problems detected after argument parsing.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned resolve_threads(unsigned requested) {
  unsigned threads = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TAILPATH_THREADS"); env && *env) {
    unsigned cap = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec != std::errc() || ptr != text.data() + text.size() || cap == 0) {
      throw ConfigError("TAILPATH_THREADS must be a positive integer, got '" + std::string(text) + "'");
    }
    threads = std::min(threads, cap);
  }
  return threads;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

const char* extension(Format f) {
  switch (f) {
    case Format::Json: return ".json";
    default: return ".csv";
  }
}

class Session {
 public:
  Session(const RunConfig& config, std::ostream& out, std::ostream& err)
      : config_(config), out_(out), err_(err) {
    if (config.tolerances.mtcm) mtcm_.tol = *config.tolerances.mtcm;
    if (config.tolerances.degeneracy) mtcm_.degeneracy_threshold = *config.tolerances.degeneracy;
    if (config.tolerances.slice) trace_.slice.tol = *config.tolerances.slice;
    if (config.tolerances.grid) {
      mtcm_.n_grid = *config.tolerances.grid;
      trace_.slice.n_grid = *config.tolerances.grid;
    }
    trace_.threads = resolve_threads(config.threads);
  }

  std::string stage = "setup";

  // Writes `table` as <dir>/<name>.csv or .json; with --format svg also a
  // chart next to the CSV.
  void emit(const fs::path& dir, const std::string& name, const Table& table,
            const ChartSpec* chart = nullptr, const std::vector<Series>* series = nullptr) const {
    const fs::path path = dir / (name + extension(config_.format));
    write_atomic(path, config_.format == Format::Json ? table.to_json() : table.to_csv());
    if (config_.format == Format::Svg && chart && series) {
      write_atomic(dir / (name + ".svg"), svg_chart(*chart, *series));
    }
  }

  void write_json(const fs::path& dir, const std::string& name, const json& j) const {
    write_atomic(dir / (name + ".json"), j.dump(2) + "\n");
  }

  // --- commands ------------------------------------------------------------

  json profile(const CopulaModel& model, const fs::path& dir) {
    stage = "mtcm";
    const TailCopulaFn tail = tail_copula_for(model);
    const MtcmResult r = mtcm(tail, mtcm_);
    stage = "profile";
    Table table({"b", "profile"});
    for (double b : log_grid(1e-2, 1e2, 401)) table.add_row({b, tail.profile(b)});
    Table marker({"b_star", "lambda_star", "unique"});
    marker.add_row({r.b_star, r.lambda_star, r.unique ? 1.0 : 0.0});

    ChartSpec chart{"profile tail copula: " + model.describe(), "b", "Lambda(b, 1/b)", true, {}, {}};
    std::vector<Series> series{{"profile", table.column("b"), table.column("profile")},
                               {"b*", {r.b_star}, {r.lambda_star}, true, "#d62728"}};
    emit(dir, "profile", table, &chart, &series);
    emit(dir, "profile_bstar", marker);
    return mtcm_json(tail, r);
  }

  json mtcm_command(const CopulaModel& model, const fs::path& dir) {
    stage = "mtcm";
    const TailCopulaFn tail = tail_copula_for(model);
    const json j = mtcm_json(tail, mtcm(tail, mtcm_));
    write_json(dir, "mtcm", j);
    return j;
  }

  json path(const CopulaModel& model, const Schedule& schedule, const fs::path& dir) {
    stage = "trace_path";
    const PathResult r = trace_path(model, schedule, trace_);
    for (const SliceFailure& f : r.failures) {
      err_ << "tailpath path: slice at u = " << format_double(f.u) << " failed: " << f.message << '\n';
    }
    Table table({"u", "phi_star", "v_star", "pi_value", "ratio_b", "pi_over_u", "argmax_at_boundary"});
    for (const PathPoint& p : r.points) {
      table.add_row({p.u, p.phi_star, p.v_star(), p.pi_value, p.ratio_b, p.pi_over_u,
                     p.argmax_at_boundary ? 1.0 : 0.0});
    }
    ChartSpec chart{"path of maximal dependence: " + model.describe(), "x", "y", false, {0, 1}, {0, 1}};
    std::vector<Series> series{{"(phi*(u), u^2/phi*(u))", table.column("phi_star"), table.column("v_star")}};
    emit(dir, "path", table, &chart, &series);

    json j;
    j["model"] = model.describe();
    j["lambda_phi_star"] = r.lambda_phi_star.value;
    j["lambda_phi_star_error"] = finite_or_null(r.lambda_phi_star.error);
    j["b_limit"] = r.b_limit.value;
    j["b_limit_error"] = finite_or_null(r.b_limit.error);
    if (!r.points.empty()) {
      j["final_u"] = r.points.back().u;
      j["final_ratio_b"] = r.points.back().ratio_b;
      j["final_pi_over_u"] = r.points.back().pi_over_u;
    }
    j["boundary_points"] = std::count_if(r.points.begin(), r.points.end(),
                                         [](const PathPoint& p) { return p.argmax_at_boundary; });
    j["failures"] = r.failures.size();
    write_json(dir, "path_summary", j);
    return j;
  }

  json spectral(const CopulaModel& model, const fs::path& dir) {
    const family::StudentT t = student_t_params(model);
    stage = "spectral";
    const SpectralModel sm(t.nu, t.rho);

    Table h({"w", "h"});
    for (int k = 1; k < 1000; ++k) {
      const double w = k / 1000.0;
      h.add_row({w, h_density(sm, w)});
    }
    Table m({"a", "m"});
    for (double a : linear_grid(-6.0, 6.0, 481)) m.add_row({a, m_transform(sm, a)});
    Table l({"s", "L"});
    for (double s : linear_grid(-5.0, 5.0, 201)) l.add_row({s, L_of_s(sm, s)});

    const std::string tag = model.describe();
    ChartSpec ch{"spectral density h: " + tag, "w", "h(w)", false, {}, {}};
    std::vector<Series> sh{{"", h.column("w"), h.column("h")}};
    ChartSpec cm{"m(a): " + tag, "a", "m(a)", false, {}, {}};
    std::vector<Series> sm_series{{"", m.column("a"), m.column("m")}};
    ChartSpec cl{"L(s): " + tag, "s", "L(s)", false, {}, {}};
    std::vector<Series> sl{{"", l.column("s"), l.column("L")}};
    emit(dir, "spectral_h", h, &ch, &sh);
    emit(dir, "spectral_m", m, &cm, &sm_series);
    emit(dir, "spectral_L", l, &cl, &sl);

    json j;
    j["model"] = tag;
    j["eta"] = sm.eta();
    j["endpoint_mass"] = endpoint_mass(sm);
    j["interior_mass"] = interior_mass(sm);
    j["L_at_0"] = L_of_s(sm, 0.0);
    return j;
  }

  json singular(const CopulaModel& model, const Schedule& schedule, const fs::path& dir) {
    const family::MarshallOlkin mo = smo_params(model);
    stage = "singular_root";
    const auto curve = singular_curve(mo.alpha, mo.beta, schedule);
    Table table({"u", "x_star", "v_star", "ratio", "residual"});
    for (const SingularCurvePoint& p : curve) table.add_row({p.u, p.x_star, p.v_star(), p.ratio, p.residual});
    ChartSpec chart{"singular curve: " + model.describe(), "x", "y", false, {0, 1}, {0, 1}};
    std::vector<Series> series{{"(x*, u^2/x*)", table.column("x_star"), table.column("v_star"), false, "#2ca02c"}};
    emit(dir, "singular", table, &chart, &series);

    stage = "trace_path";
    const PathResult path = trace_path(model, schedule, trace_);
    if (!path.failures.empty()) {
      throw ConvergenceError("trace_path: " + std::to_string(path.failures.size()) + " slices failed");
    }
    stage = "asymptotic_report";
    const AsymptoticReport report = asymptotic_report(mo.alpha, mo.beta, schedule, path);
    Table rows({"u", "phi_ratio", "x_ratio", "target", "gap"});
    for (const AsymptoticRow& r : report.rows) rows.add_row({r.u, r.phi_ratio, r.x_ratio, r.target, r.gap});
    emit(dir, "singular_report", rows);

    json j;
    j["model"] = model.describe();
    j["target"] = std::sqrt(mo.beta / mo.alpha);
    j["converged"] = report.converged;
    if (!report.rows.empty()) {
      j["final_u"] = report.rows.back().u;
      j["final_phi_ratio"] = report.rows.back().phi_ratio;
      j["final_x_ratio"] = report.rows.back().x_ratio;
    }
    return j;
  }

  json sample_command(const CopulaModel& model, const fs::path& dir) {
    stage = "sample";
    const auto pairs = sample(model, config_.n, config_.seed);
    Table table({"u", "v"});
    for (const auto& [u, v] : pairs) table.add_row({u, v});
    ChartSpec chart{"sample: " + model.describe(), "u", "v", false, {0, 1}, {0, 1}};
    std::vector<Series> series{{"", table.column("u"), table.column("v"), true}};
    emit(dir, "sample", table, &chart, &series);
    json j;
    j["model"] = model.describe();
    j["n"] = pairs.size();
    j["seed"] = config_.seed;
    return j;
  }

  json figure(const fs::path& root) {
    json manifest = json::object();
    const Schedule dense = Schedule::log_spaced(1.0, 1e-4, 61);
    for (const auto& [tag, spec] : kFigureModels) {
      const CopulaModel model = parse_model(spec);
      const fs::path dir = root / tag;
      json entry;
      entry["model"] = spec;
      entry["mtcm"] = profile(model, dir);
      write_json(dir, "mtcm", entry["mtcm"]);
      entry["sample"] = sample_command(model, dir);
      entry["path"] = path(model, dense, dir);
      if (std::string_view(tag) == "smo") entry["singular"] = singular(model, dense, dir);
      manifest[tag] = entry;
    }
    write_json(root, "figure", manifest);
    return manifest;
  }

  int verify() {
    std::vector<int> ids;
    if (config_.suites.empty()) {
      for (std::size_t i = 0; i < acceptance_suites().size(); ++i) ids.push_back(static_cast<int>(i) + 1);
    } else {
      for (const std::string& s : config_.suites) {
        const auto id = criterion_for_suite(s);
        if (!id) throw ConfigError("unknown suite '" + s + "'");
        ids.push_back(*id);
      }
    }
    bool all = true;
    for (int id : ids) {
      stage = "verify " + acceptance_suites()[id - 1];
      const CriterionResult r = run_criterion(id);
      out_ << format_result(r) << '\n' << std::flush;
      all = all && r.passed;
    }
    return all ? kExitOk : kExitVerifyFailed;
  }

 private:
  static json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

  static json mtcm_json(const TailCopulaFn& tail, const MtcmResult& r) {
    json j;
    j["b_star"] = r.b_star;
    j["lambda_star"] = r.lambda_star;
    j["unique"] = r.unique;
    j["n_evals"] = r.n_evals;
    j["bracket"] = r.bracket;
    j["boundary_anomaly"] = r.boundary_anomaly;
    j["tail"] = tail.describe();
    return j;
  }

  static family::StudentT student_t_params(const CopulaModel& model) {
    // The t-copula is radially symmetric, so its survival copula shares the measure.
    const CopulaModel& m = model.is_survival() ? model.inner() : model;
    if (!m.is<family::StudentT>()) throw ConfigError("spectral: model must be a t copula (t:nu=..,rho=..)");
    return m.as<family::StudentT>();
  }

  static family::MarshallOlkin smo_params(const CopulaModel& model) {
    if (!model.is_survival() || !model.inner().is<family::MarshallOlkin>()) {
      throw ConfigError("singular: model must be survival Marshall-Olkin (smo:alpha=..,beta=..)");
    }
    return model.inner().as<family::MarshallOlkin>();
  }

  const RunConfig& config_;
  std::ostream& out_;
  std::ostream& err_;
  MtcmOptions mtcm_;
  TraceOptions trace_;
};

const char* command_name(Command c) {
  switch (c) {
    case Command::Profile: return "profile";
    case Command::Mtcm: return "mtcm";
    case Command::Path: return "path";
    case Command::Spectral: return "spectral";
    case Command::Singular: return "singular";
    case Command::Sample: return "sample";
    case Command::Figure: return "figure";
    case Command::Verify: return "verify";
  }
  return "?";
}

bool needs_model(Command c) {
  return c != Command::Figure && c != Command::Verify;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string name = command_name(config.command);
  std::optional<Session> session;
  std::optional<CopulaModel> model;
  std::optional<Schedule> schedule;
  try {
    session.emplace(config, out, err);
    if (needs_model(config.command)) {
      if (config.model_spec.empty()) throw ConfigError("--model is required");
      model = parse_model(config.model_spec);
    }
    if (config.command == Command::Path || config.command == Command::Singular) {
      schedule = Schedule::parse(config.schedule);
    }
    if (config.n < 1) throw ConfigError("-n must be at least 1");
  } catch (const std::exception& e) {
    err << "tailpath " << name << ": " << e.what() << '\n';
    return kExitParseError;
  }

  Session& s = *session;
  const fs::path& dir = config.output_dir;
  try {
    json summary;
    switch (config.command) {
      case Command::Profile: summary = s.profile(*model, dir); break;
      case Command::Mtcm: summary = s.mtcm_command(*model, dir); break;
      case Command::Path: summary = s.path(*model, *schedule, dir); break;
      case Command::Spectral: summary = s.spectral(*model, dir); break;
      case Command::Singular: summary = s.singular(*model, *schedule, dir); break;
      case Command::Sample: summary = s.sample_command(*model, dir); break;
      case Command::Figure: summary = s.figure(dir); break;
      case Command::Verify: return s.verify();
    }
    out << summary.dump(2) << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "tailpath " << name << ": " << e.what() << '\n';
    return kExitParseError;
  } catch (const std::exception& e) {
    err << "tailpath " << name << ": " << s.stage << " failed: " << e.what() << '\n';
    return kExitNumericFailure;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tail dependence along paths of maximal dependence", "tailpath"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "csv";

  struct Sub {
    Command command;
    const char* help;
  };
  const Sub subs[] = {
      {Command::Profile, "profile tail copula b -> Lambda(b, 1/b) with its maximizer"},
      {Command::Mtcm, "maximal tail concordance measure as JSON"},
      {Command::Path, "path of maximal dependence along a u schedule"},
      {Command::Spectral, "t-EV spectral density, m(a) and L(s) curves"},
      {Command::Singular, "survival Marshall-Olkin singular curve vs the traced path"},
      {Command::Sample, "scatter sample"},
      {Command::Figure, "all panels for the survival MO and survival AG models"},
      {Command::Verify, "run acceptance suites"},
  };
  for (const Sub& sub : subs) {
    CLI::App* cmd = app.add_subcommand(command_name(sub.command), sub.help);
    cmd->callback([&config, c = sub.command] { config.command = c; });
    if (needs_model(sub.command)) {
      cmd->add_option("--model,-m", config.model_spec, "model, e.g. smo:alpha=0.35,beta=0.7")->required();
    }
    if (sub.command == Command::Verify) {
      cmd->add_option("--suite", config.suites, "suite name (repeatable); default all")->delimiter(',');
      continue;
    }
    cmd->add_option("--out,-o", config.output_dir, "output directory");
    cmd->add_option("--format", format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
    if (sub.command == Command::Path || sub.command == Command::Singular) {
      cmd->add_option("--schedule", config.schedule, "comma list of decreasing u, or 'default'");
    }
    if (sub.command == Command::Sample || sub.command == Command::Figure) {
      cmd->add_option("--seed", config.seed, "random seed");
      cmd->add_option("-n", config.n, "number of pairs");
    }
    cmd->add_option("--tol-mtcm", config.tolerances.mtcm, "MTCM tolerance on ln b")->check(CLI::PositiveNumber);
    cmd->add_option("--tol-slice", config.tolerances.slice, "slice tolerance on ln x")->check(CLI::PositiveNumber);
    cmd->add_option("--tol-degeneracy", config.tolerances.degeneracy, "degenerate-tail threshold")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--grid", config.tolerances.grid, "grid points for the searches")->check(CLI::Range(3, 1 << 20));
    cmd->add_option("--threads", config.threads, "worker threads (0: all cores)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParseError;
  }
  config.format = format == "json" ? Format::Json : format == "svg" ? Format::Svg : Format::Csv;
  return run(config, out, err);
}

}  // namespace tailpath::tools
