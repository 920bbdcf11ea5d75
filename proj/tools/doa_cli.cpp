#include "doa_cli.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/SVD>

#include "doa/errors.hpp"
#include "doa/graded_layout.hpp"
#include "doa/grid.hpp"
#include "doa/parallel.hpp"
#include "doa/oracle.hpp"
#include "doa/serialization.hpp"
#include "doa/system_parser.hpp"
#include "doa/validation.hpp"
#include "svg.hpp"

namespace doa::cli {
namespace {

namespace fs = std::filesystem;

struct InputError : Error {
  using Error::Error;
};

// Every flag is also a config-file key (dashes become underscores).
struct FlagSpec {
  const char* flag;
  const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"--system", "system file (.sys)"},
    {"--config", "JSON config file; explicit flags override it"},
    {"--degree", "order of approximation p (default 50 for example1, else 30)"},
    {"--steps", "number of growth steps (default 2)"},
    {"--points", "expansion points per step (default 3)"},
    {"--bounds", "grid or validation box: lo,hi or lo1,hi1,...,lon,hin"},
    {"--resolution", "grid points per axis: r or r1,...,rn (default 201)"},
    {"--slice", "fixed coordinate for n = 3, e.g. 3=0"},
    {"--out", "output directory (default .)"},
    {"--atlas", "atlas file (default <out>/atlas.json)"},
    {"--samples", "validation sample count N (default 500)"},
    {"--horizon", "oracle horizon T"},
    {"--dt", "oracle RK4 step"},
    {"--eps-conv", "oracle convergence radius"},
    {"--r-max", "oracle divergence radius"},
    {"--tol", "boundary sampling tolerance"},
    {"--w-max", "fixed |W| cut-off for expansion points"},
    {"--w-max-factor", "|W| cut-off as a multiple of the median (default 1e3)"},
    {"--directions", "boundary directions per frontier chart (default 64q)"},
    {"--rule", "membership rule: top-block or tail-limsup"},
    {"--workers", "worker threads (default: hardware concurrency)"},
};

std::string key_of(std::string_view flag) {
  std::string k(flag.substr(2));
  for (auto& c : k) {
    if (c == '-') c = '_';
  }
  return k;
}

std::string fmt(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string fmt(Complex v) {
  if (v.imag() == 0.0) return fmt(v.real());
  return fmt(v.real()) + (v.imag() < 0 ? " - " : " + ") +
         fmt(std::abs(v.imag())) + "i";
}

std::string fmt(const RealVector& x) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += fmt(x(i));
  }
  return s + ")";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, sep);) parts.push_back(p);
  return parts;
}

template <class T>
T parse_number(const std::string& key, std::string text) {
  while (!text.empty() && text.front() == ' ') text.erase(text.begin());
  while (!text.empty() && text.back() == ' ') text.pop_back();
  T v{};
  const char* b = text.data();
  const char* e = b + text.size();
  if (!text.empty() && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || text.empty()) {
    throw InputError("--" + key + ": not a number: '" + text + "'");
  }
  return v;
}

// Resolved flag values: command line first, then config file, else unset.
class Settings {
 public:
  std::optional<std::string> get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }
  void set(const std::string& key, std::string value) {
    values_[key] = std::move(value);
  }
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  template <class T>
  std::optional<T> number(const std::string& key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    return parse_number<T>(key, *v);
  }
  template <class T>
  T positive(const std::string& key, T fallback) const {
    const T v = number<T>(key).value_or(fallback);
    if (!(v > 0)) throw InputError("--" + key + " must be positive");
    return v;
  }
  template <class T>
  T nonnegative(const std::string& key, T fallback) const {
    const T v = number<T>(key).value_or(fallback);
    if (v < 0) throw InputError("--" + key + " must not be negative");
    return v;
  }

 private:
  std::map<std::string, std::string> values_;
};

std::string json_as_flag(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += ',';
      s += json_as_flag(e);
    }
    return s;
  }
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return fmt(v.get<double>());
  throw InputError("config value must be a string, number or array");
}

void merge_config(Settings& s) {
  auto path = s.get("config");
  if (!path) return;
  Json j;
  try {
    j = read_json_file(*path);
  } catch (const Json::exception& e) {
    throw InputError("config " + *path + ": " + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    std::string key = k;
    for (auto& c : key) {
      if (c == '-') c = '_';
    }
    bool known = false;
    for (const auto& f : kFlags) known = known || key_of(f.flag) == key;
    if (!known || key == "config") {
      throw InputError("config: unknown key '" + k + "'");
    }
    if (!s.has(key)) s.set(key, json_as_flag(v));
  }
}

std::string system_id_of(const fs::path& p) { return p.stem().string(); }

struct LoadedSystem {
  std::string id;
  PolyField field;
};

LoadedSystem require_system(const Settings& s) {
  auto path = s.get("system");
  if (!path) throw InputError("--system is required");
  return {system_id_of(*path), load_system(*path)};
}

fs::path out_dir(const Settings& s) {
  fs::path dir = s.get("out").value_or(".");
  fs::create_directories(dir);
  return dir;
}

fs::path atlas_path(const Settings& s) {
  if (auto a = s.get("atlas")) return *a;
  return fs::path(s.get("out").value_or(".")) / "atlas.json";
}

int default_degree(const std::string& id) {
  return fixture_number(id) == 1 ? 50 : 30;
}

int workers_of(const Settings& s) {
  return s.positive<int>("workers", static_cast<int>(default_workers()));
}

SimParams sim_params(const Settings& s) {
  SimParams p;
  p.horizon = s.positive("horizon", p.horizon);
  p.dt = s.positive("dt", p.dt);
  p.eps_conv = s.positive("eps_conv", p.eps_conv);
  p.r_max = s.positive("r_max", p.r_max);
  return p;
}

std::optional<std::pair<RealVector, RealVector>> bounds_of(const Settings& s,
                                                           int n) {
  auto text = s.get("bounds");
  if (!text) return std::nullopt;
  const auto parts = split(*text, ',');
  std::vector<double> v;
  for (const auto& p : parts) v.push_back(parse_number<double>("bounds", p));
  RealVector lo(n), hi(n);
  if (v.size() == 2) {
    lo.setConstant(v[0]);
    hi.setConstant(v[1]);
  } else if (v.size() == static_cast<std::size_t>(2 * n)) {
    for (int a = 0; a < n; ++a) {
      lo(a) = v[static_cast<std::size_t>(2 * a)];
      hi(a) = v[static_cast<std::size_t>(2 * a + 1)];
    }
  } else {
    throw InputError("--bounds needs 2 or " + std::to_string(2 * n) +
                     " values");
  }
  for (int a = 0; a < n; ++a) {
    if (!(hi(a) > lo(a))) throw InputError("--bounds: need lo < hi");
  }
  return std::pair{lo, hi};
}

std::vector<int> resolution_of(const Settings& s, int n) {
  const auto parts = split(s.get("resolution").value_or("201"), ',');
  std::vector<int> r;
  for (const auto& p : parts) r.push_back(parse_number<int>("resolution", p));
  if (r.size() == 1) r.assign(static_cast<std::size_t>(n), r[0]);
  if (r.size() != static_cast<std::size_t>(n)) {
    throw InputError("--resolution needs 1 or " + std::to_string(n) +
                     " values");
  }
  for (int v : r) {
    if (v < 2) throw InputError("--resolution must be at least 2 per axis");
  }
  return r;
}

std::optional<SliceSpec> slice_of(const Settings& s, int n) {
  auto text = s.get("slice");
  if (!text) return std::nullopt;
  if (n != 3) throw InputError("--slice is only valid for 3-dimensional systems");
  const auto eq = text->find('=');
  if (eq == std::string::npos) throw InputError("--slice must look like 3=0");
  const int axis = parse_number<int>("slice", text->substr(0, eq));
  if (axis < 1 || axis > n) throw InputError("--slice axis must be 1..3");
  return SliceSpec{axis - 1, parse_number<double>("slice", text->substr(eq + 1))};
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string seconds(double s) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(4) << s << " s";
  return o.str();
}

int cmd_analyze(const Settings& s, std::ostream& out) {
  auto t0 = Clock::now();
  const auto sys = require_system(s);
  const double t_parse = seconds_since(t0);
  const int n = sys.field.dim();
  const int p = s.positive("degree", default_degree(sys.id));
  validate_capacity(n, p);
  const int workers = workers_of(s);

  t0 = Clock::now();
  const Spectrum spectrum = diagonalize(jacobian_at_origin(sys.field));
  const TransformedField tf = transform_field(sys.field, spectrum);
  const double t_spectral = seconds_since(t0);

  t0 = Clock::now();
  const Embryo embryo = compute_coefficients(tf, spectrum, p, workers);
  const double t_coeffs = seconds_since(t0);

  t0 = Clock::now();
  const double residual =
      pde_residual(embryo, tf) / embryo.series().max_abs();
  const double t_residual = seconds_since(t0);

  Eigen::JacobiSVD<ComplexMatrix> svd(spectrum.S);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);

  out << "system        " << sys.id << " (n = " << n << ")\n";
  out << "eigenvalues  ";
  for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
    out << (i ? ", " : " ") << fmt(spectrum.eigenvalues(i));
  }
  out << "\ndiagonalizable yes (cond(S) = " << fmt(cond) << ")\n";
  out << "degree        " << p << "\n";
  out << "coefficients  " << GradedLayout(n, p).size() << "\n";
  out << "residual      " << fmt(residual) << " (relative to max |B_j|)\n";
  out << "timing        parse " << seconds(t_parse) << ", spectral "
      << seconds(t_spectral) << ", coefficients " << seconds(t_coeffs)
      << ", residual " << seconds(t_residual) << "\n";

  const fs::path file = out_dir(s) / "embryo.json";
  write_json_file(file, embryo_to_json(embryo));
  out << "wrote         " << file.string() << "\n";
  return kExitOk;
}

int cmd_grow(const Settings& s, std::ostream& out) {
  const auto sys = require_system(s);
  GrowthConfig cfg;
  cfg.system_id = sys.id;
  cfg.degree = s.positive("degree", default_degree(sys.id));
  validate_capacity(sys.field.dim(), cfg.degree);
  cfg.steps = s.nonnegative("steps", 2);
  cfg.points = s.positive("points", 3);
  if (auto r = s.get("rule")) {
    try {
      cfg.rule = membership_rule_from_string(*r);
    } catch (const std::exception&) {
      throw InputError("--rule must be top-block or tail-limsup");
    }
  }
  cfg.selection.boundary.tol = s.positive("tol", cfg.selection.boundary.tol);
  cfg.selection.w_max_factor =
      s.positive("w_max_factor", cfg.selection.w_max_factor);
  if (s.has("w_max")) cfg.selection.w_max = s.positive("w_max", 1.0);
  const int m = s.positive("directions", 64 * cfg.points);
  cfg.selection.directions_per_point = std::max(1, m / cfg.points);
  cfg.workers = workers_of(s);

  GrowthTiming timing;
  const Atlas atlas = grow_atlas(sys.field, cfg, &timing);
  const fs::path file = out_dir(s) / "atlas.json";
  write_json_file(s.get("atlas") ? atlas_path(s) : file, atlas_to_json(atlas));

  out << "system " << sys.id << ", degree " << cfg.degree << ", "
      << atlas.charts().size() << " chart(s)\n";
  for (const auto& step : atlas.growth_log()) {
    out << "step " << step.step << ": W_max " << fmt(step.w_max) << ", sampled "
        << step.sampled << ", unbounded rays " << step.rays_unbounded
        << ", rejected (|W|/covered/separation) " << step.rejected_large << "/"
        << step.rejected_covered << "/" << step.rejected_separation << "\n";
    for (const auto& c : step.selected) {
      out << "  center " << fmt(c.x) << "  |W| = " << fmt(c.abs_w) << "\n";
    }
    if (step.stopped) out << "  stopped: " << step.stop_reason << "\n";
  }
  out << "\n" << std::left << std::setw(28) << "phase" << "wall time\n";
  out << std::setw(28) << "diagonalization" << seconds(timing.spectral) << "\n";
  out << std::setw(28) << "coefficients (generation 0)"
      << seconds(timing.coefficients) << "\n";
  for (std::size_t k = 0; k < timing.steps.size(); ++k) {
    out << std::setw(28) << ("timing for step " + std::to_string(k + 1))
        << seconds(timing.steps[k]) << "\n";
  }
  out << "wrote " << (s.get("atlas") ? atlas_path(s) : file).string() << "\n";
  return kExitOk;
}

Atlas load_atlas(const Settings& s) {
  const fs::path path = atlas_path(s);
  if (!fs::exists(path)) throw InputError("atlas file not found: " + path.string());
  try {
    return atlas_from_json(read_json_file(path));
  } catch (const Json::exception& e) {
    throw InputError("atlas " + path.string() + ": " + e.what());
  }
}

int cmd_sample(const Settings& s, std::ostream& out) {
  const Atlas atlas = load_atlas(s);
  const int n = atlas.spectrum().dim();
  const auto slice = slice_of(s, n);
  const auto box = bounds_of(s, n);
  const auto [lo, hi] = box ? *box : atlas_extent(atlas);
  const GridSpec grid(lo, hi, resolution_of(s, n), slice);
  const auto cells = classify_grid(atlas, grid, workers_of(s));

  const fs::path dir = out_dir(s);
  {
    std::ofstream csv(dir / "grid.csv", std::ios::binary);
    if (!csv) throw Error("cannot write " + (dir / "grid.csv").string());
    for (int a = 0; a < n; ++a) csv << (a ? ",x" : "x") << a + 1;
    csv << ",member,chart_index,margin\n";
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const RealVector x = grid.point(k);
      for (int a = 0; a < n; ++a) csv << (a ? "," : "") << fmt(x(a));
      csv << ',' << (cells[k].member ? 1 : 0) << ',' << cells[k].chart << ','
          << fmt(cells[k].margin) << '\n';
    }
  }
  out << "grid " << grid.size() << " points, " << count_members(cells)
      << " members\nwrote " << (dir / "grid.csv").string() << "\n";

  if (grid.free_axes().size() == 2) {
    std::optional<int> exact;
    if (auto f = fixture_number(atlas.system_id()); f && (*f == 1 || *f == 2)) {
      exact = *f;
    }
    std::ofstream svg(dir / "grid.svg", std::ios::binary);
    svg << render_svg(atlas, grid, cells, exact);
    out << "wrote " << (dir / "grid.svg").string() << "\n";
  }
  return kExitOk;
}

int cmd_validate(const Settings& s, std::ostream& out) {
  const auto sys = require_system(s);
  const Atlas atlas = load_atlas(s);
  if (sys.field.dim() != atlas.spectrum().dim()) {
    throw InputError("system and atlas dimensions differ");
  }
  ValidationParams params;
  params.samples = s.nonnegative<std::size_t>("samples", params.samples);
  params.sim = sim_params(s);
  params.box = bounds_of(s, sys.field.dim());
  params.workers = workers_of(s);

  const auto report = validate_atlas(sys.field, atlas, params);
  out << "samples    " << report.points.size() << " of " << report.requested
      << " (" << report.draws << " draws)\n";
  out << "converged  " << report.converged << "\n";
  out << "diverged   " << report.diverged << "\n";
  out << "undecided  " << report.undecided << "\n";
  for (const auto& p : report.points) {
    if (p.outcome.verdict != Verdict::kDiverged) continue;
    out << "  diverged at " << fmt(p.x) << "  chart " << p.chart << "  margin "
        << fmt(p.margin) << "\n";
  }
  return report.diverged == 0 ? kExitOk : kExitValidationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app("Domain-of-attraction estimates from Lyapunov-function embryos",
               "doa");
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Settings&, std::ostream&);
  };
  const Command commands[] = {
      {"analyze", "diagonalize, compute the embryo, report residual and timing",
       cmd_analyze},
      {"grow", "grow an atlas of shifted charts", cmd_grow},
      {"sample", "classify a grid against an atlas (CSV + SVG)", cmd_sample},
      {"validate", "check claimed members against trajectory integration",
       cmd_validate},
  };

  std::map<std::string, std::string> raw;
  std::vector<std::pair<CLI::App*, std::vector<CLI::Option*>>> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    std::vector<CLI::Option*> opts;
    for (const auto& f : kFlags) {
      opts.push_back(sub->add_option(f.flag, raw[key_of(f.flag)], f.help));
    }
    subs.emplace_back(sub, std::move(opts));
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  for (std::size_t c = 0; c < subs.size(); ++c) {
    if (!subs[c].first->parsed()) continue;
    Settings settings;
    for (std::size_t k = 0; k < std::size(kFlags); ++k) {
      if (subs[c].second[k]->count() > 0) {
        const std::string key = key_of(kFlags[k].flag);
        settings.set(key, raw[key]);
      }
    }
    try {
      merge_config(settings);
      return commands[c].fn(settings, out);
    } catch (const Error& e) {
      err << "doa " << commands[c].name << ": " << e.what() << "\n";
      return kExitInputError;
    } catch (const std::exception& e) {
      err << "doa " << commands[c].name << ": " << e.what() << "\n";
      return kExitInputError;
    }
  }
  return kExitInputError;
}

}  // namespace doa::cli
