#include "lovewave_cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "lovewave/classical.hpp"
#include "lovewave/error.hpp"
#include "lovewave/limiting.hpp"
#include "lovewave/material.hpp"
#include "lovewave/modes.hpp"
#include "lovewave/secular.hpp"
#include "lovewave/solver.hpp"
#include "lovewave_cli/report.hpp"

namespace lovewave::cli {
namespace {

// Subsonic certificate: no real characteristic root just below v_hat.
constexpr double kCertificateGap = 1e-9;

struct Options {
  std::string material;
  std::optional<double> k;
  std::optional<double> J;
  std::string coupling = "quadratic";
  double tol_v = SecularOptions{}.tol_v;
  double tol_det = SecularOptions{}.tol_det;
  double quad_tol = QuadratureConfig{}.rel_tol;
  int theta_samples = LimitingSpeedOptions{}.theta_samples;
  std::string out;
  bool json = false;
  bool timings = false;
  // modes
  double depth_max = 40.0;
  int n_depths = 400;
  double t = 1.0;
  // sweep
  std::string J_list;
  std::string k_list;
  // classical
  std::string c_list = "1,2,4,8";
  std::string v_list;
  int v_samples = 40;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::MissingKey:
    case ErrorCode::NonFinite:
    case ErrorCode::Duplicate:
    case ErrorCode::UnknownKey:
    case ErrorCode::Syntax:
      return kUsageOrIo;
    default:
      return kMathFailure;
  }
}

CurvatureCoupling coupling_of(const Options& o) {
  return o.coupling == "linear" ? CurvatureCoupling::Linear : CurvatureCoupling::Quadratic;
}

// Comma separated finite numbers; an empty string gives an empty list.
std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t len = comma == std::string::npos ? std::string::npos : comma - pos;
    const std::string item = text.substr(pos, len);
    const char* end = item.data() + item.size();
    double x = 0.0;
    const auto r = std::from_chars(item.data(), end, x);
    if (item.empty() || r.ec != std::errc() || r.ptr != end || !std::isfinite(x)) {
      throw UsageError(flag + ": not a number: '" + item + "'");
    }
    out.push_back(x);
    if (comma == std::string::npos) return out;
    pos = comma + 1;
  }
}

std::vector<double> linspace(double a, double b, int n) {
  if (n == 1) return {a};
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
  return out;
}

MaterialParams load_material(const Options& o) {
  MaterialParams p = read_material_file(o.material);
  if (o.J) p.J = *o.J;
  return p;
}

SolveOptions solve_options(const Options& o, int workers) {
  SolveOptions s;
  s.coupling = coupling_of(o);
  s.limiting.theta_samples = o.theta_samples;
  s.secular.tol_v = o.tol_v;
  s.secular.tol_det = o.tol_det;
  s.secular.quad.abs_tol = o.quad_tol;
  s.secular.quad.rel_tol = o.quad_tol;
  s.secular.workers = workers;
  return s;
}

void echo_inputs(RunReport& r, const Options& o, const MaterialParams& p) {
  r.input("material", o.material);
  r.input("mu_e", p.mu_e);
  r.input("mu_c", p.mu_c);
  r.input("lambda_e", p.lambda_e);
  r.input("a1", p.a1);
  r.input("a2", p.a2);
  r.input("a3", p.a3);
  r.input("J", p.J);
  r.input("rho", p.rho);
  if (o.k) r.input("k", *o.k);
  r.input("coupling", o.coupling);
}

void echo_tolerances(RunReport& r, const Options& o) {
  r.input("tol_v", o.tol_v);
  r.input("tol_det", o.tol_det);
  r.input("quad_tol", o.quad_tol);
  r.input("theta_samples", static_cast<double>(o.theta_samples));
}

void energy_warnings(RunReport& r, const MaterialParams& p) {
  for (const auto& row : check_positive_definiteness(p).rows) {
    if (!row.pass) {
      r.warning("energy not positive definite: " + row.name + " fails, margin " +
                format_double(row.margin));
    }
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot open output file " + path);
  f << content;
  f.flush();
  if (!f) throw Error(ErrorCode::Io, "cannot write output file " + path);
}

std::string complex_key(const std::string& base, const std::string& part) {
  return base + "." + part;
}

void output_complex(RunReport& r, const std::string& key, Complex z) {
  r.output(complex_key(key, "re"), z.real());
  r.output(complex_key(key, "im"), z.imag());
}

int cmd_check(const Options& o, RunReport& r) {
  const MaterialParams p = load_material(o);
  echo_inputs(r, o, p);
  const auto wave = validate_wave_conditions(p);
  int i = 0;
  for (const auto& row : wave.rows) {
    const std::string key = "wave." + std::to_string(++i);
    r.output(key + ".condition", row.name);
    r.output(key + ".margin", row.margin);
    r.output(key + ".pass", row.pass);
  }
  const bool inertia_ok = p.rho > 0.0 && p.J > 0.0;
  r.output("inertia.pass", inertia_ok);
  r.output("wave.overall", wave.overall && inertia_ok);
  const auto energy = check_positive_definiteness(p);
  i = 0;
  for (const auto& row : energy.rows) {
    const std::string key = "energy." + std::to_string(++i);
    r.output(key + ".condition", row.name);
    r.output(key + ".margin", row.margin);
    r.output(key + ".pass", row.pass);
  }
  r.output("energy.overall", energy.overall);
  energy_warnings(r, p);
  return wave.overall && inertia_ok ? kSuccess : kMathFailure;
}

int cmd_solve(const Options& o, RunReport& r) {
  const MaterialParams p = load_material(o);
  echo_inputs(r, o, p);
  echo_tolerances(r, o);
  energy_warnings(r, p);
  const SolveOptions so = solve_options(o, workers_from_env());
  const WaveContext ctx = make_wave_context(p, *o.k);

  Stopwatch clock;
  const auto triple = build_scaled_triple(ctx, so.coupling);
  const auto sys = triple.system();
  const auto lim = limiting_speed(sys, so.limiting);
  r.timing("limiting", clock.seconds());
  const double certified = (1.0 - kCertificateGap) * lim.v_hat;
  const bool subsonic_below = !has_real_characteristic_root(sys, certified);
  r.output("v_hat", lim.v_hat);
  r.output("v_hat.lower", certified);
  r.output("v_hat.upper", lim.v_hat);
  r.output("v_hat.certified", subsonic_below);
  r.output("v_hat.theta", lim.argmin_theta);
  if (!subsonic_below) r.warning("sextic scan finds a real root below the limiting speed");

  clock = Stopwatch();
  const auto sec = solve_secular(sys, lim.v_hat, so.secular);
  r.timing("secular", clock.seconds());
  r.output("v0", sec.v0);
  r.output("v0.bracket.lo", sec.v_lo);
  r.output("v0.bracket.hi", sec.v_hi);
  r.output("secular.iterations", static_cast<long long>(sec.iterations));
  r.output("secular.samples", static_cast<long long>(sec.det_samples.size()));
  r.output("secular.sign_changes", static_cast<long long>(sec.sign_changes));
  r.output("secular.det_at_rest", sec.det_at_rest);
  r.output("secular.det_at_v0", sec.det_at_v0);
  r.output("secular.det_within_tol", sec.det_within_tol);
  r.output("secular.det_strictly_decreasing", sec.strictly_decreasing);
  if (!sec.strictly_decreasing) r.warning("det M_v is not monotone on the sampled grid");

  clock = Stopwatch();
  const auto imp = impedance_matrix(sys, sec.v0, so.secular.quad, lim.v_hat);
  r.timing("impedance", clock.seconds());
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      output_complex(r, "M." + std::to_string(a + 1) + std::to_string(b + 1), imp.M(a, b));
    }
  }
  r.output("quad.panels", static_cast<long long>(imp.panels));
  r.output("quad.evaluations", static_cast<long long>(imp.evaluations));
  r.output("quad.nodes_per_panel", static_cast<long long>(so.secular.quad.nodes_per_panel));
  r.output("quad.error_estimate", imp.quad_error_estimate);

  clock = Stopwatch();
  const auto sol = make_solution(triple, p, imp, so.singular_tol);
  for (int a = 0; a < 3; ++a) output_complex(r, "y0." + std::to_string(a + 1), sol.y0(a));
  r.output("y0.ratio.2", std::abs(sol.y0(1) / sol.y0(0)));
  r.output("y0.ratio.3", std::abs(sol.y0(2) / sol.y0(0)));
  const double k = sol.k;
  r.output("residual.hermitian", imp.hermitian_deviation);
  r.output("residual.riccati", imp.riccati_residual);
  r.output("residual.riccati_rel", imp.riccati_residual / (1.0 + sys.Z.norm()));
  r.output("residual.quadratic", quadratic_residual(sol.E.E, sys, sol.v0));
  r.output("residual.boundary", boundary_residual(sol));
  r.output("residual.pde", pde_residual(sol, {0.0, 1.0 / k, 5.0 / k, 10.0 / k}));
  r.output("decay.min_re_eig_E", sol.E.min_real_part);
  r.timing("modes", clock.seconds());
  return kSuccess;
}

std::string modes_csv(const SurfaceWaveSolution& sol, const std::vector<double>& depths,
                      double t, double& tail_ratio) {
  const auto prof = depth_profile(sol, depths);
  const auto fields = physical_fields(sol, {0.0}, depths, t);
  std::ostringstream os;
  os << "x2,y1_re,y1_im,y2_re,y2_im,y3_re,y3_im,u3,theta1,theta2\n";
  double u3_max = 0.0;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    os << format_double(depths[i]);
    for (int j = 0; j < 3; ++j) {
      os << ',' << format_double(prof.y_values[i](j).real()) << ','
         << format_double(prof.y_values[i](j).imag());
    }
    const auto& f = fields[i];
    os << ',' << format_double(f.u3) << ',' << format_double(f.theta1) << ','
       << format_double(f.theta2) << '\n';
    u3_max = std::max(u3_max, std::abs(f.u3));
  }
  tail_ratio = u3_max > 0.0 ? std::abs(fields.back().u3) / u3_max : 0.0;
  return os.str();
}

int cmd_modes(const Options& o, RunReport& r, std::ostream& out) {
  if (o.n_depths < 1) throw UsageError("--n-depths must be at least 1");
  if (!(o.depth_max >= 0.0)) throw UsageError("--depth-max must be non-negative");
  const MaterialParams p = load_material(o);
  echo_inputs(r, o, p);
  r.input("depth_max", o.depth_max);
  r.input("n_depths", static_cast<double>(o.n_depths));
  r.input("t", o.t);
  const auto res = solve_love_wave(make_wave_context(p, *o.k), solve_options(o, workers_from_env()));
  const auto depths = linspace(0.0, o.depth_max, o.n_depths);
  double tail = 0.0;
  const std::string csv = modes_csv(res.solution, depths, o.t, tail);
  const auto prof = depth_profile(res.solution, {0.0});
  r.output("v0", res.secular.v0);
  r.output("rows", static_cast<long long>(depths.size()));
  r.output("decay.beta", prof.beta);
  r.output("decay.eigenbasis_condition", prof.eigenbasis_condition);
  r.output("decay.fallback", prof.used_fallback);
  r.output("u3.tail_ratio", tail);
  if (o.out.empty()) {
    out << csv;
    return kSuccess;
  }
  write_file(o.out, csv);
  r.output("csv", o.out);
  return kSuccess;
}

struct SweepRow {
  double J = 0.0;
  double k = 0.0;
  double v0 = std::nan("");
  double v_hat = std::nan("");
  double det_residual = std::nan("");
  std::string status = "ok";
};

int cmd_sweep(const Options& o, RunReport& r) {
  const auto J_list = parse_list(o.J_list, "--J-list");
  const auto k_list = parse_list(o.k_list, "--k-list");
  const bool by_J = !J_list.empty();
  if (by_J == !k_list.empty()) throw UsageError("give exactly one non-empty --J-list or --k-list");
  if (by_J && !o.k) throw UsageError("--J-list needs --k");
  const MaterialParams base = load_material(o);
  echo_inputs(r, o, base);
  echo_tolerances(r, o);
  const auto& axis = by_J ? J_list : k_list;
  for (double x : axis) {
    if (!(x > 0.0)) throw UsageError("axis values must be positive");
  }
  r.input("axis", std::string(by_J ? "J" : "k"));

  std::vector<SweepRow> rows(axis.size());
  int pool = workers_from_env();
  if (pool <= 0) pool = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  pool = std::min<int>(pool, static_cast<int>(axis.size()));
  // Points run in parallel, so each secular solve samples on one thread.
  const SolveOptions so = solve_options(o, pool > 1 ? 1 : workers_from_env());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < axis.size();) {
      SweepRow& row = rows[i];
      MaterialParams p = base;
      if (by_J) p.J = axis[i];
      row.J = p.J;
      row.k = by_J ? *o.k : axis[i];
      try {
        const auto res = solve_love_wave(make_wave_context(p, row.k), so);
        row.v0 = res.secular.v0;
        row.v_hat = res.limiting.v_hat;
        row.det_residual = std::abs(res.secular.det_at_v0 / res.secular.det_at_rest);
      } catch (const Error& e) {
        row.status = std::string(to_string(e.code()));
      }
    }
  };
  std::vector<std::thread> threads;
  for (int w = 1; w < pool; ++w) threads.emplace_back(work);
  work();
  for (auto& th : threads) th.join();

  std::ostringstream csv;
  csv << "J,k,v0,v_hat,det_residual,status\n";
  int failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const bool ok = row.status == "ok";
    failures += ok ? 0 : 1;
    csv << format_double(row.J) << ',' << format_double(row.k) << ','
        << (ok ? format_double(row.v0) : "") << ',' << (ok ? format_double(row.v_hat) : "") << ','
        << (ok ? format_double(row.det_residual) : "") << ',' << row.status << '\n';
    const std::string key = "row." + std::to_string(i + 1);
    r.output(key + ".J", row.J);
    r.output(key + ".k", row.k);
    if (ok) {
      r.output(key + ".v0", row.v0);
      r.output(key + ".v_hat", row.v_hat);
      r.output(key + ".det_residual", row.det_residual);
    }
    r.output(key + ".status", row.status);
  }
  r.output("rows", static_cast<long long>(rows.size()));
  r.output("failures", static_cast<long long>(failures));
  if (!o.out.empty()) {
    write_file(o.out, csv.str());
    r.output("csv", o.out);
  }
  return kSuccess;
}

int cmd_classical(const Options& o, RunReport& r) {
  const auto c_list = parse_list(o.c_list, "--c-list");
  const auto v_list = parse_list(o.v_list, "--v-list");
  if (c_list.empty()) throw UsageError("--c-list must not be empty");
  for (double c : c_list) {
    if (!(c > 0.0)) throw UsageError("--c-list values must be positive");
  }
  if (v_list.empty() && o.v_samples < 1) throw UsageError("--v-samples must be at least 1");
  const MaterialParams p = load_material(o);
  echo_inputs(r, o, p);
  const double k = o.k.value_or(1.0);
  const auto base = ClassicalMicroParams::from_material(p);
  r.output("alpha1", base.alpha1);
  r.output("alpha2", base.alpha2);
  r.output("alpha3", base.alpha3);

  std::vector<double> grid = v_list;
  if (grid.empty()) {
    const double c_min = *std::min_element(c_list.begin(), c_list.end());
    const double top = 0.95 * classical_speed_bound(base.with_c(c_min));
    for (int i = 1; i <= o.v_samples; ++i) grid.push_back(top * i / o.v_samples);
  }

  std::ostringstream csv;
  csv << "c,v,f_c,status\n";
  std::vector<double> minima;
  for (std::size_t ci = 0; ci < c_list.size(); ++ci) {
    const auto m = base.with_c(c_list[ci]);
    const std::string key = "c." + std::to_string(ci + 1);
    double lo = std::numeric_limits<double>::infinity();
    int flagged = 0;
    int sign_changes = 0;
    double prev = std::nan("");
    for (double v : grid) {
      std::string status = "ok";
      double fc = std::nan("");
      try {
        fc = classical_secular_function(m, v);
        lo = std::min(lo, std::abs(fc));
        if (std::isfinite(prev) && (prev > 0.0) != (fc > 0.0)) ++sign_changes;
        prev = fc;
      } catch (const Error& e) {
        status = std::string(to_string(e.code()));
        ++flagged;
      }
      csv << format_double(m.c) << ',' << format_double(v) << ','
          << (status == "ok" ? format_double(fc) : "") << ',' << status << '\n';
    }
    minima.push_back(lo);
    r.output(key + ".value", m.c);
    r.output(key + ".speed_bound", classical_speed_bound(m));
    r.output(key + ".min_abs_f_c", lo);
    r.output(key + ".sign_change", sign_changes > 0);
    r.output(key + ".flagged_rows", static_cast<long long>(flagged));
    if (flagged > 0) r.warning(key + ": speeds outside the admissible range were flagged");
  }
  bool increasing = true;
  for (std::size_t i = 1; i < minima.size(); ++i) increasing = increasing && minima[i] > minima[i - 1];
  r.output("min_abs_f_c.increasing", increasing);

  // Quadrature of the rotated micro block against its closed form.
  const auto m0 = base.with_c(c_list.front());
  double worst = 0.0;
  for (double v : grid) {
    if (!classical_admissible(m0, v)) continue;
    const Matrix2 q = classical_block_integral(m0, v);
    const Matrix2 c = classical_block_integral_closed_form(m0, v);
    worst = std::max(worst, (q - c).norm() / c.norm());
  }
  r.output("block_integral.max_rel_error", worst);

  // Vanishing coupling: the 3x3 root approaches the micro-block root.
  try {
    MaterialParams weak = p;
    weak.mu_c = 1e-8 * p.mu_e;
    const auto micro = classical_micro_root(base, k, coupling_of(o));
    r.output("decoupling.micro_root", micro.v0);
    r.output("decoupling.macro_impedance", classical_macro_impedance(p.mu_e, p.rho, k, micro.v0));
    SolveOptions so = solve_options(o, workers_from_env());
    const auto full = solve_love_wave(make_wave_context(weak, k), so);
    r.output("decoupling.full_root", full.secular.v0);
    r.output("decoupling.rel_diff", std::abs(full.secular.v0 - micro.v0) / micro.v0);
  } catch (const Error& e) {
    r.warning("decoupling diagnostic unavailable: " + std::string(to_string(e.code())) + ": " +
              e.detail());
  }
  if (!o.out.empty()) {
    write_file(o.out, csv.str());
    r.output("csv", o.out);
  }
  return kSuccess;
}

void add_common(CLI::App* sub, Options& o, bool needs_k) {
  sub->add_option("material", o.material, "material file")->required();
  auto* k = sub->add_option("--k", o.k, "wave number");
  if (needs_k) k->required();
  sub->add_option("--J", o.J, "override the rotational inertia J");
  sub->add_option("--coupling", o.coupling, "curvature coupling power: quadratic (k^2) or linear (k)")
      ->check(CLI::IsMember({"quadratic", "linear"}));
  sub->add_option("--out", o.out, "output file");
  sub->add_flag("--json", o.json, "print the report as JSON");
  sub->add_flag("--timings", o.timings, "include per-stage timings");
}

void add_tolerances(CLI::App* sub, Options& o) {
  sub->add_option("--tol-v", o.tol_v, "root tolerance relative to v_hat")->check(CLI::PositiveNumber);
  sub->add_option("--tol-det", o.tol_det, "|det| tolerance relative to det at rest")
      ->check(CLI::PositiveNumber);
  sub->add_option("--quad-tol", o.quad_tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--theta-samples", o.theta_samples, "limiting speed angle samples")
      ->check(CLI::Range(3, 1 << 24));
}

}  // namespace

int workers_from_env() {
  const char* s = std::getenv("LOVEWAVE_WORKERS");
  if (s == nullptr) return 0;
  char* end = nullptr;
  const long n = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || n <= 0 || n > 4096) return 0;
  return static_cast<int>(n);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Love surface waves in a Cosserat half-space", "lovewave"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "validate a material file");
  add_common(check, o, false);
  auto* solve = app.add_subcommand("solve", "limiting speed, wave speed, impedance and amplitude");
  add_common(solve, o, true);
  add_tolerances(solve, o);
  auto* modes = app.add_subcommand("modes", "depth profile CSV at x1 = 0");
  add_common(modes, o, true);
  add_tolerances(modes, o);
  modes->add_option("--depth-max", o.depth_max, "largest depth");
  modes->add_option("--n-depths", o.n_depths, "number of depths");
  modes->add_option("--t", o.t, "time");
  auto* sweep = app.add_subcommand("sweep", "wave speed over a J or k list");
  add_common(sweep, o, false);
  add_tolerances(sweep, o);
  sweep->add_option("--J-list", o.J_list, "comma separated J values");
  sweep->add_option("--k-list", o.k_list, "comma separated k values");
  auto* classical = app.add_subcommand("classical", "vanishing-coupling diagnostics");
  add_common(classical, o, false);
  classical->add_option("--c-list", o.c_list, "comma separated c values");
  classical->add_option("--v-list", o.v_list, "comma separated speeds");
  classical->add_option("--v-samples", o.v_samples, "uniform speeds when --v-list is absent");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "lovewave: " << e.what() << '\n';
    return kUsageOrIo;
  }

  CLI::App* active = app.get_subcommands().front();
  RunReport report(active->get_name());
  int code = kSuccess;
  bool print_report = true;
  try {
    if (o.k && !(*o.k > 0.0 && std::isfinite(*o.k))) throw UsageError("--k must be positive");
    if (o.J && !(*o.J > 0.0 && std::isfinite(*o.J))) throw UsageError("--J must be positive");
    if (active == check) {
      code = cmd_check(o, report);
    } else if (active == solve) {
      code = cmd_solve(o, report);
    } else if (active == modes) {
      code = cmd_modes(o, report, out);
      print_report = !o.out.empty();
    } else if (active == sweep) {
      code = cmd_sweep(o, report);
    } else {
      code = cmd_classical(o, report);
    }
  } catch (const UsageError& e) {
    err << "lovewave: " << e.what() << '\n';
    return kUsageOrIo;
  } catch (const Error& e) {
    report.error(std::string(to_string(e.code())), e.detail());
    err << "lovewave: " << to_string(e.code()) << ": " << e.detail() << '\n';
    code = exit_code_for(e.code());
    print_report = true;
  }
  const std::string text = o.json ? report.to_json(o.timings) : report.to_text(o.timings);
  if (print_report) out << text;
  if (active == solve || active == check) {
    if (!o.out.empty()) {
      try {
        write_file(o.out, text);
      } catch (const Error& e) {
        err << "lovewave: " << to_string(e.code()) << ": " << e.detail() << '\n';
        return kUsageOrIo;
      }
    }
  }
  return code;
}

}  // namespace lovewave::cli
