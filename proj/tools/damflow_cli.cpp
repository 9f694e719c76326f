// damflow: solve, sample, sweep and verify the dam-break problem over a bed step.
//
// Exit codes: 0 ok, 1 verification failure, 2 input parse error, 3 domain error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "damflow/damflow.hpp"
#include "damflow/io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kParseError = 2;
constexpr int kDomainError = 3;

using damflow::io::format_number;

damflow::io::ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw damflow::io::config_error("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return damflow::io::parse_config(buf.str());
}

struct Grid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n = 1;
};

Grid parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos) throw damflow::io::config_error("--grid must look like xmin:xmax:n");
  try {
    std::size_t used = 0;
    Grid g;
    const std::string a = text.substr(0, first);
    const std::string b = text.substr(first + 1, second - first - 1);
    const std::string c = text.substr(second + 1);
    g.x_min = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    g.x_max = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    g.n = std::stoi(c, &used);
    if (used != c.size()) throw std::invalid_argument(c);
    return g;
  } catch (const std::logic_error&) {
    throw damflow::io::config_error("--grid must look like xmin:xmax:n");
  }
}

std::vector<double> abscissae(const Grid& g) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    xs.push_back(g.n == 1 ? g.x_min : g.x_min + (g.x_max - g.x_min) * i / (g.n - 1));
  }
  return xs;
}

int cmd_solve(const std::string& config_path) {
  const auto cfg = load_config(config_path);
  const auto outcome = damflow::solve_dam(cfg.problem());
  std::cout << damflow::io::summary_json(outcome).dump(2) << '\n';
  return kOk;
}

int cmd_sample(const std::string& config_path, std::optional<double> t_flag, std::optional<std::string> grid_flag,
               std::optional<double> eps_flag) {
  const auto cfg = load_config(config_path);
  const auto outcome = damflow::solve_dam(cfg.problem());

  const double t = t_flag ? *t_flag : (cfg.sample ? cfg.sample->t : 1.0);
  Grid grid;
  if (grid_flag) {
    grid = parse_grid(*grid_flag);
  } else if (cfg.sample) {
    grid = {cfg.sample->x_min, cfg.sample->x_max, cfg.sample->n};
  } else {
    throw damflow::io::config_error("sampling needs --grid or a 'sample' object in the config");
  }
  if (!(t > 0.0)) throw damflow::domain_error("sampling time must be positive");
  if (grid.n < 1) throw damflow::domain_error("grid needs at least one point");
  if (!(grid.x_max >= grid.x_min)) throw damflow::domain_error("grid needs xmax >= xmin");
  const std::optional<double> eps = eps_flag ? eps_flag : cfg.epsilon;
  if (eps && !(*eps > 0.0)) throw damflow::domain_error("epsilon must be positive");

  const damflow::Gravity g{cfg.g};
  const auto xs = abscissae(grid);
  std::string out = "x,h,u,b,eta,interface\n";
  auto row = [&](double x, double h, double u, double b, bool iface) {
    out += format_number(x) + ',' + format_number(h) + ',' + format_number(u) + ',' + format_number(b) + ',' +
           format_number(damflow::eta({h, u}, b, g)) + ',' + (iface ? "1" : "0") + '\n';
  };

  const auto* sol = std::get_if<damflow::DamSolution>(&outcome);
  if (!sol) {
    const auto& nf = std::get<damflow::NoFlow>(outcome);
    std::cerr << "note: fluid does not pass the dam (" << damflow::to_string(nf.reason)
              << "); sampling the " << (nf.reason == damflow::NoFlowReason::rest_state ? "rest-state" : "initial")
              << " field\n";
  }
  if (sol && eps) {
    for (const auto& r : damflow::shadow_profile(*sol, *eps, t, xs)) row(r.x, r.h, r.u, r.b, false);
  } else {
    for (double x : xs) {
      const auto v = damflow::sample(outcome, x, t);
      row(x, v.h, v.u, v.b, v.interface);
    }
  }
  std::cout << out;
  return kOk;
}

int cmd_sweep(const std::string& config_path, const std::string& key, double from, double to, int steps) {
  const auto base = load_config(config_path);
  if (steps < 1 || !std::isfinite(from) || !std::isfinite(to) || to < from) {
    throw damflow::io::config_error("invalid sweep range");
  }
  double damflow::io::ProblemConfig::*field = nullptr;
  if (key == "b1") field = &damflow::io::ProblemConfig::b1;
  else if (key == "b0") field = &damflow::io::ProblemConfig::b0;
  else if (key == "h_l") field = &damflow::io::ProblemConfig::h_l;
  else if (key == "u_l") field = &damflow::io::ProblemConfig::u_l;
  else if (key == "g") field = &damflow::io::ProblemConfig::g;
  else throw damflow::io::config_error("--vary must be one of b1, b0, h_l, u_l, g");

  std::vector<damflow::io::ProblemConfig> points;
  for (int i = 0; i < steps; ++i) {
    auto cfg = base;
    cfg.*field = steps == 1 ? from : from + (to - from) * i / (steps - 1);
    damflow::io::validate(cfg);
    points.push_back(cfg);
  }

  std::string out = key + ",status,h0,E,branch\n";
  for (const auto& cfg : points) {
    const auto outcome = damflow::solve_dam(cfg.problem());
    out += format_number(cfg.*field);
    if (const auto* s = std::get_if<damflow::DamSolution>(&outcome)) {
      out += ",flow," + format_number(s->behind.h) + ',' + format_number(s->energy) + ',' +
             damflow::to_string(s->branch) + '\n';
    } else {
      out += ",no_flow,,,\n";
    }
  }
  std::cout << out;
  return kOk;
}

int cmd_verify(const std::string& config_path, double chi_perturbation) {
  const auto cfg = load_config(config_path);
  const auto outcome = damflow::solve_dam(cfg.problem());
  nlohmann::json j;
  if (const auto* nf = std::get_if<damflow::NoFlow>(&outcome)) {
    j["status"] = "no_flow";
    j["reason"] = damflow::to_string(nf->reason);
    j["checks"] = nlohmann::json::object();
    j["passed"] = true;
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  auto sol = std::get<damflow::DamSolution>(outcome);
  sol.conn.chi += chi_perturbation;
  const auto report = damflow::verify::check_solution(sol);
  j = damflow::io::report_json(report);
  j["status"] = "flow";
  const auto failed = report.first_failure();
  j["failed"] = failed ? nlohmann::json(*failed) : nlohmann::json(nullptr);
  std::cout << j.dump(2) << '\n';
  if (failed) {
    std::cerr << "verification failed: " << *failed << '\n';
    return kVerifyFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dam-break over a bed step: shadow-wave connection selected by maximal energy dissipation"};
  app.require_subcommand(1);

  std::string config;
  std::optional<double> t_flag;
  std::optional<std::string> grid_flag;
  std::optional<double> eps_flag;
  std::string vary = "b1";
  double from = 0.0, to = 0.0;
  int steps = 1;
  double chi_perturbation = 0.0;

  auto* solve = app.add_subcommand("solve", "Solve and print a JSON summary");
  solve->add_option("--config", config, "Problem config (JSON)")->required();

  auto* sample = app.add_subcommand("sample", "Sample (h, u, b, eta) on a grid as CSV");
  sample->add_option("--config", config, "Problem config (JSON)")->required();
  sample->add_option("--t", t_flag, "Sampling time");
  sample->add_option("--grid", grid_flag, "xmin:xmax:n");
  sample->add_option("--epsilon", eps_flag, "Shadow-wave strip parameter");

  auto* sweep = app.add_subcommand("sweep", "Solve over a parameter range, CSV output");
  sweep->add_option("--config", config, "Problem config (JSON)")->required();
  sweep->add_option("--vary", vary, "Parameter to vary (b1, b0, h_l, u_l, g)");
  sweep->add_option("--from", from, "Range start")->required();
  sweep->add_option("--to", to, "Range end")->required();
  sweep->add_option("--steps", steps, "Number of points")->required();

  auto* verify = app.add_subcommand("verify", "Residual checks on the solution, JSON output");
  verify->add_option("--config", config, "Problem config (JSON)")->required();
  verify->add_option("--perturb-chi", chi_perturbation)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*solve) return cmd_solve(config);
    if (*sample) return cmd_sample(config, t_flag, grid_flag, eps_flag);
    if (*sweep) return cmd_sweep(config, vary, from, to, steps);
    if (*verify) return cmd_verify(config, chi_perturbation);
  } catch (const damflow::io::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const damflow::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomainError;
  }
  return kParseError;
}
