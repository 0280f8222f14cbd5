// Command-line front end: parse networks, run the stability analyses, and
// integrate trajectories. Exit codes: 0 = analysis completed (verdicts are
// data, not errors), 2 = input error, 3 = a resource cap was hit.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "CLI11.hpp"
#include "json.hpp"

#include "gmas/analyzer.hpp"
#include "gmas/bundled_examples.hpp"
#include "gmas/dynamics.hpp"
#include "gmas/errors.hpp"
#include "gmas/network.hpp"
#include "gmas/numeric.hpp"
#include "gmas/report.hpp"
#include "gmas/stability.hpp"
#include "gmas/subspace.hpp"

namespace {

using gmas::format_double;

struct CommonFlags {
  std::string format = "text";
  std::string out;
  std::uint64_t seed = 0x5EED;
  int samples = 100000;
  int sweep = 100;
  double zero_tol = gmas::kRelZeroTol;
};

void add_analysis_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--format", f.format, "output format (text or json)")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", f.out, "write output to this file instead of stdout");
  cmd->add_option("--seed", f.seed, "seed for sampling and certificate searches");
  cmd->add_option("--samples", f.samples, "sample budget for the diagonal falsifier")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--sweep", f.sweep,
                  "sampled-D sweep size for diagonal D-stability on subspaces")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--zero-tol", f.zero_tol,
                  "relative zero tolerance for criteria and spectra")
      ->check(CLI::PositiveNumber);
}

gmas::StabilityOptions stability_options(const CommonFlags& f) {
  gmas::StabilityOptions opts;
  opts.seed = f.seed;
  opts.sample_count = f.samples;
  opts.sweep_count = f.sweep;
  opts.zero_tol = f.zero_tol;
  return opts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gmas::Error("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw gmas::Error("cannot write file '" + out_path + "'");
    out << text;
  }
}

std::vector<double> split_numbers(const std::string& text, char sep) {
  std::vector<double> values;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw gmas::Error("cannot parse number '" + item + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw gmas::Error("cannot parse number '" + item + "'");
    values.push_back(v);
  }
  return values;
}

Eigen::VectorXd parse_vector(const std::string& text) {
  std::vector<double> v = split_numbers(text, ',');
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Plain CSV: one row per line, comma separated; blank lines and lines
// starting with '#' are skipped.
Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    std::vector<double> row = split_numbers(line, ',');
    if (!rows.empty() && row.size() != rows.front().size())
      throw gmas::Error("ragged row at line " + std::to_string(line_no) + " of '" + path + "'");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw gmas::Error("no numeric rows in '" + path + "'");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows.front().size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

std::string vector_text(const Eigen::VectorXd& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return s;
}

std::string complex_text(const std::complex<double>& z) {
  std::string s = format_double(z.real());
  if (z.imag() != 0.0)
    s += (z.imag() < 0 ? " - " : " + ") + format_double(std::abs(z.imag())) + "i";
  return s;
}

std::string verdict_text(const gmas::Verdict& v) {
  std::string out = std::string(to_string(v.notion)) + ": " + to_string(v.status) +
                    " [" + to_string(v.method);
  if (!v.certified) out += ", not certified";
  out += "]\n";
  for (const std::string& c : v.clauses) out += "  - " + c + "\n";
  if (v.diagonal_certificate)
    out += "  diagonal certificate P = diag(" + vector_text(*v.diagonal_certificate) + ")\n";
  if (v.counterexample_d)
    out += "  counterexample D = diag(" + vector_text(*v.counterexample_d) + ")\n";
  if (v.offending_eigenvalue)
    out += "  offending eigenvalue: " + complex_text(*v.offending_eigenvalue) + "\n";
  return out;
}

gmas::ParsedNetwork load_network(const std::string& path) {
  return gmas::parse_network(read_file(path));
}

int run_analyze(const std::string& path, const CommonFlags& flags) {
  gmas::ParsedNetwork parsed = load_network(path);
  gmas::AnalysisReport report = gmas::full_report(parsed.network, stability_options(flags));
  if (flags.format == "json")
    emit(gmas::report_to_json(report).dump(2) + "\n", flags.out);
  else
    emit(gmas::report_to_text(report), flags.out);
  return 0;
}

int run_stability(const std::string& matrix_path, const std::string& subspace_path,
                  const CommonFlags& flags) {
  Eigen::MatrixXd a = read_matrix_csv(matrix_path);
  if (a.rows() != a.cols())
    throw gmas::Error("stability input must be a square matrix; got " +
                      std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  std::optional<gmas::Subspace> s;
  if (!subspace_path.empty()) {
    // Rows of the file span the subspace; orthonormalize and drop
    // dependent rows.
    Eigen::MatrixXd basis_rows = read_matrix_csv(subspace_path);
    if (basis_rows.cols() != a.rows())
      throw gmas::Error("subspace rows must have length " + std::to_string(a.rows()));
    s = gmas::column_space(basis_rows.transpose());
  }
  std::vector<gmas::Verdict> verdicts =
      gmas::notion_lattice_check(a, s, stability_options(flags));

  if (flags.format == "json") {
    nlohmann::json j;
    j["matrix"] = gmas::matrix_to_json(a);
    j["subspace_dim"] = s ? s->dim() : static_cast<int>(a.rows());
    nlohmann::json arr = nlohmann::json::array();
    for (const gmas::Verdict& v : verdicts) arr.push_back(gmas::verdict_to_json(v));
    j["verdicts"] = arr;
    emit(j.dump(2) + "\n", flags.out);
  } else {
    std::string out = "matrix " + std::to_string(a.rows()) + "x" + std::to_string(a.cols());
    out += s ? " on a subspace of dimension " + std::to_string(s->dim()) : " on the full space";
    out += "\n";
    for (const gmas::Verdict& v : verdicts) out += verdict_text(v);
    emit(out, flags.out);
  }
  return 0;
}

int run_cycles(const std::string& path, const CommonFlags& flags) {
  gmas::ParsedNetwork parsed = load_network(path);
  const gmas::GmasNetwork& net = parsed.network;
  std::vector<gmas::CycleFinding> findings =
      gmas::analyze_weakly_reversible(net, stability_options(flags));

  if (flags.format == "json") {
    nlohmann::json j;
    j["vertex_names"] = net.vertex_names;
    nlohmann::json arr = nlohmann::json::array();
    for (const gmas::CycleFinding& f : findings) {
      nlohmann::json c;
      c["vertices"] = f.cycle.vertices;
      c["dim_sc"] = f.dim_sc;
      c["a_c"] = gmas::matrix_to_json(f.a_c);
      c["verdict"] = gmas::verdict_to_json(f.verdict);
      if (f.witness) c["witness"] = gmas::witness_to_json(*f.witness);
      arr.push_back(c);
    }
    j["cycles"] = arr;
    emit(j.dump(2) + "\n", flags.out);
  } else {
    std::string out = "cycles: " + std::to_string(findings.size()) + "\n";
    for (size_t i = 0; i < findings.size(); ++i) {
      const gmas::CycleFinding& f = findings[i];
      out += "cycle " + std::to_string(i + 1) + ": ";
      for (size_t v = 0; v < f.cycle.vertices.size(); ++v) {
        out += net.vertex_names[static_cast<size_t>(f.cycle.vertices[v])];
        out += " -> ";
      }
      out += net.vertex_names[static_cast<size_t>(f.cycle.vertices.front())];
      out += "  (dim of the cycle subspace: " + std::to_string(f.dim_sc) + ")\n";
      out += "  " + verdict_text(f.verdict);
      if (f.witness && f.witness->verified) {
        out += "  instability witness: rates for epsilon = " + format_double(f.witness->epsilon) +
               ", eigenvalue " + complex_text(f.witness->eigenvalue) + "\n";
      }
    }
    emit(out, flags.out);
  }
  return 0;
}

int run_uniqueness(const std::string& path, const CommonFlags& flags) {
  gmas::ParsedNetwork parsed = load_network(path);
  gmas::UniquenessResult res;
  try {
    res = gmas::uniqueness_check(parsed.network);
  } catch (const gmas::DimensionError& e) {
    // The sign-vector enumeration cap is a resource limit, not bad input.
    throw gmas::ResourceError(e.what());
  }

  if (flags.format == "json") {
    nlohmann::json j;
    j["unique"] = res.unique;
    if (res.witness) {
      nlohmann::json w;
      w["u"] = gmas::vector_to_json(res.witness->u);
      w["v"] = gmas::vector_to_json(res.witness->v);
      w["x_star"] = gmas::vector_to_json(res.witness->x_star);
      w["rates"] = gmas::vector_to_json(res.witness->rates.k);
      w["jv_residual"] = res.witness->jv_residual;
      j["witness"] = w;
    }
    emit(j.dump(2) + "\n", flags.out);
  } else {
    std::string out = std::string("unique equilibrium in every positive class for all rate constants: ") +
                      (res.unique ? "yes" : "no") + "\n";
    if (res.witness) {
      out += "  witness x* = (" + vector_text(res.witness->x_star) + ")\n";
      out += "  rates k = (" + vector_text(res.witness->rates.k) + ")\n";
      out += "  degenerate direction v = (" + vector_text(res.witness->v) + ")";
      out += ", |J v| / (|J| |v|) = " + format_double(res.witness->jv_residual) + "\n";
    }
    emit(out, flags.out);
  }
  return 0;
}

int run_simulate(const std::string& path, const std::string& rates_arg,
                 const std::string& x0_arg, const std::string& perturb_arg,
                 double t_end, std::uint64_t seed, const gmas::IntegrateOptions& iopts,
                 const std::string& out_path) {
  gmas::ParsedNetwork parsed = load_network(path);
  const gmas::GmasNetwork& net = parsed.network;
  const int n = net.num_species();

  Eigen::VectorXd x_star;
  double magnitude = 0.0;
  if (!perturb_arg.empty()) {
    size_t colon = perturb_arg.rfind(':');
    if (colon == std::string::npos)
      throw gmas::Error("--perturb-equilibrium expects 'x1,...,xn:magnitude'");
    x_star = parse_vector(perturb_arg.substr(0, colon));
    std::vector<double> mag = split_numbers(perturb_arg.substr(colon + 1), ',');
    if (mag.size() != 1) throw gmas::Error("--perturb-equilibrium needs one magnitude");
    magnitude = mag.front();
    if (x_star.size() != n)
      throw gmas::Error("equilibrium needs " + std::to_string(n) + " components");
    gmas::require_positive(x_star, "equilibrium");
  }

  Eigen::VectorXd k;
  if (!rates_arg.empty()) {
    k = parse_vector(rates_arg);
  } else if (parsed.rates) {
    k = parsed.rates->k;
  } else if (x_star.size() > 0) {
    k = gmas::construct_rates(net, x_star).rates.k;
  } else {
    throw gmas::Error("no rate constants: annotate the file, pass --rates, "
                      "or use --perturb-equilibrium");
  }
  if (k.size() != net.num_edges())
    throw gmas::Error("expected " + std::to_string(net.num_edges()) + " rate constants");

  Eigen::VectorXd x0;
  if (!x0_arg.empty()) {
    x0 = parse_vector(x0_arg);
    if (x0.size() != n)
      throw gmas::Error("initial state needs " + std::to_string(n) + " components");
  } else if (x_star.size() > 0) {
    // Deterministic perturbation direction inside the stoichiometric
    // subspace.
    gmas::Subspace s = gmas::stoichiometric_subspace(net);
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
    if (s.dim() > 0) {
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      Eigen::VectorXd g(n);
      for (int i = 0; i < n; ++i) g[i] = gauss(rng);
      delta = s.basis * (s.basis.transpose() * g);
      double norm = delta.norm();
      if (norm > 0.0) delta *= magnitude * x_star.cwiseAbs().maxCoeff() / norm;
    }
    x0 = x_star + delta;
  } else {
    throw gmas::Error("no initial state: pass --x0 or --perturb-equilibrium");
  }
  gmas::require_positive(x0, "initial state");

  gmas::Trajectory traj = gmas::integrate(net, k, x0, t_end, iopts);

  const Eigen::VectorXd& reference = x_star.size() > 0 ? x_star : x0;
  double final_distance = (traj.states.back() - reference).norm();
  double max_distance = 0.0;
  for (const Eigen::VectorXd& x : traj.states)
    max_distance = std::max(max_distance, (x - reference).norm());

  std::string summary = "status=" + std::string(to_string(traj.status)) +
                        " steps=" + std::to_string(traj.times.size() - 1) +
                        " t_final=" + format_double(traj.times.back()) +
                        " final_distance=" + format_double(final_distance) +
                        " max_distance=" + format_double(max_distance) + "\n";
  if (traj.status != gmas::TrajectoryStatus::completed)
    summary += "warning: " + traj.message + "\n";

  if (!out_path.empty()) {
    emit(gmas::trajectory_csv(traj), out_path);
    std::cout << summary;
  } else {
    std::cout << gmas::trajectory_csv(traj);
    std::cerr << summary;
  }
  return 0;
}

int run_examples(const std::string& name, const std::string& out_dir) {
  const auto& families = gmas::bundled_networks();
  auto it = families.find(name);
  if (it == families.end()) {
    std::string names;
    for (const auto& [key, value] : families) {
      (void)value;
      if (!names.empty()) names += ", ";
      names += key;
    }
    throw gmas::Error("unknown example '" + name + "' (available: " + names + ")");
  }
  std::filesystem::path dir = out_dir.empty() ? std::filesystem::path(".")
                                              : std::filesystem::path(out_dir);
  std::filesystem::create_directories(dir);
  for (const auto& [filename, content] : it->second) {
    std::filesystem::path dest = dir / filename;
    std::ofstream out(dest, std::ios::binary);
    if (!out) throw gmas::Error("cannot write file '" + dest.string() + "'");
    out << content;
    std::cout << "wrote " << dest.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability analysis for generalized mass-action networks"};
  app.require_subcommand(1);

  CommonFlags analyze_flags;
  std::string analyze_path;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "Structural and stability report for a network file");
  analyze_cmd->add_option("input", analyze_path, "network file (.gcrn)")->required();
  add_analysis_flags(analyze_cmd, analyze_flags);

  CommonFlags stability_flags;
  std::string matrix_path, subspace_path;
  CLI::App* stability_cmd =
      app.add_subcommand("stability", "Decide the eight stability notions for a matrix");
  stability_cmd->add_option("matrix", matrix_path, "square matrix (CSV rows)")->required();
  stability_cmd->add_option("--subspace", subspace_path,
                            "CSV whose rows span the subspace to restrict to");
  add_analysis_flags(stability_cmd, stability_flags);

  CommonFlags cycles_flags;
  std::string cycles_path;
  CLI::App* cycles_cmd = app.add_subcommand(
      "cycles", "Per-cycle D-semistability findings for a weakly reversible network");
  cycles_cmd->add_option("input", cycles_path, "network file (.gcrn)")->required();
  add_analysis_flags(cycles_cmd, cycles_flags);

  CommonFlags uniq_flags;
  std::string uniq_path;
  CLI::App* uniq_cmd = app.add_subcommand(
      "uniqueness", "Sign-vector uniqueness test for equilibria across all rate constants");
  uniq_cmd->add_option("input", uniq_path, "network file (.gcrn)")->required();
  add_analysis_flags(uniq_cmd, uniq_flags);

  std::string sim_path, sim_rates, sim_x0, sim_perturb, sim_out;
  double sim_t_end = 50.0;
  std::uint64_t sim_seed = 0x5EED;
  gmas::IntegrateOptions iopts;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Integrate the mass-action ODE");
  sim_cmd->add_option("input", sim_path, "network file (.gcrn)")->required();
  sim_cmd->add_option("--rates", sim_rates, "rate constants k1,k2,... (one per edge)");
  CLI::Option* x0_opt = sim_cmd->add_option("--x0", sim_x0, "initial state x1,...,xn");
  CLI::Option* pert_opt = sim_cmd->add_option(
      "--perturb-equilibrium", sim_perturb,
      "equilibrium and relative magnitude 'x1,...,xn:mag'; rates default to a "
      "complex-balancing assignment for the equilibrium");
  x0_opt->excludes(pert_opt);
  sim_cmd->add_option("--t-end", sim_t_end, "integration end time");
  sim_cmd->add_option("--seed", sim_seed, "seed for the perturbation direction");
  sim_cmd->add_option("--rel-tol", iopts.rel_tol, "relative error tolerance");
  sim_cmd->add_option("--abs-tol", iopts.abs_tol, "absolute error tolerance");
  sim_cmd->add_option("--max-steps", iopts.max_steps, "step budget");
  sim_cmd->add_option("--out", sim_out, "write the CSV trajectory to this file");

  std::string example_name, example_dir;
  CLI::App* examples_cmd =
      app.add_subcommand("examples", "Write a bundled example network family to disk");
  examples_cmd->add_option("name", example_name, "family name")->required();
  examples_cmd->add_option("--out", example_dir, "destination directory (default: .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze_cmd) return run_analyze(analyze_path, analyze_flags);
    if (*stability_cmd) return run_stability(matrix_path, subspace_path, stability_flags);
    if (*cycles_cmd) return run_cycles(cycles_path, cycles_flags);
    if (*uniq_cmd) return run_uniqueness(uniq_path, uniq_flags);
    if (*sim_cmd)
      return run_simulate(sim_path, sim_rates, sim_x0, sim_perturb, sim_t_end, sim_seed,
                          iopts, sim_out);
    if (*examples_cmd) return run_examples(example_name, example_dir);
  } catch (const gmas::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const gmas::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
