#include "gmas/report.hpp"

#include <complex>

namespace gmas {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    j.push_back(row);
  }
  return j;
}

namespace {

nlohmann::json complex_to_json(const std::complex<double>& z) {
  return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

const char* definiteness_name(Definiteness d) {
  switch (d) {
    case Definiteness::negative_definite: return "negative_definite";
    case Definiteness::negative_semidefinite: return "negative_semidefinite";
    case Definiteness::indefinite_or_positive: return "indefinite_or_positive";
  }
  return "?";
}

}  // namespace

nlohmann::json witness_to_json(const InstabilityWitness& w) {
  nlohmann::json j;
  j["d"] = vector_to_json(w.d);
  j["x_star"] = vector_to_json(w.x_star);
  j["rates"] = vector_to_json(w.rates.k);
  j["epsilon"] = w.epsilon;
  j["eigenvalue"] = complex_to_json(w.eigenvalue);
  j["balance_residual"] = w.balance_residual;
  j["verified"] = w.verified;
  return j;
}

namespace {

std::string complex_to_text(const std::complex<double>& z) {
  std::string s = format_double(z.real());
  if (z.imag() != 0.0) {
    s += (z.imag() < 0 ? " - " : " + ") + format_double(std::abs(z.imag())) + "i";
  }
  return s;
}

void verdict_to_text(std::string& out, const std::string& label, const Verdict& v) {
  out += "  " + label + ": " + to_string(v.status) + " [" + to_string(v.method);
  if (!v.certified) out += ", not certified";
  out += "]\n";
  for (const std::string& c : v.clauses) out += "    - " + c + "\n";
  if (v.offending_eigenvalue)
    out += "    offending eigenvalue: " + complex_to_text(*v.offending_eigenvalue) + "\n";
}

}  // namespace

nlohmann::json verdict_to_json(const Verdict& v) {
  nlohmann::json j;
  j["notion"] = to_string(v.notion);
  j["status"] = to_string(v.status);
  j["method"] = to_string(v.method);
  j["certified"] = v.certified;
  if (v.subspace_dim) j["subspace_dim"] = *v.subspace_dim;
  if (v.diagonal_certificate) j["diagonal_certificate"] = vector_to_json(*v.diagonal_certificate);
  if (v.symmetric_certificate) j["symmetric_certificate"] = matrix_to_json(*v.symmetric_certificate);
  if (v.counterexample_d) j["counterexample_d"] = vector_to_json(*v.counterexample_d);
  if (v.offending_eigenvalue) j["offending_eigenvalue"] = complex_to_json(*v.offending_eigenvalue);
  if (!v.clauses.empty()) j["clauses"] = v.clauses;
  if (v.survived_samples >= 0) j["survived_samples"] = v.survived_samples;
  return j;
}

nlohmann::json report_to_json(const AnalysisReport& rep) {
  nlohmann::json j;
  j["network_class"] = to_string(rep.network_class);

  nlohmann::json s;
  s["species"] = rep.structure.species;
  s["vertices"] = rep.structure.vertices;
  s["edges"] = rep.structure.edges;
  s["dim_s"] = rep.structure.dim_s;
  s["dim_s_tilde"] = rep.structure.dim_s_tilde;
  s["weakly_reversible"] = rep.structure.weakly_reversible;
  s["cycle_count"] = rep.structure.cycle_count;
  j["structure"] = s;

  if (rep.uniqueness) {
    nlohmann::json u;
    u["unique"] = rep.uniqueness->unique;
    if (rep.uniqueness->witness) {
      const UniquenessWitness& w = *rep.uniqueness->witness;
      nlohmann::json wj;
      wj["u"] = vector_to_json(w.u);
      wj["v"] = vector_to_json(w.v);
      wj["x_star"] = vector_to_json(w.x_star);
      wj["rates"] = vector_to_json(w.rates.k);
      wj["jv_residual"] = w.jv_residual;
      u["witness"] = wj;
    }
    j["uniqueness"] = u;
  } else if (!rep.uniqueness_skipped_reason.empty()) {
    j["uniqueness"] = nlohmann::json{{"skipped", rep.uniqueness_skipped_reason}};
  }

  nlohmann::json cycles = nlohmann::json::array();
  for (const CycleFinding& f : rep.cycles) {
    nlohmann::json c;
    nlohmann::json verts = nlohmann::json::array();
    for (int v : f.cycle.vertices) verts.push_back(v);
    c["vertices"] = verts;
    c["dim_sc"] = f.dim_sc;
    c["a_c"] = matrix_to_json(f.a_c);
    c["verdict"] = verdict_to_json(f.verdict);
    if (f.witness) c["witness"] = witness_to_json(*f.witness);
    cycles.push_back(c);
  }
  j["cycles"] = cycles;

  if (rep.global) {
    nlohmann::json g;
    g["a"] = matrix_to_json(rep.global->a);
    g["dim_s"] = rep.global->s.dim();
    g["d_stable"] = verdict_to_json(rep.global->d_stable);
    g["diagonally_d_stable"] = verdict_to_json(rep.global->diagonally_d_stable);
    if (rep.global->witness) g["witness"] = witness_to_json(*rep.global->witness);
    j["global"] = g;
  }

  if (rep.classical) {
    nlohmann::json c;
    c["x_star"] = vector_to_json(rep.classical->x_star);
    c["d"] = vector_to_json(rep.classical->d);
    c["p"] = vector_to_json(rep.classical->p);
    c["definiteness"] = definiteness_name(rep.classical->definiteness);
    c["route_agreement"] = rep.classical->route_agreement;
    j["classical_certificate"] = c;
  }

  j["notes"] = rep.notes;
  return j;
}

std::string report_to_text(const AnalysisReport& rep) {
  std::string out;
  out += "network class: " + std::string(to_string(rep.network_class)) + "\n";
  out += "structure: " + std::to_string(rep.structure.species) + " species, " +
         std::to_string(rep.structure.vertices) + " vertices, " +
         std::to_string(rep.structure.edges) + " edges\n";
  out += "  dim S = " + std::to_string(rep.structure.dim_s) +
         ", dim S~ = " + std::to_string(rep.structure.dim_s_tilde) + "\n";
  out += std::string("  weakly reversible: ") +
         (rep.structure.weakly_reversible ? "yes" : "no") + "\n";
  if (rep.structure.cycle_count >= 0)
    out += "  cycles: " + std::to_string(rep.structure.cycle_count) + "\n";

  if (rep.uniqueness) {
    out += std::string("uniqueness: ") +
           (rep.uniqueness->unique ? "equilibria are unique in every positive stoichiometric class"
                                   : "multiple equilibria are possible") +
           "\n";
    if (rep.uniqueness->witness) {
      out += "  witness residual |J v| / (|J| |v|) = " +
             format_double(rep.uniqueness->witness->jv_residual) + "\n";
    }
  } else if (!rep.uniqueness_skipped_reason.empty()) {
    out += "uniqueness: skipped (" + rep.uniqueness_skipped_reason + ")\n";
  }

  if (!rep.cycles.empty()) {
    out += "cycle conditions (necessary for stability for all rate constants):\n";
    for (const CycleFinding& f : rep.cycles) {
      std::string verts;
      for (std::size_t i = 0; i < f.cycle.vertices.size(); ++i) {
        if (i) verts += "->";
        verts += std::to_string(f.cycle.vertices[i] + 1);
      }
      verdict_to_text(out, "cycle " + verts + " (dim " + std::to_string(f.dim_sc) + ")",
                      f.verdict);
      if (f.witness && f.witness->verified)
        out += "    witness: eps = " + format_double(f.witness->epsilon) +
               ", unstable eigenvalue " + complex_to_text(f.witness->eigenvalue) + "\n";
    }
  }

  if (rep.global) {
    out += "single-cycle characterization:\n";
    verdict_to_text(out, "D-stability of the limit matrix", rep.global->d_stable);
    verdict_to_text(out, "diagonal D-stability of the limit matrix",
                    rep.global->diagonally_d_stable);
    if (rep.global->witness && rep.global->witness->verified)
      out += "  witness: unstable eigenvalue " +
             complex_to_text(rep.global->witness->eigenvalue) + "\n";
  }

  if (rep.classical) {
    out += "classical certificate: " +
           std::string(definiteness_name(rep.classical->definiteness)) +
           " on S (route agreement " + format_double(rep.classical->route_agreement) + ")\n";
  }

  for (const std::string& n : rep.notes) out += "note: " + n + "\n";
  return out;
}

}  // namespace gmas
