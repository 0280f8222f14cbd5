#pragma once

#include <string>

#include "gmas/analyzer.hpp"

#include "json.hpp"

namespace gmas {

// Stable JSON schema; top-level keys: network_class, structure, uniqueness,
// cycles, global, classical_certificate, notes. Certified and sampled
// conclusions are distinguished by the per-verdict "certified" flag.
nlohmann::json report_to_json(const AnalysisReport& report);

std::string report_to_text(const AnalysisReport& report);

nlohmann::json verdict_to_json(const Verdict& v);

nlohmann::json vector_to_json(const Eigen::VectorXd& v);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
nlohmann::json witness_to_json(const InstabilityWitness& w);

}  // namespace gmas
