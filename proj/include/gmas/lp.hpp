#pragma once

#include <Eigen/Dense>

namespace gmas::lp {

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Result {
  Status status = Status::infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

// Minimizes c^T x subject to A x = b, x >= 0 via a two-phase dense tableau
// simplex with Bland's rule. Intended for the small feasibility problems in
// this library (tens of rows and columns).
Result solve_standard(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                      const Eigen::VectorXd& b, int max_iterations = 20000);

}  // namespace gmas::lp
