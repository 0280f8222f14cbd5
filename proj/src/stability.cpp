#include "gmas/stability.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "gmas/errors.hpp"
#include "gmas/minors.hpp"

namespace gmas {

const char* to_string(Notion n) {
  switch (n) {
    case Notion::stable: return "stable";
    case Notion::semistable: return "semistable";
    case Notion::d_stable: return "D-stable";
    case Notion::d_semistable: return "D-semistable";
    case Notion::diagonally_stable: return "diagonally stable";
    case Notion::diagonally_semistable: return "diagonally semistable";
    case Notion::diagonally_d_stable: return "diagonally D-stable";
    case Notion::diagonally_d_semistable: return "diagonally D-semistable";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::holds: return "holds";
    case Status::fails: return "fails";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::eigenvalue: return "eigenvalue";
    case Method::criterion_2x2: return "criterion_2x2";
    case Method::criterion_3x3: return "criterion_3x3";
    case Method::criterion_dim_s1: return "criterion_dim_s1";
    case Method::criterion_dim_s2: return "criterion_dim_s2";
    case Method::lyapunov_search: return "lyapunov_search";
    case Method::sampling_falsifier: return "sampling_falsifier";
  }
  return "?";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(const MatrixXd& a, const std::optional<Subspace>& s) {
  if (a.rows() != a.cols())
    throw DimensionError("stability queries require a square matrix");
  if (s) {
    if (s->ambient != a.rows())
      throw DimensionError("subspace ambient dimension does not match the matrix");
    double r = image_containment_residual(a, *s);
    if (r > kImageTol)
      throw PreconditionError("the image of the matrix is not contained in the subspace (residual " +
                              format_double(r) + ")");
  }
}

MatrixXd restricted(const MatrixXd& a, const std::optional<Subspace>& s) {
  if (!s) return a;
  return s->basis.transpose() * a * s->basis;
}

struct Spectrum {
  double max_re = -kInf;
  std::complex<double> arg{0.0, 0.0};
};

Spectrum spectrum_max(const MatrixXd& m) {
  Spectrum sp;
  if (m.rows() == 0) return sp;
  Eigen::EigenSolver<MatrixXd> es(m, /*computeEigenvectors=*/false);
  const auto& ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i].real() > sp.max_re) {
      sp.max_re = ev[i].real();
      sp.arg = ev[i];
    }
  }
  return sp;
}

// Solves M^T Q + Q M = -I by complex Schur back-substitution. Valid when
// every eigenvalue pair sum conj(l_i) + l_j is nonzero (in particular when
// M is Hurwitz).
MatrixXd solve_lyapunov(const MatrixXd& m) {
  using CMat = Eigen::MatrixXcd;
  const int k = static_cast<int>(m.rows());
  Eigen::ComplexSchur<CMat> schur(m.cast<std::complex<double>>());
  const CMat& t = schur.matrixT();
  const CMat& u = schur.matrixU();
  CMat y = CMat::Zero(k, k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i) {
      std::complex<double> rhs = (i == j) ? -1.0 : 0.0;
      for (int p = 0; p < i; ++p) rhs -= std::conj(t(p, i)) * y(p, j);
      for (int p = 0; p < j; ++p) rhs -= y(i, p) * t(p, j);
      std::complex<double> den = std::conj(t(i, i)) + t(j, j);
      if (std::abs(den) == 0.0)
        throw NumericalError("singular Lyapunov equation");
      y(i, j) = rhs / den;
    }
  }
  MatrixXd q = (u * y * u.adjoint()).real();
  return 0.5 * (q + q.transpose());
}

std::string ordinal(int i) { return std::to_string(i + 1); }

std::string minor_name(const std::vector<int>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i] + 1);
  }
  return s + "}";
}

struct CritEval {
  bool pass = false;
  std::vector<std::string> clauses;
};

// Checks that -A is a P-matrix: (-1)^|I| det A[I] > 0 for every principal
// index set I. Records the first violation.
CritEval p_matrix_eval(const MatrixXd& a, double tol) {
  CritEval r;
  for (const SignedMinor& sm : signed_principal_minors(a, tol)) {
    if (sm.value <= sm.zero_tol) {
      r.clauses.push_back("signed principal minor on " + minor_name(sm.index_set) +
                          " = " + format_double(sm.value) + " is not positive");
      return r;
    }
  }
  r.pass = true;
  r.clauses.push_back("every signed principal minor is positive");
  return r;
}

// Checks that -A is in P0+: all signed minors nonnegative and each order
// 1..n has a strictly positive one.
CritEval p0plus_eval(const MatrixXd& a, double tol) {
  CritEval r;
  const int n = static_cast<int>(a.rows());
  std::vector<char> has_positive(static_cast<std::size_t>(n) + 1, 0);
  for (const SignedMinor& sm : signed_principal_minors(a, tol)) {
    if (sm.value < -sm.zero_tol) {
      r.clauses.push_back("signed principal minor on " + minor_name(sm.index_set) +
                          " = " + format_double(sm.value) + " is negative");
      return r;
    }
    if (sm.value > sm.zero_tol) has_positive[sm.index_set.size()] = 1;
  }
  for (int k = 1; k <= n; ++k) {
    if (!has_positive[static_cast<std::size_t>(k)]) {
      r.clauses.push_back("no strictly positive signed principal minor of order " +
                          std::to_string(k));
      return r;
    }
  }
  r.pass = true;
  r.clauses.push_back("all signed principal minors nonnegative with a positive one in each order");
  return r;
}

double plain_minor2(const MatrixXd& a, int i, int j) {
  return a(i, i) * a(j, j) - a(i, j) * a(j, i);
}

// Strict 3x3 D-stability: -A in P0+ and
// (sqrt(-a11 M23) + sqrt(-a22 M13) + sqrt(-a33 M12))^2 >= -det A,
// where equality requires one product with exactly one vanishing factor.
CritEval d_stable_crit_3x3(const MatrixXd& a, double tol) {
  CritEval r = p0plus_eval(a, tol);
  if (!r.pass) return r;
  r.pass = false;

  const double es = std::max(entry_scale(a), 1e-300);
  const double m12 = plain_minor2(a, 0, 1);
  const double m13 = plain_minor2(a, 0, 2);
  const double m23 = plain_minor2(a, 1, 2);
  const double p1 = std::max(0.0, -a(0, 0) * m23);
  const double p2 = std::max(0.0, -a(1, 1) * m13);
  const double p3 = std::max(0.0, -a(2, 2) * m12);
  const double t = std::pow(std::sqrt(p1) + std::sqrt(p2) + std::sqrt(p3), 2);
  const double q = -a.determinant();
  const double band = tol * std::max({t, std::abs(q), es * es * es});

  r.clauses.push_back("domination sum " + format_double(t) + " vs -det A = " + format_double(q));
  if (t > q + band) {
    r.pass = true;
    return r;
  }
  if (t + band < q) {
    r.clauses.push_back("domination inequality fails");
    return r;
  }
  // Boundary case: allowed only when some product -a_ii * M_jk has exactly
  // one zero factor.
  auto near0 = [&](double v, double sc) { return std::abs(v) <= tol * sc; };
  const double diag_scale = es;
  const double minor_scale = es * es;
  const bool pair_ok =
      (near0(-a(0, 0), diag_scale) != near0(m23, minor_scale)) ||
      (near0(-a(1, 1), diag_scale) != near0(m13, minor_scale)) ||
      (near0(-a(2, 2), diag_scale) != near0(m12, minor_scale));
  if (pair_ok) {
    r.pass = true;
    r.clauses.push_back("boundary equality with a product having exactly one zero factor");
  } else {
    r.clauses.push_back("boundary equality without a product having exactly one zero factor");
  }
  return r;
}

// Open interval {y : alpha y^2 + beta y + gamma < 0} with alpha >= 0.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
};

Interval negative_interval(double alpha, double beta, double gamma) {
  Interval out;
  if (alpha == 0.0) {
    if (beta == 0.0) {
      if (gamma < 0.0) out = {-kInf, kInf, false};
      return out;
    }
    const double root = -gamma / beta;
    out.empty = false;
    if (beta > 0.0) {
      out.lo = -kInf;
      out.hi = root;
    } else {
      out.lo = root;
      out.hi = kInf;
    }
    return out;
  }
  const double disc = beta * beta - 4.0 * alpha * gamma;
  if (disc <= 0.0) return out;
  const double sq = std::sqrt(disc);
  const double qq = -0.5 * (beta + (beta >= 0.0 ? sq : -sq));
  double r1 = qq / alpha;
  double r2 = (qq != 0.0) ? gamma / qq : 0.0;
  if (r1 > r2) std::swap(r1, r2);
  out = {r1, r2, false};
  return out;
}

Interval intersect(const Interval& x, const Interval& y) {
  if (x.empty || y.empty) return {};
  Interval out{std::max(x.lo, y.lo), std::min(x.hi, y.hi), false};
  if (!(out.lo + 1e-12 * std::max(1.0, std::abs(out.lo)) < out.hi)) return {};
  return out;
}

// Strict 3x3 diagonal stability: -A a P-matrix and a common y > 0 making
// both reduced quadratics negative:
//   (a13 y + a31)^2 < 4 a11 a33 y
//   (b1 y + b2)^2 < 4 M12 M23 y, b1 = a12 a23 - a22 a13, b2 = a21 a32 - a22 a31.
CritEval diag_stable_crit_3x3(const MatrixXd& a, double tol) {
  CritEval r = p_matrix_eval(a, tol);
  if (!r.pass) return r;
  r.pass = false;

  const double b1 = a(0, 1) * a(1, 2) - a(1, 1) * a(0, 2);
  const double b2 = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  const double m12 = plain_minor2(a, 0, 1);
  const double m23 = plain_minor2(a, 1, 2);

  Interval i1 = negative_interval(a(0, 2) * a(0, 2),
                                  2.0 * a(0, 2) * a(2, 0) - 4.0 * a(0, 0) * a(2, 2),
                                  a(2, 0) * a(2, 0));
  Interval i2 = negative_interval(b1 * b1, 2.0 * b1 * b2 - 4.0 * m12 * m23, b2 * b2);
  Interval pos{0.0, kInf, false};
  Interval j = intersect(intersect(i1, i2), pos);
  if (j.empty) {
    r.clauses.push_back("the two quadratic conditions admit no common y > 0");
    return r;
  }
  double y;
  if (j.hi == kInf)
    y = std::isfinite(j.lo) ? std::max(j.lo, 0.0) + 1.0 : 1.0;
  else
    y = 0.5 * (j.lo + j.hi);
  r.pass = true;
  r.clauses.push_back("common parameter y = " + format_double(y) +
                      " satisfies both quadratic conditions");
  return r;
}

// dim S == 1 criterion on the ambient matrix: all diagonal entries
// nonpositive; the strict version also needs a negative one.
CritEval dim1_crit(const MatrixXd& a, bool strict, double tol) {
  CritEval r;
  const double te = tol * entry_scale(a);
  bool some_negative = false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (a(i, i) > te) {
      r.clauses.push_back("diagonal entry a_" + ordinal(static_cast<int>(i)) +
                          ordinal(static_cast<int>(i)) + " = " + format_double(a(i, i)) +
                          " is positive");
      return r;
    }
    if (a(i, i) < -te) some_negative = true;
  }
  if (strict && !some_negative) {
    r.clauses.push_back("no strictly negative diagonal entry");
    return r;
  }
  r.pass = true;
  r.clauses.push_back(strict ? "all diagonal entries nonpositive with a negative one"
                             : "all diagonal entries nonpositive");
  return r;
}

// dim S == 2 criterion on the ambient matrix. Strict: diagonal entries
// nonpositive with a negative one, and all 2x2 principal minors nonnegative
// with a positive one. The semistable variant drops both strictness
// requirements; it follows from the strict criterion by continuity and is
// flagged as derived.
CritEval dim2_crit(const MatrixXd& a, bool strict, double tol) {
  CritEval r;
  const int n = static_cast<int>(a.rows());
  const double es = std::max(entry_scale(a), 1e-300);
  const double te = tol * es;
  const double tm = tol * es * es;
  bool some_neg_diag = false, some_pos_minor = false;
  for (int i = 0; i < n; ++i) {
    if (a(i, i) > te) {
      r.clauses.push_back("diagonal entry a_" + ordinal(i) + ordinal(i) + " = " +
                          format_double(a(i, i)) + " is positive");
      return r;
    }
    if (a(i, i) < -te) some_neg_diag = true;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double m = plain_minor2(a, i, j);
      if (m < -tm) {
        r.clauses.push_back("principal minor M_" + ordinal(i) + ordinal(j) + " = " +
                            format_double(m) + " is negative");
        return r;
      }
      if (m > tm) some_pos_minor = true;
    }
  }
  if (strict) {
    if (!some_neg_diag) {
      r.clauses.push_back("no strictly negative diagonal entry");
      return r;
    }
    if (!some_pos_minor) {
      r.clauses.push_back("no strictly positive 2x2 principal minor");
      return r;
    }
    r.clauses.push_back("diagonal entries nonpositive with a negative one; 2x2 principal minors nonnegative with a positive one");
  } else {
    r.clauses.push_back("diagonal entries nonpositive and 2x2 principal minors nonnegative");
    r.clauses.push_back("semistable variant derived from the strict criterion by a continuity argument");
  }
  r.pass = true;
  return r;
}

// Explicit diagonal certificate for a strictly diagonally stable 2x2 matrix
// (-A a P-matrix): P = diag(1, p) maximizing det(PA + A^T P).
std::optional<VectorXd> diag_certificate_2x2(const MatrixXd& a, double zero_tol) {
  double p;
  if (a(1, 0) == 0.0) {
    p = a(0, 1) * a(0, 1) / (4.0 * a(0, 0) * a(1, 1)) + 1.0;
  } else {
    p = (4.0 * a(0, 0) * a(1, 1) - 2.0 * a(0, 1) * a(1, 0)) / (2.0 * a(1, 0) * a(1, 0));
  }
  if (!(p > 0.0) || !std::isfinite(p)) return std::nullopt;
  VectorXd pv(2);
  pv << 1.0, p;
  MatrixXd h = pv.asDiagonal() * a;
  h = MatrixXd(h + h.transpose());
  if (definiteness_on(h, full_space(2), zero_tol) != Definiteness::negative_definite)
    return std::nullopt;
  return pv;
}

double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// Multi-start projected descent in log coordinates for a positive diagonal
// P with P A + A^T P negative (semi)definite on S. Any returned P has been
// verified against definiteness_on.
std::optional<VectorXd> search_diag_certificate(const MatrixXd& a,
                                                const std::optional<Subspace>& s,
                                                bool semi,
                                                const StabilityOptions& opts) {
  const int n = static_cast<int>(a.rows());
  const Subspace ss = s ? *s : full_space(n);
  const int m = ss.dim();
  if (m == 0) return VectorXd::Ones(n);

  auto hfull = [&](const VectorXd& p) {
    MatrixXd h = p.asDiagonal() * a;
    return MatrixXd(h + h.transpose());
  };
  auto verified = [&](const VectorXd& p) {
    Definiteness d = definiteness_on(hfull(p), ss, opts.zero_tol);
    return semi ? d != Definiteness::indefinite_or_positive
                : d == Definiteness::negative_definite;
  };
  auto eval = [&](const VectorXd& p, VectorXd* grad) {
    MatrixXd hr = ss.basis.transpose() * hfull(p) * ss.basis;
    if (grad) {
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(hr);
      const double lam = es.eigenvalues()(m - 1);
      VectorXd u = ss.basis * es.eigenvectors().col(m - 1);
      *grad = 2.0 * u.cwiseProduct(a * u);
      return lam;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(hr, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(m - 1);
  };

  for (int start = 0; start < opts.search_starts; ++start) {
    VectorXd theta = VectorXd::Zero(n);
    if (start > 0) {
      std::uint64_t state = mix_seed(opts.seed ^ 0xD1A60000ull, static_cast<std::uint64_t>(start));
      for (int i = 0; i < n; ++i)
        theta[i] = std::log(10.0) * (-2.0 + 4.0 * uniform01(state));
    }
    VectorXd p = theta.array().exp();
    p /= p.maxCoeff();
    VectorXd g;
    double f = eval(p, &g);
    double eta = 0.25;
    for (int iter = 0; iter < opts.search_iterations; ++iter) {
      const double target = (semi ? 1.0 : -1.0) * opts.zero_tol * hfull(p).norm();
      if ((semi ? f <= target : f < target) && verified(p)) return p;
      VectorXd gt = p.cwiseProduct(g);
      const double gn = gt.cwiseAbs().maxCoeff();
      if (gn == 0.0) break;
      VectorXd theta_next = theta - (eta / gn) * gt;
      VectorXd p_next = theta_next.array().exp();
      p_next /= p_next.maxCoeff();
      VectorXd g_next;
      const double f_next = eval(p_next, &g_next);
      if (f_next < f) {
        theta = theta_next;
        p = p_next;
        f = f_next;
        g = g_next;
        eta = std::min(eta * 1.4, 4.0);
      } else {
        eta *= 0.5;
        if (eta < 1e-7) break;
      }
    }
    if (verified(p)) return p;
  }
  return std::nullopt;
}

struct FalsifierHit {
  VectorXd d;
  std::complex<double> eig;
};

std::optional<std::complex<double>> certified_unstable(const MatrixXd& a,
                                                       const std::optional<Subspace>& s,
                                                       const VectorXd& d,
                                                       double zero_tol) {
  MatrixXd m = restricted(a * d.asDiagonal(), s);
  Spectrum sp = spectrum_max(m);
  if (sp.max_re > zero_tol * m.norm()) return sp.arg;
  return std::nullopt;
}

std::optional<FalsifierHit> run_falsifier(const MatrixXd& a,
                                          const std::optional<Subspace>& s,
                                          const StabilityOptions& opts) {
  const int n = static_cast<int>(a.rows());
  VectorXd ones = VectorXd::Ones(n);
  if (auto e = certified_unstable(a, s, ones, opts.zero_tol)) return FalsifierHit{ones, *e};
  for (int i = 0; i < opts.sample_count; ++i) {
    VectorXd d = sample_diagonal(n, opts.seed, static_cast<std::uint64_t>(i));
    if (auto e = certified_unstable(a, s, d, opts.zero_tol)) return FalsifierHit{d, *e};
  }
  return std::nullopt;
}

void finish(Verdict& v) { v.certified = v.status != Status::inconclusive; }

void apply_crit(Verdict& v, const CritEval& c) {
  v.status = c.pass ? Status::holds : Status::fails;
  v.clauses.insert(v.clauses.end(), c.clauses.begin(), c.clauses.end());
}

}  // namespace

Eigen::VectorXd sample_diagonal(int n, std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = mix_seed(seed, index);
  VectorXd d(n);
  for (int i = 0; i < n; ++i) d[i] = std::pow(10.0, -3.0 + 6.0 * uniform01(state));
  return d;
}

Verdict is_stable(const MatrixXd& a, const std::optional<Subspace>& s, double zero_tol) {
  check_inputs(a, s);
  Verdict v;
  v.notion = Notion::stable;
  v.method = Method::eigenvalue;
  if (s) v.subspace_dim = s->dim();
  MatrixXd m = restricted(a, s);
  if (m.rows() == 0) {
    v.status = Status::holds;
    v.clauses.push_back("trivial subspace");
    finish(v);
    return v;
  }
  Spectrum sp = spectrum_max(m);
  const double bar = zero_tol * m.norm();
  v.status = sp.max_re < -bar ? Status::holds : Status::fails;
  if (v.status == Status::fails) v.offending_eigenvalue = sp.arg;
  v.clauses.push_back("largest restricted eigenvalue real part " + format_double(sp.max_re));
  finish(v);
  return v;
}

Verdict is_semistable(const MatrixXd& a, const std::optional<Subspace>& s, double zero_tol) {
  check_inputs(a, s);
  Verdict v;
  v.notion = Notion::semistable;
  v.method = Method::eigenvalue;
  if (s) v.subspace_dim = s->dim();
  MatrixXd m = restricted(a, s);
  if (m.rows() == 0) {
    v.status = Status::holds;
    v.clauses.push_back("trivial subspace");
    finish(v);
    return v;
  }
  Spectrum sp = spectrum_max(m);
  const double bar = zero_tol * m.norm();
  v.status = sp.max_re <= bar ? Status::holds : Status::fails;
  if (v.status == Status::fails) v.offending_eigenvalue = sp.arg;
  v.clauses.push_back("largest restricted eigenvalue real part " + format_double(sp.max_re));
  finish(v);
  return v;
}

std::optional<MatrixXd> lyapunov_certificate(const MatrixXd& a,
                                             const std::optional<Subspace>& s,
                                             bool strict) {
  check_inputs(a, s);
  const int n = static_cast<int>(a.rows());
  const Subspace ss = s ? *s : full_space(n);
  MatrixXd m = restricted(a, s);
  if (m.rows() == 0) return MatrixXd::Identity(n, n);

  Spectrum sp = spectrum_max(m);
  if (sp.max_re < -kRelZeroTol * m.norm()) {
    MatrixXd q = solve_lyapunov(m);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(q, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) > 0.0) {
      MatrixXd p = s ? MatrixXd(ss.basis * q * ss.basis.transpose()) : q;
      p = 0.5 * (p + p.transpose());
      MatrixXd h = p * a + a.transpose() * p;
      if (definiteness_on(h, ss) == Definiteness::negative_definite) return p;
    }
  }
  if (!strict) {
    MatrixXd h0 = a + a.transpose();
    if (definiteness_on(h0, ss) != Definiteness::indefinite_or_positive) {
      MatrixXd p = s ? MatrixXd(ss.basis * ss.basis.transpose()) : MatrixXd::Identity(n, n);
      return p;
    }
  }
  return std::nullopt;
}

std::optional<VectorXd> find_destabilizing_diagonal(const MatrixXd& a,
                                                    const std::optional<Subspace>& s,
                                                    const StabilityOptions& opts) {
  check_inputs(a, s);
  const int n = static_cast<int>(a.rows());
  if (restricted(a, s).rows() == 0) return std::nullopt;

  auto margin = [&](const VectorXd& d) {
    MatrixXd m = restricted(a * d.asDiagonal(), s);
    Spectrum sp = spectrum_max(m);
    return sp.max_re - opts.zero_tol * m.norm();
  };

  VectorXd best = VectorXd::Ones(n);
  double best_margin = margin(best);
  for (int i = 0; i < opts.sample_count; ++i) {
    VectorXd d = sample_diagonal(n, opts.seed, static_cast<std::uint64_t>(i));
    const double g = margin(d);
    if (g > best_margin) {
      best_margin = g;
      best = d;
      if (g > 0.0) break;
    }
  }
  // Multiplicative coordinate ascent on the stability margin.
  const double factors[] = {8.0, 4.0, 2.0, 1.5, 1.2, 1.05};
  for (int pass = 0; pass < 256 && best_margin <= 0.0; ++pass) {
    bool improved = false;
    for (int i = 0; i < n; ++i) {
      for (double f : factors) {
        for (double scale : {f, 1.0 / f}) {
          VectorXd d = best;
          d[i] = std::clamp(d[i] * scale, 1e-8, 1e8);
          const double g = margin(d);
          if (g > best_margin) {
            best_margin = g;
            best = d;
            improved = true;
          }
        }
      }
    }
    if (!improved) break;
  }
  if (best_margin > 0.0) return best;
  return std::nullopt;
}

Verdict is_d_stable(const MatrixXd& a, const std::optional<Subspace>& s,
                    const StabilityOptions& opts) {
  check_inputs(a, s);
  Verdict v;
  v.notion = Notion::d_stable;
  if (s) v.subspace_dim = s->dim();
  const int n = static_cast<int>(a.rows());
  const bool full = !s || s->dim() == n;
  const int dim = s ? s->dim() : n;

  if (dim == 0) {
    v.status = Status::holds;
    v.method = Method::eigenvalue;
    v.clauses.push_back("trivial subspace");
    finish(v);
    return v;
  }

  if (dim == 1) {
    v.method = Method::criterion_dim_s1;
    apply_crit(v, dim1_crit(a, /*strict=*/true, opts.zero_tol));
  } else if (dim == 2 && !full) {
    v.method = Method::criterion_dim_s2;
    apply_crit(v, dim2_crit(a, /*strict=*/true, opts.zero_tol));
  } else if (full && n == 2) {
    v.method = Method::criterion_2x2;
    apply_crit(v, p0plus_eval(a, opts.zero_tol));
  } else if (full && n == 3) {
    v.method = Method::criterion_3x3;
    apply_crit(v, d_stable_crit_3x3(a, opts.zero_tol));
  } else {
    v.method = Method::sampling_falsifier;
    CritEval screen;
    screen.pass = true;
    if (full && n <= kMinorEnumerationCap) screen = p0plus_eval(a, opts.zero_tol);
    if (!screen.pass) {
      v.status = Status::fails;
      v.clauses = screen.clauses;
    } else if (auto hit = run_falsifier(a, s, opts)) {
      v.status = Status::fails;
      v.counterexample_d = hit->d;
      v.offending_eigenvalue = hit->eig;
      v.clauses.push_back("sampled diagonal destabilizes the matrix");
    } else {
      v.status = Status::inconclusive;
      v.survived_samples = opts.sample_count;
      v.clauses.push_back("no destabilizing diagonal found by sampling");
    }
  }

  if (v.status == Status::fails && !v.counterexample_d) {
    if (auto d = find_destabilizing_diagonal(a, s, opts)) {
      v.counterexample_d = d;
      if (auto e = certified_unstable(a, s, *d, opts.zero_tol)) v.offending_eigenvalue = e;
    }
  }
  finish(v);
  return v;
}

Verdict is_d_semistable(const MatrixXd& a, const std::optional<Subspace>& s,
                        const StabilityOptions& opts) {
  check_inputs(a, s);
  Verdict v;
  v.notion = Notion::d_semistable;
  if (s) v.subspace_dim = s->dim();
  const int n = static_cast<int>(a.rows());
  const int dim = s ? s->dim() : n;

  if (dim == 0) {
    v.status = Status::holds;
    v.method = Method::eigenvalue;
    v.clauses.push_back("trivial subspace");
    finish(v);
    return v;
  }

  const bool full = !s || s->dim() == n;
  if (dim == 1) {
    v.method = Method::criterion_dim_s1;
    apply_crit(v, dim1_crit(a, /*strict=*/false, opts.zero_tol));
  } else if (dim == 2) {
    v.method = Method::criterion_dim_s2;
    apply_crit(v, dim2_crit(a, /*strict=*/false, opts.zero_tol));
  } else if (full && n == 3 && d_stable_crit_3x3(a, opts.zero_tol).pass) {
    // Strict D-stability implies D-semistability.
    v.method = Method::criterion_3x3;
    v.status = Status::holds;
    v.clauses.push_back("the strict D-stability criterion holds");
  } else {
    v.method = Method::sampling_falsifier;
    if (auto hit = run_falsifier(a, s, opts)) {
      v.status = Status::fails;
      v.counterexample_d = hit->d;
      v.offending_eigenvalue = hit->eig;
      v.clauses.push_back("sampled diagonal destabilizes the matrix");
    } else {
      v.status = Status::inconclusive;
      v.survived_samples = opts.sample_count;
      v.clauses.push_back("no destabilizing diagonal found by sampling");
    }
  }

  if (v.status == Status::fails && !v.counterexample_d) {
    if (auto d = find_destabilizing_diagonal(a, s, opts)) {
      v.counterexample_d = d;
      if (auto e = certified_unstable(a, s, *d, opts.zero_tol)) v.offending_eigenvalue = e;
    }
  }
  finish(v);
  return v;
}

Verdict is_diagonally_stable(const MatrixXd& a, const std::optional<Subspace>& s,
                             const StabilityOptions& opts) {
  check_inputs(a, s);
  Verdict v;
  v.notion = Notion::diagonally_stable;
  if (s) v.subspace_dim = s->dim();
  const int n = static_cast<int>(a.rows());
  const bool full = !s || s->dim() == n;
  const int dim = s ? s->dim() : n;

  if (dim == 0) {
    v.status = Status::holds;
    v.method = Method::eigenvalue;
    v.diagonal_certificate = VectorXd::Ones(n);
    v.clauses.push_back("trivial subspace");
    finish(v);
    return v;
  }

  // Diagonal stability implies stability on S, so a certified unstable
  // restriction refutes it outright.
  MatrixXd m = restricted(a, s);
  Spectrum sp = spectrum_max(m);
  if (sp.max_re > opts.zero_tol * m.norm()) {
    v.status = Status::fails;
    v.method = Method::eigenvalue;
    v.offending_eigenvalue = sp.arg;
    v.clauses.push_back("the matrix itself is unstable on the subspace");
    finish(v);
    return v;
  }

  if (full && n == 1) {
    v.method = Method::eigenvalue;
    if (a(0, 0) < -opts.zero_tol * std::abs(a(0, 0))) {
      v.status = Status::holds;
      v.diagonal_certificate = VectorXd::Ones(1);
      v.clauses.push_back("negative scalar");
    } else {
      v.status = Status::fails;
      v.clauses.push_back("2 p a_11 cannot be negative for a_11 >= 0");
    }
    finish(v);
    return v;
  }
  if (full && n == 2) {
    v.method = Method::criterion_2x2;
    apply_crit(v, p_matrix_eval(a, opts.zero_tol));
    if (v.status == Status::holds) v.diagonal_certificate = diag_certificate_2x2(a, opts.zero_tol);
    if (v.status == Status::holds && !v.diagonal_certificate)
      v.diagonal_certificate = search_diag_certificate(a, s, false, opts);
    finish(v);
    return v;
  }
  if (full && n == 3) {
    v.method = Method::criterion_3x3;
    apply_crit(v, diag_stable_crit_3x3(a, opts.zero_tol));
    if (v.status == Status::holds)
      v.diagonal_certificate = search_diag_certificate(a, s, false, opts);
    finish(v);
    return v;
  }

  v.method = Method::lyapunov_search;
  if (full && n <= kMinorEnumerationCap) {
    CritEval pm = p_matrix_eval(a, opts.zero_tol);
    if (!pm.pass) {
      v.status = Status::fails;
      v.clauses = pm.clauses;
      v.clauses.push_back("the P-matrix property is necessary for diagonal stability");
      finish(v);
      return v;
    }
  }
  if (auto p = search_diag_certificate(a, s, false, opts)) {
    v.status = Status::holds;
    v.diagonal_certificate = p;
    v.clauses.push_back("verified diagonal Lyapunov certificate found by search");
  } else {
    v.status = Status::inconclusive;
    v.clauses.push_back("certificate search was fruitless");
  }
  finish(v);
  return v;
}

Verdict is_diagonally_semistable(const MatrixXd& a, const std::optional<Subspace>& s,
                                 const StabilityOptions& opts) {
  check_inputs(a, s);
  Verdict v;
  v.notion = Notion::diagonally_semistable;
  if (s) v.subspace_dim = s->dim();
  const int n = static_cast<int>(a.rows());
  const bool full = !s || s->dim() == n;
  const int dim = s ? s->dim() : n;

  if (dim == 0) {
    v.status = Status::holds;
    v.method = Method::eigenvalue;
    v.diagonal_certificate = VectorXd::Ones(n);
    v.clauses.push_back("trivial subspace");
    finish(v);
    return v;
  }

  MatrixXd m = restricted(a, s);
  Spectrum sp = spectrum_max(m);
  if (sp.max_re > opts.zero_tol * m.norm()) {
    v.status = Status::fails;
    v.method = Method::eigenvalue;
    v.offending_eigenvalue = sp.arg;
    v.clauses.push_back("the matrix itself is not semistable on the subspace");
    finish(v);
    return v;
  }

  if (full && n == 1) {
    v.status = Status::holds;
    v.method = Method::eigenvalue;
    v.diagonal_certificate = VectorXd::Ones(1);
    v.clauses.push_back("nonpositive scalar");
    finish(v);
    return v;
  }

  v.method = Method::lyapunov_search;
  if (full) {
    const double te = opts.zero_tol * entry_scale(a);
    for (int i = 0; i < n; ++i) {
      if (a(i, i) > te) {
        v.status = Status::fails;
        v.clauses.push_back("diagonal entry a_" + ordinal(i) + ordinal(i) + " = " +
                            format_double(a(i, i)) +
                            " makes (P A + A^T P)_" + ordinal(i) + ordinal(i) +
                            " positive for every positive diagonal P");
        finish(v);
        return v;
      }
    }
  }
  if (auto p = search_diag_certificate(a, s, true, opts)) {
    v.status = Status::holds;
    v.diagonal_certificate = p;
    v.clauses.push_back("verified diagonal Lyapunov certificate found by search");
  } else {
    v.status = Status::inconclusive;
    v.clauses.push_back("certificate search was fruitless");
  }
  finish(v);
  return v;
}

Verdict is_diagonally_d_stable_on(const MatrixXd& a, const Subspace& s, bool semi,
                                  const StabilityOptions& opts) {
  check_inputs(a, s);
  const int n = static_cast<int>(a.rows());
  const Notion notion = semi ? Notion::diagonally_d_semistable : Notion::diagonally_d_stable;

  if (s.dim() == n) {
    Verdict v = semi ? is_diagonally_semistable(a, std::nullopt, opts)
                     : is_diagonally_stable(a, std::nullopt, opts);
    v.notion = notion;
    v.subspace_dim = n;
    v.clauses.push_back("full space: coincides with diagonal " +
                        std::string(semi ? "semistability" : "stability"));
    return v;
  }

  Verdict v;
  v.notion = notion;
  v.subspace_dim = s.dim();
  if (s.dim() == 0) {
    v.status = Status::holds;
    v.method = Method::eigenvalue;
    v.clauses.push_back("trivial subspace");
    finish(v);
    return v;
  }

  v.method = Method::sampling_falsifier;
  StabilityOptions inner = opts;
  inner.search_starts = std::min(opts.search_starts, 12);
  inner.search_iterations = std::min(opts.search_iterations, 200);

  int certified_count = 0;
  std::optional<Subspace> os = s;
  for (int j = -1; j < opts.sweep_count; ++j) {
    VectorXd d = j < 0 ? VectorXd(VectorXd::Ones(n))
                       : sample_diagonal(n, opts.seed, static_cast<std::uint64_t>(j));
    MatrixXd ad = a * d.asDiagonal();
    // A certified unstable (resp. not semistable) restriction refutes any
    // diagonal certificate for this D.
    MatrixXd m = restricted(ad, os);
    Spectrum sp = spectrum_max(m);
    if (sp.max_re > opts.zero_tol * m.norm()) {
      v.status = Status::fails;
      v.counterexample_d = d;
      v.offending_eigenvalue = sp.arg;
      v.clauses.push_back("sampled diagonal admits no Lyapunov certificate: the scaled matrix is unstable on the subspace");
      finish(v);
      return v;
    }
    if (search_diag_certificate(ad, os, semi, inner)) ++certified_count;
  }

  v.status = Status::inconclusive;
  v.survived_samples = opts.sweep_count;
  v.clauses.push_back("certificates found for " + std::to_string(certified_count) + " of " +
                      std::to_string(opts.sweep_count + 1) + " sampled diagonals; no certified failure");
  finish(v);
  return v;
}

std::vector<Verdict> notion_lattice_check(const MatrixXd& a,
                                          const std::optional<Subspace>& s,
                                          const StabilityOptions& opts) {
  check_inputs(a, s);
  const int n = static_cast<int>(a.rows());
  const Subspace ss = s ? *s : full_space(n);
  const bool full = ss.dim() == n;

  std::vector<Verdict> v;
  v.push_back(is_stable(a, s, opts.zero_tol));
  v.push_back(is_semistable(a, s, opts.zero_tol));
  v.push_back(is_d_stable(a, s, opts));
  v.push_back(is_d_semistable(a, s, opts));
  v.push_back(is_diagonally_stable(a, s, opts));
  v.push_back(is_diagonally_semistable(a, s, opts));
  v.push_back(is_diagonally_d_stable_on(a, ss, false, opts));
  v.push_back(is_diagonally_d_stable_on(a, ss, true, opts));

  std::vector<std::pair<int, int>> implications = {
      {0, 1}, {2, 0}, {2, 3}, {3, 1}, {4, 0}, {4, 5},
      {5, 1}, {6, 2}, {6, 4}, {6, 7}, {7, 3}, {7, 5},
  };
  if (full) {
    implications.push_back({4, 2});
    implications.push_back({5, 3});
  }
  for (auto [from, to] : implications) {
    if (v[static_cast<std::size_t>(from)].status == Status::holds &&
        v[static_cast<std::size_t>(to)].status == Status::fails)
      throw std::logic_error(std::string("stability lattice violation: ") +
                             to_string(v[static_cast<std::size_t>(from)].notion) +
                             " holds but " + to_string(v[static_cast<std::size_t>(to)].notion) +
                             " fails");
  }
  return v;
}

}  // namespace gmas
