#include "periods.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace propermap {

void check_marked_points(const Domain& d, const std::vector<BoundaryPoint>& b) {
  std::vector<bool> seen(static_cast<std::size_t>(d.curve_count()), false);
  for (const auto& p : b) {
    if (p.curve < 0 || p.curve >= d.curve_count())
      fail(ErrorCode::InvalidArgument, "marked point on nonexistent curve " + std::to_string(p.curve + 1));
    if (seen[static_cast<std::size_t>(p.curve)])
      fail(ErrorCode::InvalidArgument, "curve " + std::to_string(p.curve + 1) + " has more than one marked point");
    seen[static_cast<std::size_t>(p.curve)] = true;
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) fail(ErrorCode::InvalidArgument, "curve " + std::to_string(k + 1) + " has no marked point");
  for (std::size_t k = 0; k < b.size(); ++k)
    if (b[k].curve != static_cast<int>(k))
      fail(ErrorCode::InvalidArgument, "marked points must be listed in curve order");
}

PeriodMatrix period_matrix(const Domain& d, const std::vector<FPrimeField>& fields,
                           const std::vector<BoundaryPoint>& b) {
  check_marked_points(d, b);
  const int n = d.curve_count();
  if (static_cast<int>(fields.size()) != n) fail(ErrorCode::InvalidArgument, "need one F' field per curve");
  PeriodMatrix p;
  p.marked = b;
  p.lambda.resize(n, n);
  for (int j = 0; j < n; ++j) {
    const BoundaryPoint bj{j, wrap_parameter(b[static_cast<std::size_t>(j)].t)};
    const cplx tj = d.tangent(j, bj.t);
    for (int i = 0; i < n; ++i) {
      const cplx v = -kI * fields[static_cast<std::size_t>(i)].at(bj) * tj;
      p.lambda(i, j) = v.real();
      p.max_imaginary = std::max(p.max_imaginary, std::abs(v.imag()));
    }
  }
  const double scale = p.lambda.cwiseAbs().maxCoeff();
  if (p.max_imaginary > 1e-6 * std::max(scale, 1.0)) {
    std::ostringstream os;
    os << "period matrix entries have imaginary part " << p.max_imaginary;
    fail(ErrorCode::Numerical, os.str());
  }
  p.column_sum_defect = p.lambda.colwise().sum().cwiseAbs().maxCoeff();
  return p;
}

void reduced_system(const PeriodMatrix& p, Eigen::MatrixXd& a, Eigen::VectorXd& rhs) {
  const auto n = p.lambda.rows();
  a = p.lambda.topLeftCorner(n - 1, n - 1);
  rhs = -p.lambda.col(n - 1).head(n - 1);
}

void check_lemma_hypotheses(const PeriodMatrix& p) {
  const auto n = p.lambda.rows();
  if (n < 2) return;
  Eigen::MatrixXd a;
  Eigen::VectorXd rhs;
  reduced_system(p, a, rhs);
  auto violation = [](const std::string& what, Eigen::Index i, Eigen::Index j, double v) {
    std::ostringstream os;
    os << what << " at (" << i + 1 << ", " << j + 1 << "): " << v;
    fail(ErrorCode::HypothesisViolation, os.str());
  };
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j && !(a(i, j) < 0)) violation("off-diagonal period not negative", i, j, a(i, j));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double s = a.col(j).sum();
    if (!(s > 0)) violation("column sum not positive", j, j, s);
  }
  for (Eigen::Index i = 0; i < rhs.size(); ++i)
    if (!(rhs(i) > 0)) violation("right-hand side not positive", i, n - 1, rhs(i));
  const double scale = p.lambda.cwiseAbs().maxCoeff();
  if (p.column_sum_defect > 1e-6 * scale) {
    std::ostringstream os;
    os << "period columns do not sum to zero (defect " << p.column_sum_defect << ")";
    fail(ErrorCode::HypothesisViolation, os.str());
  }
}

namespace {

CoefficientVector finish(const PeriodMatrix& p, const Eigen::VectorXd& x) {
  const auto n = p.lambda.rows();
  CoefficientVector c;
  c.a.assign(x.data(), x.data() + x.size());
  c.a.push_back(1.0);
  if (n > 1) {
    Eigen::MatrixXd a;
    Eigen::VectorXd rhs;
    reduced_system(p, a, rhs);
    c.residual = (a * x - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff();
  }
  for (std::size_t j = 0; j < c.a.size(); ++j) {
    if (!(c.a[j] > 0)) {
      std::ostringstream os;
      os << "coefficient a_" << j + 1 << " = " << c.a[j] << " is not positive";
      fail(ErrorCode::HypothesisViolation, os.str());
    }
  }
  return c;
}

}  // namespace

CoefficientVector solve_coefficients(const PeriodMatrix& p) {
  const auto n = p.lambda.rows();
  if (n < 1) fail(ErrorCode::InvalidArgument, "empty period matrix");
  if (n == 1) return finish(p, Eigen::VectorXd());
  check_lemma_hypotheses(p);
  Eigen::MatrixXd a;
  Eigen::VectorXd rhs;
  reduced_system(p, a, rhs);
  const Eigen::VectorXd x = a.partialPivLu().solve(rhs);
  return finish(p, x);
}

double determinant(Eigen::MatrixXd m) {
  const auto n = m.rows();
  double det = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    for (Eigen::Index i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (m(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      m.row(k).swap(m.row(piv));
      det = -det;
    }
    det *= m(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      for (Eigen::Index j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

CoefficientVector cramer_coefficients(const PeriodMatrix& p) {
  const auto n = p.lambda.rows();
  if (n < 2) fail(ErrorCode::InvalidArgument, "Cramer coefficients need at least two curves");
  check_lemma_hypotheses(p);
  Eigen::MatrixXd a;
  Eigen::VectorXd rhs;
  reduced_system(p, a, rhs);
  const double det = determinant(a);
  if (det == 0.0) fail(ErrorCode::HypothesisViolation, "period system is singular");
  Eigen::VectorXd x(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    Eigen::MatrixXd aj = a;
    aj.col(j) = rhs;
    x(j) = determinant(aj) / det;
  }
  return finish(p, x);
}

}  // namespace propermap
