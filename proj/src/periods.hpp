#pragma once

#include <Eigen/Dense>

#include <vector>

#include "geom.hpp"
#include "harmonic.hpp"

namespace propermap {

/// lambda_ij = -i F_i'(b_j) T(b_j), one marked point b_j per curve.
struct PeriodMatrix {
  Eigen::MatrixXd lambda;
  std::vector<BoundaryPoint> marked;
  double max_imaginary = 0.0;    // largest discarded imaginary part
  double column_sum_defect = 0.0;  // max_j |sum_i lambda_ij|
};

struct CoefficientVector {
  std::vector<double> a;  // a_n = 1
  double residual = 0.0;
};

/// Marked points must come one per curve, in curve order.
void check_marked_points(const Domain& d, const std::vector<BoundaryPoint>& b);

PeriodMatrix period_matrix(const Domain& d, const std::vector<FPrimeField>& fields,
                           const std::vector<BoundaryPoint>& b);

/// Sign and column-sum hypotheses on the reduced (n-1)x(n-1) system; throws
/// HypothesisViolation with the offending entry.
void check_lemma_hypotheses(const PeriodMatrix& p);

CoefficientVector solve_coefficients(const PeriodMatrix& p);

/// Same system solved by determinant ratios.
CoefficientVector cramer_coefficients(const PeriodMatrix& p);

/// Determinant by Gaussian elimination with partial pivoting.
double determinant(Eigen::MatrixXd m);

/// Reduced system: A_ij = lambda_ij (i, j < n), rhs_i = -lambda_in.
void reduced_system(const PeriodMatrix& p, Eigen::MatrixXd& a, Eigen::VectorXd& rhs);

}  // namespace propermap
