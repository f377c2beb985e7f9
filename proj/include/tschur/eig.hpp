#pragma once

#include <algorithm>
#include <numeric>
#include <utility>

#include "tschur/cmatrix.hpp"

namespace tschur {

// Hermiticity gate shared by eig_hermitian and psd_check: the defect must
// stay below 1e-8 * max(1, ||a||_F) or positivity is meaningless.
inline constexpr double kHermiticityRtol = 1e-8;

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // orthonormal columns, column k <-> eigenvalues[k]
};

// Positivity verdict for a Hermitian matrix.
// is_psd holds exactly when min_eigenvalue >= -tolerance_used.
struct PsdReport {
  bool is_psd;
  double min_eigenvalue;
  double max_eigenvalue;
  double tolerance_used;      // absolute: rtol*||a||_F + atol
  double hermiticity_defect;  // ||a - a*||_F of the input
};

namespace detail {

inline double offdiag_frobenius(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// One complex Jacobi rotation in the (p, q) plane. The unitary is
// U = diag(1, e^{-i theta}) * [[c, s], [-s, c]] with theta the phase of
// a(p,q), which reduces the 2x2 subproblem to the real symmetric case.
inline void jacobi_rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double rho = std::abs(apq);
  const Complex phase = apq / rho;  // e^{i theta}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double tau = (aqq - app) / (2.0 * rho);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex upp(c, 0.0);
  const Complex upq(s, 0.0);
  const Complex uqp = -s * std::conj(phase);
  const Complex uqq = c * std::conj(phase);

  // a <- U* a U
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const Complex rp = a(r, p), rq = a(r, q);
    a(r, p) = rp * upp + rq * uqp;
    a(r, q) = rp * upq + rq * uqq;
  }
  for (std::size_t col = 0; col < a.cols(); ++col) {
    const Complex pc = a(p, col), qc = a(q, col);
    a(p, col) = std::conj(upp) * pc + std::conj(uqp) * qc;
    a(q, col) = std::conj(upq) * pc + std::conj(uqq) * qc;
  }
  // The rotation annihilates the (p,q) pair by construction.
  a(p, q) = Complex(0.0, 0.0);
  a(q, p) = Complex(0.0, 0.0);

  // v <- v U
  for (std::size_t r = 0; r < v.rows(); ++r) {
    const Complex rp = v(r, p), rq = v(r, q);
    v(r, p) = rp * upp + rq * uqp;
    v(r, q) = rp * upq + rq * uqq;
  }
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
// Requires hermiticity_defect(a) <= 1e-8 * max(1, ||a||_F); operates on
// hermitize(a). Eigenvalues come back ascending; the residual
// ||a v_k - lambda_k v_k|| per column stays below 1e-8 * max(1, ||a||_F).
inline EigResult eig_hermitian(const CMatrix& a) {
  if (!a.is_square())
    throw std::invalid_argument("eig_hermitian: matrix must be square");
  const double scale = std::max(1.0, a.frobenius_norm());
  const double defect = hermiticity_defect(a);
  if (defect > kHermiticityRtol * scale)
    throw std::invalid_argument(
        "eig_hermitian: input is not Hermitian (defect " + std::to_string(defect) +
        " exceeds " + std::to_string(kHermiticityRtol * scale) + ")");

  const std::size_t n = a.rows();
  CMatrix h = hermitize(a);
  CMatrix v = CMatrix::identity(n);

  // Rotating every element above elem_tol drives the off-diagonal Frobenius
  // norm below n * elem_tol; off(h)^2 drops by 2|h(p,q)|^2 per rotation, so
  // the sweep count stays small.
  const double elem_tol = 1e-15 * scale / static_cast<double>(n);
  const int max_sweeps = 100;
  bool converged = (n == 1);
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    std::size_t rotations = 0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(h(p, q)) > elem_tol) {
          detail::jacobi_rotate(h, v, p, q);
          ++rotations;
        }
    if (rotations == 0) converged = true;
  }
  if (!converged)
    throw std::runtime_error("eig_hermitian: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(n);
  for (std::size_t k = 0; k < n; ++k) diag[k] = h(k, k).real();
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

  EigResult res{std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    res.eigenvalues[k] = diag[order[k]];
    for (std::size_t r = 0; r < n; ++r) res.eigenvectors(r, k) = v(r, order[k]);
  }
  return res;
}

// Cone-membership verdict: tolerance_used = rtol*||a||_F + atol and
// is_psd <=> lambda_min >= -tolerance_used. Propagates eig_hermitian's
// errors on non-square or non-Hermitian input.
inline PsdReport psd_check(const CMatrix& a, double rtol = 1e-10, double atol = 1e-12) {
  const EigResult eig = eig_hermitian(a);
  PsdReport rep{};
  rep.min_eigenvalue = eig.eigenvalues.front();
  rep.max_eigenvalue = eig.eigenvalues.back();
  rep.tolerance_used = rtol * a.frobenius_norm() + atol;
  rep.hermiticity_defect = hermiticity_defect(a);
  rep.is_psd = rep.min_eigenvalue >= -rep.tolerance_used;
  return rep;
}

}  // namespace tschur
