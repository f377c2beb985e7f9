#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "tschur/block.hpp"
#include "tschur/cmatrix.hpp"
#include "tschur/eig.hpp"
#include "tschur/grid.hpp"
#include "tschur/index_map.hpp"
#include "tschur/rng.hpp"

namespace tschur {

// A CP map in Kraus form: phi(X) = sum_t K_t X K_t*, each K_t of shape d x n.
struct KrausSet {
  std::size_t n;
  std::size_t d;
  std::vector<CMatrix> ops;
};

// Linear map phi: M_n -> M_d stored by its action on the matrix units,
// action(i, j) = phi(E_ij). phi is Hermiticity-preserving exactly when
// action(j, i) = action(i, j)* for all i, j; that is reported, not enforced.
class MatLinearMap {
public:
  MatLinearMap(std::size_t n, std::size_t d)
      : n_(n), d_(d), action_(n, n, CMatrix(d, d)) {}

  static MatLinearMap from_kraus(const KrausSet& ks) {
    MatLinearMap phi(ks.n, ks.d);
    for (const CMatrix& k : ks.ops)
      if (k.rows() != ks.d || k.cols() != ks.n)
        throw std::invalid_argument("MatLinearMap::from_kraus: operator shape mismatch");
    // K E_ij K* is the outer product of columns i and j of K.
    for (std::size_t i = 0; i < ks.n; ++i)
      for (std::size_t j = 0; j < ks.n; ++j) {
        CMatrix f(ks.d, ks.d);
        for (const CMatrix& k : ks.ops)
          for (std::size_t s = 0; s < ks.d; ++s)
            for (std::size_t t = 0; t < ks.d; ++t)
              f(s, t) += k(s, i) * std::conj(k(t, j));
        phi.set_action(i, j, std::move(f));
      }
    return phi;
  }

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }

  const CMatrix& action(std::size_t i, std::size_t j) const { return action_(i, j); }

  void set_action(std::size_t i, std::size_t j, CMatrix f) {
    if (f.rows() != d_ || f.cols() != d_)
      throw std::invalid_argument("MatLinearMap::set_action: block must be " +
                                  std::to_string(d_) + "x" + std::to_string(d_));
    action_(i, j) = std::move(f);
  }

  // max_{ij} ||action(j,i) - action(i,j)*||_F; zero for Hermiticity-preserving maps.
  double hermiticity_preservation_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        worst = std::max(worst, (action_(j, i) - action_(i, j).adjoint()).frobenius_norm());
    return worst;
  }

private:
  std::size_t n_, d_;
  Grid<CMatrix> action_;
};

// The block matrix [phi(E_ij)] in M_n(M_d).
inline BlockMatrix choi(const MatLinearMap& phi) {
  BlockMatrix c(phi.n(), phi.d());
  for (std::size_t i = 0; i < phi.n(); ++i)
    for (std::size_t j = 0; j < phi.n(); ++j) c.set_block(i, j, phi.action(i, j));
  return c;
}

// CP criterion: phi is CP exactly when its Choi matrix is PSD. A map that is
// not Hermiticity-preserving has a non-Hermitian Choi matrix, and the check
// raises instead of answering false.
inline PsdReport is_cp(const MatLinearMap& phi, double rtol = 1e-10, double atol = 1e-12) {
  return psd_check(flatten(choi(phi)), rtol, atol);
}

// Linear extension of the action: phi(X) = sum_{ij} x_ij phi(E_ij).
inline CMatrix apply(const MatLinearMap& phi, const CMatrix& x) {
  if (x.rows() != phi.n() || x.cols() != phi.n())
    throw std::invalid_argument("apply: input must be " + std::to_string(phi.n()) + "x" +
                                std::to_string(phi.n()));
  CMatrix acc(phi.d(), phi.d());
  for (std::size_t i = 0; i < phi.n(); ++i)
    for (std::size_t j = 0; j < phi.n(); ++j) {
      CMatrix term = phi.action(i, j);
      term *= x(i, j);
      acc += term;
    }
  return acc;
}

// Amplification (id tensor phi) applied to R in M_n(M_m):
// sum_{ij} kron(r_ij, phi(E_ij)), the m index outer, of shape md x md.
// Accumulates in the same (i outer, j inner) order as sum_contract, so the
// two routes agree entry for entry.
inline CMatrix extend_apply(const MatLinearMap& phi, const BlockMatrix& r) {
  if (r.outer_size() != phi.n())
    throw std::invalid_argument("extend_apply: block outer size " +
                                std::to_string(r.outer_size()) + " does not match map input " +
                                std::to_string(phi.n()));
  const std::size_t md = r.block_dim() * phi.d();
  CMatrix acc(md, md);
  for (std::size_t i = 0; i < phi.n(); ++i)
    for (std::size_t j = 0; j < phi.n(); ++j)
      acc += kron(r.block(i, j), phi.action(i, j));
  return acc;
}

// Kraus decomposition of a CP map from the eigendecomposition of its Choi
// matrix: eigenpairs (lambda_t, w_t) with lambda_t > rank_tol * lambda_max
// give K_t(s, i) = sqrt(lambda_t) * w_t[i*d + s].
inline KrausSet kraus(const MatLinearMap& phi, double rank_tol = 1e-10) {
  const CMatrix c = flatten(choi(phi));
  const PsdReport rep = psd_check(c);
  if (!rep.is_psd)
    throw std::invalid_argument("kraus: map is not CP (min eigenvalue " +
                                std::to_string(rep.min_eigenvalue) + ")");
  const EigResult eig = eig_hermitian(c);
  const double lambda_max = eig.eigenvalues.back();
  const double cutoff = rank_tol * lambda_max;
  const IndexMap idx(phi.d());  // Choi row (i, s) -> i*d + s
  KrausSet ks{phi.n(), phi.d(), {}};
  for (std::size_t t = 0; t < eig.eigenvalues.size(); ++t) {
    const double lambda = eig.eigenvalues[t];
    if (lambda <= cutoff) continue;
    const double w = std::sqrt(lambda);
    CMatrix k(phi.d(), phi.n());
    for (std::size_t i = 0; i < phi.n(); ++i)
      for (std::size_t s = 0; s < phi.d(); ++s)
        k(s, i) = w * eig.eigenvectors(idx.fuse(i, s), t);
    ks.ops.push_back(std::move(k));
  }
  return ks;
}

// A unit vector that phi maps out of the positive cone.
struct PositivityCounterexample {
  std::vector<Complex> vector;
  double min_eigenvalue;      // of hermitize(phi(x x*))
  double hermiticity_defect;  // of phi(x x*)
  std::size_t trial;
};

// Randomized one-sided positivity check: samples complex-Gaussian unit
// vectors x and returns the first one whose image phi(x x*) has an
// eigenvalue below -tolerance (or fails to be Hermitian). Rank-one inputs
// suffice: they are the extreme rays of the PSD cone. A run with no find
// never certifies positivity.
inline std::optional<PositivityCounterexample> positive_map_falsify(
    const MatLinearMap& phi, std::size_t trials, std::uint64_t seed) {
  const std::size_t n = phi.n();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, trial));
    std::vector<Complex> x(n);
    double norm_sq = 0.0;
    for (auto& v : x) {
      v = rng.gaussian_complex();
      norm_sq += std::norm(v);
    }
    if (norm_sq == 0.0) continue;
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& v : x) v *= inv;

    CMatrix xxstar(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) xxstar(i, j) = x[i] * std::conj(x[j]);

    const CMatrix image = apply(phi, xxstar);
    const double defect = hermiticity_defect(image);
    const double scale = std::max(1.0, image.frobenius_norm());
    const EigResult eig = eig_hermitian(hermitize(image));
    const double lambda_min = eig.eigenvalues.front();
    const double tol = 1e-10 * image.frobenius_norm() + 1e-12;
    if (defect > kHermiticityRtol * scale || lambda_min < -tol)
      return PositivityCounterexample{std::move(x), lambda_min, defect, trial};
  }
  return std::nullopt;
}

// Canonical witnesses: action blocks E_ji and E_ij.
inline MatLinearMap transpose_map(std::size_t n) {
  MatLinearMap phi(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      phi.set_action(i, j, CMatrix::matrix_unit(n, j, i));
  return phi;
}

inline MatLinearMap identity_map(std::size_t n) {
  MatLinearMap phi(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      phi.set_action(i, j, CMatrix::matrix_unit(n, i, j));
  return phi;
}

}  // namespace tschur
