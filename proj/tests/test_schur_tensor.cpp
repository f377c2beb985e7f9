#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include <tschur/eig.hpp>
#include <tschur/random.hpp>
#include <tschur/rng.hpp>
#include <tschur/schur_tensor.hpp>

using namespace tschur;

namespace {

BlockMatrix random_block(std::size_t n, std::size_t m, std::uint64_t seed) {
  BlockMatrix b(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b.set_block(i, j, ginibre(m, m, derive_seed(seed, i * n + j)));
  return b;
}

}  // namespace

TEST_CASE("schur multiplies entrywise", "[schur]") {
  const CMatrix a = CMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  const CMatrix b = CMatrix::from_rows({{5.0, 6.0}, {7.0, Complex(0, 1)}});
  const CMatrix p = schur(a, b);
  REQUIRE(p(0, 0) == Complex(5, 0));
  REQUIRE(p(0, 1) == Complex(12, 0));
  REQUIRE(p(1, 0) == Complex(21, 0));
  REQUIRE(p(1, 1) == Complex(0, 4));
  REQUIRE(exact_equal(schur(a, all_ones(2)), a));
  REQUIRE_THROWS_AS(schur(a, CMatrix(3, 3)), std::invalid_argument);
}

TEST_CASE("tensor_schur takes blockwise Kronecker products", "[schur]") {
  const BlockMatrix r = random_block(2, 2, 1);
  const BlockMatrix s = random_block(2, 3, 2);
  const BlockMatrix t = tensor_schur(r, s);
  REQUIRE(t.outer_size() == 2);
  REQUIRE(t.block_dim() == 6);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      REQUIRE(exact_equal(t.block(i, j), kron(r.block(i, j), s.block(i, j))));
  REQUIRE_THROWS_AS(tensor_schur(r, random_block(3, 2, 3)), std::invalid_argument);
}

TEST_CASE("tensor_schur with scalar blocks is the classical product", "[schur]") {
  const CMatrix a = ginibre(4, 4, 10);
  const CMatrix b = ginibre(4, 4, 11);
  const BlockMatrix t = tensor_schur(unflatten(a, 4, 1), unflatten(b, 4, 1));
  REQUIRE(exact_equal(flatten(t), schur(a, b)));
}

TEST_CASE("all-ones scalar factor is neutral on the right", "[schur]") {
  const BlockMatrix r = random_block(3, 2, 55);
  BlockMatrix ones(3, 1);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) ones.set_block(i, j, CMatrix::from_rows({{1.0}}));
  REQUIRE(exact_equal(tensor_schur(r, ones), r));
}

TEST_CASE("two-by-two scalar hand example", "[schur]") {
  BlockMatrix r(2, 1), s(2, 1);
  const double sv[2][2] = {{2.0, 1.0}, {1.0, 1.0}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      r.set_block(i, j, CMatrix::from_rows({{1.0}}));
      s.set_block(i, j, CMatrix::from_rows({{sv[i][j]}}));
    }
  const CMatrix f = flatten(tensor_schur(r, s));
  REQUIRE(exact_equal(f, CMatrix::from_rows({{2.0, 1.0}, {1.0, 1.0}})));
  REQUIRE(psd_check(f).is_psd);
}

TEST_CASE("schur against the identity keeps only the diagonal", "[schur]") {
  const CMatrix s = ginibre(3, 3, 58);
  const CMatrix masked = schur(CMatrix::identity(3), s);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      REQUIRE(masked(i, j) == (i == j ? s(i, i) : Complex(0, 0)));
}

TEST_CASE("sum_contract equals compression by stacked identities", "[schur]") {
  const BlockMatrix r = random_block(3, 2, 20);
  const BlockMatrix s = random_block(3, 2, 21);
  const std::size_t u = 4;
  CMatrix ones(3 * u, u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t a = 0; a < u; ++a) ones(i * u + a, a) = Complex(1, 0);
  const CMatrix direct = sum_contract(r, s);
  const CMatrix contracted = ones.adjoint() * flatten(tensor_schur(r, s)) * ones;
  REQUIRE(max_abs_diff(direct, contracted) <= 1e-12);
  REQUIRE_THROWS_AS(sum_contract(r, random_block(2, 2, 22)), std::invalid_argument);
}

TEST_CASE("sum_contract hand values", "[schur]") {
  // Two identity factors: the two diagonal terms contribute 1 each.
  const BlockMatrix eye = BlockMatrix::identity(2, 1);
  const CMatrix two = sum_contract(eye, eye);
  REQUIRE(two.rows() == 1);
  REQUIRE(two(0, 0) == Complex(2, 0));

  // All-ones scalar factors: every one of the four terms contributes 1.
  BlockMatrix ones(2, 1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) ones.set_block(i, j, CMatrix::from_rows({{1.0}}));
  REQUIRE(sum_contract(ones, ones)(0, 0) == Complex(4, 0));
}

TEST_CASE("outer_tensor entries are products of the factor entries", "[schur]") {
  const std::size_t n = 2, p = 2, q = 3;
  const BlockMatrix r = random_block(n, p, 30);
  const BlockMatrix s = random_block(n, q, 31);
  const BlockMatrix full = outer_tensor(r, s);
  REQUIRE(full.outer_size() == n * n);
  REQUIRE(full.block_dim() == p * q);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
          REQUIRE(exact_equal(full.block(a * n + b, c * n + d),
                              kron(r.block(a, c), s.block(b, d))));
}

TEST_CASE("diagonal compression of the full tensor is the tensorial Schur product",
          "[schur]") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(derive_seed(5000, seed));
    const std::size_t n = 1 + rng.below(3);
    const std::size_t p = 1 + rng.below(3);
    const std::size_t q = 1 + rng.below(3);
    const BlockMatrix r = random_block(n, p, derive_seed(5001, seed));
    const BlockMatrix s = random_block(n, q, derive_seed(5002, seed));
    const BlockMatrix full = outer_tensor(r, s);
    const BlockMatrix ts = tensor_schur(r, s);
    REQUIRE(exact_equal(diag_compress(full), ts));
    const CMatrix v = build_compression_V(n, p * q);
    REQUIRE(exact_equal(v * flatten(full) * v.adjoint(), flatten(ts)));
  }
}

TEST_CASE("tensor_schur of positives is positive", "[schur]") {
  const BlockMatrix r = random_block_psd(3, 2, 40);
  const BlockMatrix s = random_block_psd(3, 3, 41);
  REQUIRE(psd_check(flatten(tensor_schur(r, s))).is_psd);
  REQUIRE(psd_check(schur(random_psd(5, 5, 42), random_psd(5, 5, 43))).is_psd);
}

TEST_CASE("swapping the factors preserves the spectrum", "[schur]") {
  const BlockMatrix r = random_block_psd(3, 2, 50);
  const BlockMatrix s = random_block_psd(3, 2, 51);
  const std::vector<double> a = eig_hermitian(hermitize(flatten(tensor_schur(r, s)))).eigenvalues;
  const std::vector<double> b = eig_hermitian(hermitize(flatten(tensor_schur(s, r)))).eigenvalues;
  for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(std::abs(a[k] - b[k]) <= 1e-8);
}

TEST_CASE("all_ones and its normalized projection", "[schur]") {
  const CMatrix j3 = all_ones(3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) REQUIRE(j3(r, c) == Complex(1, 0));
  const CMatrix p = j3 * Complex(1.0 / 3.0, 0.0);
  REQUIRE(max_abs_diff(p * p, p) <= 1e-15);
  REQUIRE_THROWS_AS(all_ones(0), std::invalid_argument);

  REQUIRE(exact_equal(all_ones(1), CMatrix::from_rows({{1.0}})));

  // Spectrum of J_k: one eigenvalue k, the rest zero.
  const EigResult e = eig_hermitian(all_ones(4));
  for (std::size_t t = 0; t + 1 < e.eigenvalues.size(); ++t)
    REQUIRE(std::abs(e.eigenvalues[t]) <= 1e-12);
  REQUIRE(std::abs(e.eigenvalues.back() - 4.0) <= 1e-12);
}

TEST_CASE("hat_flatten and hat_split invert each other", "[schur]") {
  const std::size_t k = 2, n = 3, q = 2;
  const BlockMatrix s = random_block(k * n, q, 60);
  const Grid<BlockMatrix> g = hat_split(s, k);
  REQUIRE(exact_equal(hat_flatten(g), s));
  // Cell (al, be) holds blocks (al*n + i, be*n + j).
  for (std::size_t al = 0; al < k; ++al)
    for (std::size_t be = 0; be < k; ++be)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          REQUIRE(exact_equal(g(al, be).block(i, j), s.block(al * n + i, be * n + j)));
  REQUIRE_THROWS_AS(hat_split(s, 4), std::invalid_argument);
}

TEST_CASE("amplified multiplier identity", "[schur]") {
  const std::size_t k = 2, n = 2, p = 2, q = 2;
  const BlockMatrix r = random_block(n, p, 70);
  const BlockMatrix s_hat = random_block(k * n, q, 71);
  const BlockMatrix lhs = hat_flatten(lr_amplified(r, hat_split(s_hat, k)));
  const BlockMatrix rhs = tensor_schur(pi_right(all_ones(k), r), s_hat);
  REQUIRE(exact_equal(lhs, rhs));
}

TEST_CASE("amplification at level one is the plain tensorial product", "[schur]") {
  const BlockMatrix r = random_block(3, 2, 80);
  const BlockMatrix s = random_block(3, 2, 81);
  const BlockMatrix lhs = hat_flatten(lr_amplified(r, hat_split(s, 1)));
  REQUIRE(exact_equal(lhs, tensor_schur(r, s)));
}

TEST_CASE("amplifying an identity multiplier selects the block diagonal", "[schur]") {
  const std::size_t k = 2, n = 2, p = 2, q = 2;
  const BlockMatrix r = BlockMatrix::identity(n, p);
  const BlockMatrix s_hat = random_block_psd(k * n, q, 83);
  const Grid<BlockMatrix> out = lr_amplified(r, hat_split(s_hat, k));
  for (std::size_t al = 0; al < k; ++al)
    for (std::size_t be = 0; be < k; ++be)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const CMatrix& got = out(al, be).block(i, j);
          if (i == j)
            REQUIRE(exact_equal(
                got, kron(CMatrix::identity(p), s_hat.block(al * n + i, be * n + j))));
          else
            REQUIRE(got.frobenius_norm() == 0.0);
        }
  REQUIRE(psd_check(flatten(hat_flatten(out))).is_psd);
}
