#pragma once

#include <cstdint>
#include <stdexcept>

#include "tschur/block.hpp"
#include "tschur/cmatrix.hpp"
#include "tschur/cpmaps.hpp"
#include "tschur/rng.hpp"

namespace tschur {

// Seeded instance generators. Every function here is a pure function of its
// arguments including the seed: identical seeds give bit-identical output.

// Matrix of i.i.d. standard complex Gaussian entries, row-major draw order.
inline CMatrix ginibre(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("ginibre: dimensions must be positive");
  Rng rng(seed);
  CMatrix g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) g(r, c) = rng.gaussian_complex();
  return g;
}

// G G* with G = ginibre(dim, rank, seed): PSD by construction, numerical
// rank at most `rank`.
inline CMatrix random_psd(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  if (rank < 1 || rank > dim)
    throw std::invalid_argument("random_psd: rank must lie in [1, dim]");
  const CMatrix g = ginibre(dim, rank, seed);
  return g * g.adjoint();
}

// Full-rank PSD element of M_n(M_m), laid out through unflatten.
inline BlockMatrix random_block_psd(std::size_t n, std::size_t m, std::uint64_t seed) {
  return unflatten(random_psd(n * m, n * m, seed), n, m);
}

// CP map assembled from num_kraus Ginibre Kraus operators; is_cp passes by
// construction (the Choi matrix is a Gram matrix).
inline MatLinearMap random_cp_map(std::size_t n, std::size_t d, std::size_t num_kraus,
                                  std::uint64_t seed) {
  if (num_kraus < 1)
    throw std::invalid_argument("random_cp_map: num_kraus must be positive");
  KrausSet ks{n, d, {}};
  for (std::size_t t = 0; t < num_kraus; ++t)
    ks.ops.push_back(ginibre(d, n, derive_seed(seed, t)));
  return MatLinearMap::from_kraus(ks);
}

}  // namespace tschur
