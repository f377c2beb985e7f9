#pragma once

#include <stdexcept>

#include "tschur/block.hpp"
#include "tschur/cmatrix.hpp"
#include "tschur/grid.hpp"

namespace tschur {

// Entrywise tensor product of two block matrices with equal outer size:
// output block (i,j) = kron(r_ij, s_ij), an element of M_n(M_{pq}).
inline BlockMatrix tensor_schur(const BlockMatrix& r, const BlockMatrix& s) {
  if (r.outer_size() != s.outer_size())
    throw std::invalid_argument("tensor_schur: outer sizes differ (" +
                                std::to_string(r.outer_size()) + " vs " +
                                std::to_string(s.outer_size()) + ")");
  const std::size_t n = r.outer_size();
  BlockMatrix out(n, r.block_dim() * s.block_dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.set_block(i, j, kron(r.block(i, j), s.block(i, j)));
  return out;
}

// Classical entrywise (Hadamard) product; the block_dim = 1 specialization
// of tensor_schur.
inline CMatrix schur(const CMatrix& r, const CMatrix& s) {
  if (!r.same_shape(s))
    throw std::invalid_argument("schur: shape mismatch");
  CMatrix out(r.rows(), r.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) out(i, j) = r(i, j) * s(i, j);
  return out;
}

// Sum of all entrywise tensor products: sum_{i,j} kron(r_ij, s_ij), which is
// the contraction 1_n* (R otensor S) 1_n of the tensorial Schur product by
// the stacked column of identities.
inline CMatrix sum_contract(const BlockMatrix& r, const BlockMatrix& s) {
  if (r.outer_size() != s.outer_size())
    throw std::invalid_argument("sum_contract: outer sizes differ");
  const std::size_t n = r.outer_size();
  CMatrix acc(r.block_dim() * s.block_dim(), r.block_dim() * s.block_dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) acc += kron(r.block(i, j), s.block(i, j));
  return acc;
}

// The full tensor product R (x) S realized inside M_{n^2}(M_{pq}): outer
// index pairs (a,b) fused a-outer (matching the column convention of
// build_compression_V), inner index pairs (gamma,delta) fused gamma-outer.
// Assembled by reindexing kron(flatten(r), flatten(s)) entry for entry, so
// diag_compress(outer_tensor(r, s)) reproduces tensor_schur(r, s) down to
// the last bit while arriving at each product along a different route.
inline BlockMatrix outer_tensor(const BlockMatrix& r, const BlockMatrix& s) {
  if (r.outer_size() != s.outer_size())
    throw std::invalid_argument("outer_tensor: outer sizes differ");
  const std::size_t n = r.outer_size();
  const std::size_t p = r.block_dim();
  const std::size_t q = s.block_dim();
  const CMatrix big = kron(flatten(r), flatten(s));
  const IndexMap pair(n);     // (a, b)         -> a*n + b
  const IndexMap inner(q);    // (gamma, delta) -> gamma*q + delta
  const IndexMap rrow(p);     // (a, gamma)     -> a*p + gamma
  const IndexMap srow(q);     // (b, delta)     -> b*q + delta
  const IndexMap krow(n * q); // (row of flatten(r), row of flatten(s))
  BlockMatrix out(n * n, p * q);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          CMatrix blk(p * q, p * q);
          for (std::size_t ga = 0; ga < p; ++ga)
            for (std::size_t de = 0; de < q; ++de)
              for (std::size_t gb = 0; gb < p; ++gb)
                for (std::size_t db = 0; db < q; ++db)
                  blk(inner.fuse(ga, de), inner.fuse(gb, db)) =
                      big(krow.fuse(rrow.fuse(a, ga), srow.fuse(b, de)),
                          krow.fuse(rrow.fuse(c, gb), srow.fuse(d, db)));
          out.set_block(pair.fuse(a, b), pair.fuse(c, d), std::move(blk));
        }
  return out;
}

// The all-ones matrix J_k; J_k/k is a rank-one projection.
inline CMatrix all_ones(std::size_t k) {
  if (k == 0) throw std::invalid_argument("all_ones: k must be positive");
  CMatrix j(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) j(r, c) = Complex(1.0, 0.0);
  return j;
}

// Flattens a k x k grid of BlockMatrix(n, q) into BlockMatrix(kn, q) using
// the (grid, block) composite index with the grid index outer:
// output block (alpha*n+i, beta*n+j) = grid(alpha,beta).block(i,j).
inline BlockMatrix hat_flatten(const Grid<BlockMatrix>& g) {
  if (g.rows() != g.cols())
    throw std::invalid_argument("hat_flatten: grid must be square");
  const std::size_t k = g.rows();
  const std::size_t n = g(0, 0).outer_size();
  const std::size_t q = g(0, 0).block_dim();
  const IndexMap idx(n);
  BlockMatrix out(k * n, q);
  for (std::size_t al = 0; al < k; ++al)
    for (std::size_t be = 0; be < k; ++be) {
      const BlockMatrix& cell = g(al, be);
      if (cell.outer_size() != n || cell.block_dim() != q)
        throw std::invalid_argument("hat_flatten: inconsistent grid cell shapes");
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          out.set_block(idx.fuse(al, i), idx.fuse(be, j), cell.block(i, j));
    }
  return out;
}

// Inverse of hat_flatten: split BlockMatrix(kn, q) into a k x k grid of
// BlockMatrix(n, q).
inline Grid<BlockMatrix> hat_split(const BlockMatrix& s, std::size_t k) {
  if (k == 0 || s.outer_size() % k != 0)
    throw std::invalid_argument("hat_split: outer size not divisible by k");
  const std::size_t n = s.outer_size() / k;
  const IndexMap idx(n);
  Grid<BlockMatrix> g(k, k, BlockMatrix(n, s.block_dim()));
  for (std::size_t al = 0; al < k; ++al)
    for (std::size_t be = 0; be < k; ++be) {
      BlockMatrix cell(n, s.block_dim());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          cell.set_block(i, j, s.block(idx.fuse(al, i), idx.fuse(be, j)));
      g(al, be) = std::move(cell);
    }
  return g;
}

// Amplification of the Schur-multiplier map S -> R otensor S to level k:
// cell (alpha, beta) of the output grid is tensor_schur(r, s_hat(alpha,beta)).
// hat_flatten of the result equals tensor_schur(pi_right(J_k, r), hat_flatten(s_hat))
// entry for entry.
inline Grid<BlockMatrix> lr_amplified(const BlockMatrix& r, const Grid<BlockMatrix>& s_hat) {
  if (s_hat.rows() != s_hat.cols())
    throw std::invalid_argument("lr_amplified: grid must be square");
  const std::size_t k = s_hat.rows();
  const std::size_t n = r.outer_size();
  const std::size_t q = s_hat(0, 0).block_dim();
  Grid<BlockMatrix> out(k, k, BlockMatrix(n, r.block_dim() * q));
  for (std::size_t al = 0; al < k; ++al)
    for (std::size_t be = 0; be < k; ++be) {
      const BlockMatrix& cell = s_hat(al, be);
      if (cell.outer_size() != n || cell.block_dim() != q)
        throw std::invalid_argument("lr_amplified: inconsistent grid cell shapes");
      out(al, be) = tensor_schur(r, cell);
    }
  return out;
}

}  // namespace tschur
