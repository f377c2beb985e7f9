#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tschur/cmatrix.hpp"
#include "tschur/index_map.hpp"

namespace tschur {

// Element of M_n(M_m): an n x n grid of m x m complex blocks. flatten() and
// unflatten() realize the canonical identification with M_{nm}, composite
// row index (i, alpha) -> i*m + alpha.
class BlockMatrix {
public:
  BlockMatrix(std::size_t outer, std::size_t block_dim)
      : outer_(outer), block_dim_(block_dim),
        blocks_(outer * outer, CMatrix(block_dim, block_dim)) {
    if (outer == 0 || block_dim == 0)
      throw std::invalid_argument("BlockMatrix: dimensions must be positive");
  }

  static BlockMatrix identity(std::size_t outer, std::size_t block_dim) {
    BlockMatrix b(outer, block_dim);
    for (std::size_t i = 0; i < outer; ++i)
      b.set_block(i, i, CMatrix::identity(block_dim));
    return b;
  }

  std::size_t outer_size() const { return outer_; }
  std::size_t block_dim() const { return block_dim_; }
  std::size_t flat_size() const { return outer_ * block_dim_; }

  const CMatrix& block(std::size_t i, std::size_t j) const {
    assert(i < outer_ && j < outer_);
    return blocks_[i * outer_ + j];
  }

  void set_block(std::size_t i, std::size_t j, CMatrix b) {
    assert(i < outer_ && j < outer_);
    if (b.rows() != block_dim_ || b.cols() != block_dim_)
      throw std::invalid_argument("BlockMatrix::set_block: block must be " +
                                  std::to_string(block_dim_) + "x" +
                                  std::to_string(block_dim_));
    blocks_[i * outer_ + j] = std::move(b);
  }

  // (R*)_{ij} = (R_{ji})*.
  BlockMatrix adjoint() const {
    BlockMatrix a(outer_, block_dim_);
    for (std::size_t i = 0; i < outer_; ++i)
      for (std::size_t j = 0; j < outer_; ++j)
        a.set_block(i, j, block(j, i).adjoint());
    return a;
  }

private:
  std::size_t outer_, block_dim_;
  std::vector<CMatrix> blocks_;
};

inline bool exact_equal(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.outer_size() != b.outer_size() || a.block_dim() != b.block_dim()) return false;
  for (std::size_t i = 0; i < a.outer_size(); ++i)
    for (std::size_t j = 0; j < a.outer_size(); ++j)
      if (!exact_equal(a.block(i, j), b.block(i, j))) return false;
  return true;
}

// Canonical layout M_n(M_m) -> M_{nm}: entry (i*m+alpha, j*m+beta) of the
// result is block(i,j)(alpha,beta).
inline CMatrix flatten(const BlockMatrix& r) {
  const std::size_t n = r.outer_size(), m = r.block_dim();
  const IndexMap idx(m);
  CMatrix f(n * m, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const CMatrix& b = r.block(i, j);
      for (std::size_t al = 0; al < m; ++al)
        for (std::size_t be = 0; be < m; ++be)
          f(idx.fuse(i, al), idx.fuse(j, be)) = b(al, be);
    }
  return f;
}

// Inverse of flatten. The side of a must equal n*m.
inline BlockMatrix unflatten(const CMatrix& a, std::size_t n, std::size_t m) {
  if (!a.is_square() || a.rows() != n * m)
    throw std::invalid_argument("unflatten: expected a square matrix of side " +
                                std::to_string(n) + "*" + std::to_string(m) + ", got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  const IndexMap idx(m);
  BlockMatrix r(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CMatrix b(m, m);
      for (std::size_t al = 0; al < m; ++al)
        for (std::size_t be = 0; be < m; ++be)
          b(al, be) = a(idx.fuse(i, al), idx.fuse(j, be));
      r.set_block(i, j, std::move(b));
    }
  return r;
}

// Block-matrix product in M_n(M_m), via the flat identification.
inline BlockMatrix multiply(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.outer_size() != b.outer_size() || a.block_dim() != b.block_dim())
    throw std::invalid_argument("BlockMatrix multiply: shape mismatch");
  return unflatten(flatten(a) * flatten(b), a.outer_size(), a.block_dim());
}

// The identification M_n(A) (x) M_k = M_{nk}(A): output block at composite
// outer index (i*k+alpha, j*k+beta) is c(alpha,beta) * r(i,j).
inline BlockMatrix pi_iso(const BlockMatrix& r, const CMatrix& c) {
  if (!c.is_square())
    throw std::invalid_argument("pi_iso: right factor must be square");
  const std::size_t n = r.outer_size(), k = c.rows();
  const IndexMap idx(k);  // (i, alpha), i outer
  BlockMatrix out(n * k, r.block_dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t al = 0; al < k; ++al)
        for (std::size_t be = 0; be < k; ++be)
          out.set_block(idx.fuse(i, al), idx.fuse(j, be), c(al, be) * r.block(i, j));
  return out;
}

// Right version: M_k (x) M_n(A) = M_{kn}(A), output block at
// (alpha*n+i, beta*n+j) is c(alpha,beta) * r(i,j).
inline BlockMatrix pi_right(const CMatrix& c, const BlockMatrix& r) {
  if (!c.is_square())
    throw std::invalid_argument("pi_right: left factor must be square");
  const std::size_t n = r.outer_size(), k = c.rows();
  const IndexMap idx(n);  // (alpha, i), alpha outer
  BlockMatrix out(k * n, r.block_dim());
  for (std::size_t al = 0; al < k; ++al)
    for (std::size_t be = 0; be < k; ++be)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          out.set_block(idx.fuse(al, i), idx.fuse(be, j), c(al, be) * r.block(i, j));
  return out;
}

// Coisometry V of shape nu x n^2 u selecting the (i,i) diagonal pairs: one
// identity block per block-row i, at block-column (i,i) of the n^2 columns
// ordered (p,q) -> p*n+q. V V* = I_{nu} exactly.
inline CMatrix build_compression_V(std::size_t n, std::size_t u) {
  if (n == 0 || u == 0)
    throw std::invalid_argument("build_compression_V: dimensions must be positive");
  const IndexMap pairs(n);  // (p, q), p outer
  const IndexMap blocks(u);
  CMatrix v(n * u, n * n * u);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < u; ++a)
      v(blocks.fuse(i, a), blocks.fuse(pairs.fuse(i, i), a)) = Complex(1.0, 0.0);
  return v;
}

// Compression of a BlockMatrix(n^2, u) to BlockMatrix(n, u) by selecting the
// blocks at composite outer positions ((i,i), (j,j)). Equals
// unflatten(V * flatten(T) * V*) for V = build_compression_V(n, u), entry
// for entry, since every entry of that product is a sum with exactly one
// nonzero term; selection keeps the hot path O(n^2 u^2).
inline BlockMatrix diag_compress(const BlockMatrix& t) {
  const std::size_t sq = t.outer_size();
  std::size_t n = 0;
  while (n * n < sq) ++n;
  if (n * n != sq)
    throw std::invalid_argument("diag_compress: outer size " + std::to_string(sq) +
                                " is not a perfect square");
  const IndexMap pairs(n);
  BlockMatrix out(n, t.block_dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.set_block(i, j, t.block(pairs.fuse(i, i), pairs.fuse(j, j)));
  return out;
}

}  // namespace tschur
