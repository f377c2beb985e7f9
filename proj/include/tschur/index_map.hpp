#pragma once

#include <cstddef>

namespace tschur {

// Composite-index arithmetic for pairs (outer, inner) stored outer-major:
// fuse(o, i) = o * inner_size + i, with 0-based indices throughout.
//
// Every composite layout in the library goes through this one helper so the
// convention is never written twice: block layouts fuse (block row, row
// within block); the compression V fuses its column pairs (p, q) with p
// outer; the Choi/Kraus reshape fuses (input index, output index) with the
// input index outer; the hatted matrices of the amplified Schur multiplier
// fuse (grid index, block row) with the grid index outer.
class IndexMap {
public:
  explicit constexpr IndexMap(std::size_t inner_size) : inner_(inner_size) {}

  constexpr std::size_t inner_size() const { return inner_; }
  constexpr std::size_t fuse(std::size_t outer, std::size_t inner) const {
    return outer * inner_ + inner;
  }
  constexpr std::size_t outer_of(std::size_t fused) const { return fused / inner_; }
  constexpr std::size_t inner_of(std::size_t fused) const { return fused % inner_; }

private:
  std::size_t inner_;
};

}  // namespace tschur
