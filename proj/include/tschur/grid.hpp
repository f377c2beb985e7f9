#pragma once

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tschur {

// Rectangular grid of values, row-major. Used for the action table of a
// linear map (n x n grid of d x d matrices) and for grids of block matrices.
template <typename T>
class Grid {
public:
  Grid(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {
    if (rows == 0 || cols == 0)
      throw std::invalid_argument("Grid: dimensions must be positive");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return cells_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return cells_[r * cols_ + c];
  }

private:
  std::size_t rows_, cols_;
  std::vector<T> cells_;
};

}  // namespace tschur
