#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "entfluc/types.hpp"

namespace entfluc {

/// Row-indexed sparse matrix over a many-body basis.
class SparseOperator {
 public:
  using Entry = std::pair<std::size_t, cplx>;

  SparseOperator() = default;
  explicit SparseOperator(std::size_t dim) : rows_(dim) {}

  std::size_t dim() const { return rows_.size(); }
  const std::vector<Entry>& row(std::size_t i) const { return rows_[i]; }
  std::size_t nonzeros() const;

  /// y = H x
  void apply(const CVector& x, CVector& y) const;
  CVector operator*(const CVector& x) const;

  /// Max absolute row sum; the energy scale used for solver tolerances.
  double scale() const;

  /// max |H_ij - conj(H_ji)|
  double hermiticity_defect() const;

  CMatrix to_dense() const;

 private:
  friend class OperatorBuilder;
  std::vector<std::vector<Entry>> rows_;
};

/// Accumulates (row, col, value) contributions; duplicates are summed and
/// exact zeros dropped on finish().
class OperatorBuilder {
 public:
  explicit OperatorBuilder(std::size_t dim) : rows_(dim) {}

  void add(std::size_t row, std::size_t col, cplx value);
  SparseOperator finish();

 private:
  std::vector<std::vector<SparseOperator::Entry>> rows_;
};

}  // namespace entfluc
