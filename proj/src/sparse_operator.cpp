#include "entfluc/sparse_operator.hpp"

#include <algorithm>
#include <cmath>

namespace entfluc {

std::size_t SparseOperator::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

void SparseOperator::apply(const CVector& x, CVector& y) const {
  const auto n = static_cast<Eigen::Index>(rows_.size());
  y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx acc = 0.0;
    for (const auto& [j, v] : rows_[static_cast<std::size_t>(i)]) {
      acc += v * x[static_cast<Eigen::Index>(j)];
    }
    y[i] = acc;
  }
}

CVector SparseOperator::operator*(const CVector& x) const {
  CVector y;
  apply(x, y);
  return y;
}

double SparseOperator::scale() const {
  double s = 0.0;
  for (const auto& r : rows_) {
    double acc = 0.0;
    for (const auto& e : r) acc += std::abs(e.second);
    s = std::max(s, acc);
  }
  return s;
}

double SparseOperator::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (const auto& [j, v] : rows_[i]) {
      const auto& other = rows_[j];
      auto it = std::lower_bound(other.begin(), other.end(), i,
                                 [](const Entry& e, std::size_t col) { return e.first < col; });
      const cplx mirror = (it != other.end() && it->first == i) ? it->second : cplx{0.0};
      worst = std::max(worst, std::abs(v - std::conj(mirror)));
    }
  }
  return worst;
}

CMatrix SparseOperator::to_dense() const {
  const auto n = static_cast<Eigen::Index>(rows_.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& [j, v] : rows_[static_cast<std::size_t>(i)]) {
      m(i, static_cast<Eigen::Index>(j)) += v;
    }
  }
  return m;
}

void OperatorBuilder::add(std::size_t row, std::size_t col, cplx value) {
  if (value == cplx{0.0}) return;
  rows_[row].emplace_back(col, value);
}

SparseOperator OperatorBuilder::finish() {
  SparseOperator op;
  op.rows_.resize(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    auto& r = rows_[i];
    std::sort(r.begin(), r.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    auto& out = op.rows_[i];
    for (const auto& e : r) {
      if (!out.empty() && out.back().first == e.first) {
        out.back().second += e.second;
      } else {
        out.push_back(e);
      }
    }
    std::erase_if(out, [](const auto& e) { return e.second == cplx{0.0}; });
    r.clear();
    r.shrink_to_fit();
  }
  return op;
}

}  // namespace entfluc
