#include "troplin/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace troplin {

namespace {

Value abs_value(Value v) { return v < 0 ? -v : v; }

}  // namespace

TropMatrix::TropMatrix(std::size_t rows, std::size_t cols, std::vector<Value> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) {
    throw std::invalid_argument("TropMatrix: dimensions must be at least 1x1");
  }
  if (rows_ > kDimensionCap || cols_ > kDimensionCap) {
    throw std::invalid_argument("TropMatrix: dimension cap exceeded");
  }
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("TropMatrix: entry count does not match dimensions");
  }
  auto [lo, hi] = std::minmax_element(entries_.begin(), entries_.end());
  min_entry_ = *lo;
  max_entry_ = *hi;
  const Value magnitude = std::max(abs_value(min_entry_), abs_value(max_entry_));
  const Value span = static_cast<Value>(rows_ + cols_ + 2);
  if (magnitude + 1 > kSafeSumBound / span) {
    throw std::overflow_error("TropMatrix: entries too large for exact arithmetic");
  }
}

TropMatrix TropMatrix::from_rows(std::initializer_list<std::initializer_list<Value>> rows) {
  std::vector<Value> flat;
  std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols) {
      throw std::invalid_argument("TropMatrix: ragged initializer");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return TropMatrix(rows.size(), cols, std::move(flat));
}

TropMatrix TropMatrix::select_rows(std::span<const std::size_t> row_indices) const {
  std::vector<Value> flat;
  flat.reserve(row_indices.size() * cols_);
  for (std::size_t i : row_indices) {
    if (i >= rows_) {
      throw std::invalid_argument("TropMatrix::select_rows: row index out of range");
    }
    auto r = row(i);
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return TropMatrix(row_indices.size(), cols_, std::move(flat));
}

TropMatrix TropMatrix::drop_row(std::size_t i) const {
  if (i >= rows_) {
    throw std::invalid_argument("TropMatrix::drop_row: row index out of range");
  }
  std::vector<Value> flat;
  flat.reserve((rows_ - 1) * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r == i) continue;
    auto row_span = row(r);
    flat.insert(flat.end(), row_span.begin(), row_span.end());
  }
  return TropMatrix(rows_ - 1, cols_, std::move(flat));
}

TropMatrix TropMatrix::drop_col(std::size_t j) const {
  if (j >= cols_) {
    throw std::invalid_argument("TropMatrix::drop_col: column index out of range");
  }
  std::vector<Value> flat;
  flat.reserve(rows_ * (cols_ - 1));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c != j) flat.push_back((*this)(r, c));
    }
  }
  return TropMatrix(rows_, cols_ - 1, std::move(flat));
}

TropMatrix TropMatrix::transposed() const {
  std::vector<Value> flat(rows_ * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      flat[c * rows_ + r] = (*this)(r, c);
    }
  }
  return TropMatrix(cols_, rows_, std::move(flat));
}

}  // namespace troplin
