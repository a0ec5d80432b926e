#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "troplin/types.hpp"

namespace troplin {

// A tropical linear system: a dense rectangular grid of finite integers.
// Rows are equations, columns are variables. Immutable once built.
class TropMatrix {
 public:
  // Row-major entries; throws std::invalid_argument on empty dimensions or
  // size mismatch, std::overflow_error when the safety cap is violated.
  TropMatrix(std::size_t rows, std::size_t cols, std::vector<Value> entries);

  static TropMatrix from_rows(std::initializer_list<std::initializer_list<Value>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  Value max_entry() const { return max_entry_; }
  Value min_entry() const { return min_entry_; }

  Value operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  std::span<const Value> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  const Value* row_data(std::size_t i) const { return entries_.data() + i * cols_; }
  std::span<const Value> entries() const { return entries_; }

  TropMatrix select_rows(std::span<const std::size_t> row_indices) const;
  TropMatrix drop_row(std::size_t i) const;
  TropMatrix drop_col(std::size_t j) const;
  TropMatrix transposed() const;

  bool operator==(const TropMatrix& other) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Value> entries_;
  Value max_entry_;
  Value min_entry_;
};

// Maximum rows/columns accepted; together with the entry caps this keeps
// every internal sum inside int64.
inline constexpr std::size_t kDimensionCap = std::size_t{1} << 20;

}  // namespace troplin
