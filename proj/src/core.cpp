#include "troplin/core.hpp"

#include <stdexcept>

#include "troplin/kernels.hpp"

namespace troplin {

namespace {

void check_offsets(const TropMatrix& A, std::span<const Value> x) {
  if (x.size() != A.cols()) {
    throw std::invalid_argument("offset vector length does not match column count");
  }
}

}  // namespace

bool verify_solution(const TropMatrix& A, std::span<const Value> x) {
  check_offsets(A, x);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const auto pair = kernels::min2_offset(A.row_data(i), x.data(), A.cols());
    if (pair.lo != pair.second) return false;
  }
  return true;
}

RowMinProfile row_min_profile_row(const TropMatrix& A, std::span<const Value> x,
                                  std::size_t row) {
  const Value* a = A.row_data(row);
  const std::size_t n = A.cols();
  RowMinProfile p;
  p.min = kernels::min2_offset(a, x.data(), n).lo;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j] + x[j] == p.min) p.argmin_cols.push_back(static_cast<std::uint32_t>(j));
  }
  p.multiplicity = p.argmin_cols.size();
  const std::int64_t above = kernels::min_above_offset(a, x.data(), n, p.min);
  if (above != kernels::kAbsent) p.second_distinct = above;
  return p;
}

std::vector<RowMinProfile> row_min_profile(const TropMatrix& A, std::span<const Value> x) {
  check_offsets(A, x);
  std::vector<RowMinProfile> profiles;
  profiles.reserve(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    profiles.push_back(row_min_profile_row(A, x, i));
  }
  return profiles;
}

TropMatrix apply_transform(const TropMatrix& A, std::span<const Value> row_adds,
                           std::span<const Value> col_adds) {
  if (row_adds.size() != A.rows() || col_adds.size() != A.cols()) {
    throw std::invalid_argument("apply_transform: add-vector lengths must match dimensions");
  }
  std::vector<Value> flat;
  flat.reserve(A.rows() * A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      flat.push_back(A(i, j) + row_adds[i] + col_adds[j]);
    }
  }
  return TropMatrix(A.rows(), A.cols(), std::move(flat));
}

NormalizedSystem normalize_nonnegative(const TropMatrix& A) {
  std::vector<Value> row_adds(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    row_adds[i] = -kernels::min2_offset(A.row_data(i), nullptr, A.cols()).lo;
  }
  std::vector<Value> col_adds(A.cols(), 0);
  TropMatrix normalized = apply_transform(A, row_adds, col_adds);
  return {std::move(normalized), std::move(row_adds), std::move(col_adds)};
}

SolutionVector recover_solution(std::span<const Value> x_transformed,
                                std::span<const Value> col_adds) {
  if (x_transformed.size() != col_adds.size()) {
    throw std::invalid_argument("recover_solution: length mismatch");
  }
  SolutionVector x(x_transformed.size());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = x_transformed[j] + col_adds[j];
  return x;
}

SolutionVector tropical_row_sum(std::span<const SolutionVector> rows) {
  if (rows.empty()) {
    throw std::invalid_argument("tropical_row_sum: empty list");
  }
  SolutionVector acc = rows.front();
  for (const auto& r : rows.subspan(1)) {
    if (r.size() != acc.size()) {
      throw std::invalid_argument("tropical_row_sum: ragged rows");
    }
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = trop_add(acc[j], r[j]);
  }
  return acc;
}

}  // namespace troplin
