#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "troplin/matrix.hpp"
#include "troplin/types.hpp"

namespace troplin::io {

// Instance files: a "m n" header line, then m whitespace-separated rows of n
// integers. Entries beyond the input magnitude cap are rejected.

TropMatrix parse_instance(std::istream& in);
TropMatrix load_instance(const std::string& path);

std::string emit_instance(const TropMatrix& A);
void save_instance(const TropMatrix& A, const std::string& path);

struct GenConfig {
  std::size_t rows = 1;
  std::size_t cols = 1;
  Value max_entry = 0;  // entries drawn uniformly from [0, max_entry]
  std::uint64_t seed = 0;
};

// Deterministic: the same (config, index) always yields the same matrix,
// byte-identical once emitted.
TropMatrix generate_instance(const GenConfig& config, std::uint64_t index);

}  // namespace troplin::io
