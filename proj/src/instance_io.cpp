#include "troplin/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace troplin::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw std::runtime_error("instance parse error: " + what);
}

// splitmix64: tiny, well-mixed, and stable across platforms, which keeps
// generated instances byte-identical everywhere.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Value draw_uniform(std::uint64_t& state, Value max_inclusive) {
  const auto range = static_cast<unsigned __int128>(max_inclusive) + 1;
  const auto x = static_cast<unsigned __int128>(splitmix64(state));
  return static_cast<Value>((x * range) >> 64);
}

}  // namespace

TropMatrix parse_instance(std::istream& in) {
  long long rows = 0, cols = 0;
  if (!(in >> rows >> cols)) parse_fail("expected 'm n' header");
  if (rows < 1 || cols < 1) parse_fail("dimensions must be positive");
  if (static_cast<std::size_t>(rows) > kDimensionCap ||
      static_cast<std::size_t>(cols) > kDimensionCap) {
    parse_fail("dimensions exceed the cap");
  }
  std::vector<Value> entries;
  entries.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (long long k = 0; k < rows * cols; ++k) {
    Value v = 0;
    if (!(in >> v)) parse_fail("expected " + std::to_string(rows * cols) + " entries");
    if (v > kEntryCap || v < -kEntryCap) parse_fail("entry magnitude exceeds the cap");
    entries.push_back(v);
  }
  std::string trailing;
  if (in >> trailing) parse_fail("unexpected trailing token '" + trailing + "'");
  return TropMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                    std::move(entries));
}

TropMatrix load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open instance file: " + path);
  }
  return parse_instance(in);
}

std::string emit_instance(const TropMatrix& A) {
  std::ostringstream out;
  out << A.rows() << ' ' << A.cols() << '\n';
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (j) out << ' ';
      out << A(i, j);
    }
    out << '\n';
  }
  return out.str();
}

void save_instance(const TropMatrix& A, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write instance file: " + path);
  }
  out << emit_instance(A);
}

TropMatrix generate_instance(const GenConfig& config, std::uint64_t index) {
  if (config.rows < 1 || config.cols < 1) {
    throw std::invalid_argument("generate_instance: dimensions must be positive");
  }
  if (config.max_entry < 0 || config.max_entry > kEntryCap) {
    throw std::invalid_argument("generate_instance: max_entry out of range");
  }
  std::uint64_t state = config.seed ^ (0x6a09e667f3bcc909ull + index * 0x9e3779b97f4a7c15ull);
  std::vector<Value> entries(config.rows * config.cols);
  for (auto& v : entries) v = draw_uniform(state, config.max_entry);
  return TropMatrix(config.rows, config.cols, std::move(entries));
}

}  // namespace troplin::io
