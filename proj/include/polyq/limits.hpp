#pragma once

#include <cstddef>

namespace polyq {

/// Resource caps shared by every enumerating operation. Exceeding a cap
/// raises ResourceError; nothing is ever silently truncated.
struct Limits {
  /// Rows held by any intermediate elimination system.
  std::size_t max_rows = 100000;
  /// Lattice points visited by integer-point enumerations.
  std::size_t max_lattice = 2000000;
  /// Subsets (row subsets, submatrices, partitions) visited by exhaustive oracles.
  std::size_t max_subsets = 20000000;
};

}  // namespace polyq
