#pragma once

#include <cstdint>
#include <istream>
#include <vector>

#include "mdlreg/tempering.hpp"

// The learning rules on explicit hypothesis tables: exact and approximate
// MDL objectives, the constrained MDL selector, and the SRM selector.

namespace mdlreg {

struct Hypothesis {
  std::uint64_t id;
  double desc_len;           // -log2 pi(h), bits
  std::uint64_t error_count; // in [0, m]
};

struct HypothesisTable {
  std::vector<Hypothesis> entries;
  std::uint64_t m = 0;

  // Checks desc_len >= 0, error_count <= m, unique ids and Kraft validity
  // (sum 2^-desc_len <= 1 + 1e-9).  Throws std::invalid_argument.
  void validate() const;
};

struct Objective {
  double exact;   // J_lambda  = lambda*desc + log2 C(m, e)
  double approx;  // J~_lambda = lambda*desc + m*H(e/m)
};

Objective objective(RegParam lambda, double desc_len,
                    std::uint64_t error_count, std::uint64_t m);

// argmin of the chosen objective over entries with 2*error_count <= m.
// Tie-break: smaller desc_len, then smaller error_count, then smaller id.
// Throws std::runtime_error("no feasible hypothesis") when the constraint
// empties the table.
std::uint64_t mdl_select(RegParam lambda, const HypothesisTable& table,
                         bool use_exact = true);

// argmin of error_count/m + sqrt(desc_len/m); no feasibility constraint.
std::uint64_t srm_select(const HypothesisTable& table);

// CSV columns: id, desc_len_bits, error_count.  '#' lines and a header
// row are skipped.
HypothesisTable load_table_csv(std::istream& in, std::uint64_t m);

}  // namespace mdlreg
