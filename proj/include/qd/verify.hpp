// Independent verification of the swapping table and its algebra against
// the state-vector simulator: every cell is re-derived by simulating the
// two-pair measurement, the encoding action is re-derived by amplitude
// classification, and the decode search is exercised in both directions.
// The table is a parameter so a deliberately corrupted copy serves as a
// negative control.

#pragma once

#include <string>
#include <vector>

#include "qd/bellalg.hpp"

namespace qd {

struct VerifyIssue {
  std::string where;   // which check and which cell/entry
  std::string detail;  // expected vs found
};

struct VerifyReport {
  // matrix[r][c] = what the simulation derived for the cell (class r, class
  // c); compared against the table under test.
  std::array<std::array<Collection, 4>, 4> derived{};
  std::array<std::array<bool, 4>, 4> cell_ok{};
  int pauli_checks_passed = 0;   // out of 16
  bool latin_square_ok = false;
  int decode_checks_passed = 0;  // out of 64
  std::vector<VerifyIssue> issues;

  bool ok() const { return issues.empty(); }
  // Human-readable pass/fail matrix plus one line per issue.
  std::string render() const;
};

VerifyReport verify_swap_identities(const SwapTable& table);

// The canonical table with one cell replaced by a wrong collection;
// verification against it must fail naming that cell. Throws
// std::out_of_range for indices outside 0..3.
SwapTable tampered_table(int row, int col);

}  // namespace qd
