#include "qd/verify.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "qd/qsim.hpp"

namespace qd {

namespace {

constexpr double kTol = 1e-12;

std::string cell_name(int r, int c) {
  return "(" + std::string(to_string(bell_from_index(r))) + ", " +
         std::string(to_string(bell_from_index(c))) + ")";
}

// Decode through the table under test: the partner operation consistent
// with the announcement, or nothing if the count is not exactly one.
std::optional<PauliCode> table_decode(const SwapTable& table,
                                      Collection announced, BellClass initial,
                                      PauliCode own) {
  std::optional<PauliCode> found;
  BellClass own_class = pauli_action(initial, own);
  for (int u = 0; u < 4; ++u) {
    PauliCode candidate = pauli_from_bits(u);
    BellClass partner_class = pauli_action(initial, candidate);
    Collection cell = table.entry[static_cast<std::size_t>(bell_index(own_class))]
                                 [static_cast<std::size_t>(bell_index(partner_class))];
    if (cell != announced) continue;
    if (found) return std::nullopt;  // ambiguous
    found = candidate;
  }
  return found;
}

}  // namespace

VerifyReport verify_swap_identities(const SwapTable& table) {
  VerifyReport report;

  // 16 cells: simulate the two-pair cross measurement.
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      auto first = bell_from_index(r);
      auto second = bell_from_index(c);
      StateVector state = compose(prepare_bell(first), prepare_bell(second));
      auto probs = bell_outcome_probs(state, 0, 2);
      bool uniform = true;
      for (double p : probs) uniform = uniform && std::abs(p - 0.25) < kTol;
      if (!uniform)
        report.issues.push_back(
            {"cell " + cell_name(r, c),
             "first joint outcome is not uniform over the four classes"});

      std::optional<Collection> simulated;
      bool consistent = true;
      for (int m = 0; m < 4 && consistent; ++m) {
        auto m_a = bell_from_index(m);
        StateVector collapsed = project_bell(state, 0, 2, m_a);
        auto partner_probs = bell_outcome_probs(collapsed, 1, 3);
        int partner = -1;
        for (int k = 0; k < 4; ++k)
          if (std::abs(partner_probs[static_cast<std::size_t>(k)] - 1.0) < kTol)
            partner = k;
        if (partner < 0) {
          report.issues.push_back(
              {"cell " + cell_name(r, c),
               "partner outcome is not deterministic after the first"});
          consistent = false;
          break;
        }
        Collection col = classify_outcome(m_a, bell_from_index(partner));
        if (!simulated) simulated = col;
        if (*simulated != col) {
          report.issues.push_back(
              {"cell " + cell_name(r, c),
               "simulated outcomes span more than one collection"});
          consistent = false;
        }
      }
      if (!consistent || !simulated) continue;
      report.derived[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          *simulated;
      Collection claimed =
          table.entry[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      bool match = claimed == *simulated;
      report.cell_ok[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          match;
      if (!match)
        report.issues.push_back(
            {"cell " + cell_name(r, c),
             "simulation gives " + std::string(to_string(*simulated)) +
                 ", table says " + std::string(to_string(claimed))});
    }
  }

  // 16 encoding actions: amplitude classification against the label rule.
  for (int c = 0; c < 4; ++c) {
    for (int u = 0; u < 4; ++u) {
      auto cls = bell_from_index(c);
      auto op = pauli_from_bits(u);
      auto encoded = classify_bell_state(apply_single(op, 0, prepare_bell(cls)));
      if (encoded && *encoded == pauli_action(cls, op)) {
        ++report.pauli_checks_passed;
      } else {
        report.issues.push_back(
            {"action " + std::string(to_string(op)) + " on " +
                 std::string(to_string(cls)),
             "amplitude classification disagrees with the label rule"});
      }
    }
  }

  // Latin square: every row and column hits each collection once.
  report.latin_square_ok = true;
  for (int i = 0; i < 4; ++i) {
    std::array<int, 4> row_seen{}, col_seen{};
    for (int j = 0; j < 4; ++j) {
      row_seen[static_cast<std::size_t>(collection_index(
          table.entry[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]))]++;
      col_seen[static_cast<std::size_t>(collection_index(
          table.entry[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]))]++;
    }
    for (int k = 0; k < 4; ++k) {
      if (row_seen[static_cast<std::size_t>(k)] != 1) {
        report.latin_square_ok = false;
        report.issues.push_back({"row " + std::string(to_string(bell_from_index(i))),
                                 "does not contain every collection exactly once"});
        break;
      }
      if (col_seen[static_cast<std::size_t>(k)] != 1) {
        report.latin_square_ok = false;
        report.issues.push_back({"column " + std::string(to_string(bell_from_index(i))),
                                 "does not contain every collection exactly once"});
        break;
      }
    }
  }

  // 64 decode round-trips through the table under test, both directions.
  for (int c = 0; c < 4; ++c) {
    for (int ua = 0; ua < 4; ++ua) {
      for (int ub = 0; ub < 4; ++ub) {
        auto initial = bell_from_index(c);
        auto op_a = pauli_from_bits(ua);
        auto op_b = pauli_from_bits(ub);
        Collection announced =
            table.entry[static_cast<std::size_t>(bell_index(pauli_action(initial, op_a)))]
                       [static_cast<std::size_t>(bell_index(pauli_action(initial, op_b)))];
        auto alice_reads = table_decode(table, announced, initial, op_a);
        auto bob_reads = table_decode(table, announced, initial, op_b);
        if (alice_reads == op_b && bob_reads == op_a) {
          ++report.decode_checks_passed;
        } else {
          report.issues.push_back(
              {"decode " + std::string(to_string(initial)) + " " +
                   std::string(to_string(op_a)) + "/" +
                   std::string(to_string(op_b)),
               "round-trip through the table does not recover both operations"});
        }
      }
    }
  }

  return report;
}

std::string VerifyReport::render() const {
  std::string out = "swap table verification\n";
  out += "         ";
  for (int c = 0; c < 4; ++c) {
    out += to_string(bell_from_index(c));
    out += "     ";
  }
  out += '\n';
  for (int r = 0; r < 4; ++r) {
    std::string label(to_string(bell_from_index(r)));
    out += label + std::string(9 - label.size(), ' ');
    for (int c = 0; c < 4; ++c) {
      out += to_string(
          derived[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
      out += cell_ok[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]
                 ? " ok   "
                 : " BAD  ";
    }
    out += '\n';
  }
  out += "encoding actions: " + std::to_string(pauli_checks_passed) + "/16 ok\n";
  out += std::string("latin square: ") + (latin_square_ok ? "ok" : "BAD") + "\n";
  out += "decode round-trips: " + std::to_string(decode_checks_passed) +
         "/64 ok\n";
  for (const VerifyIssue& issue : issues)
    out += "issue: " + issue.where + ": " + issue.detail + "\n";
  out += std::string("result: ") + (ok() ? "PASS" : "FAIL") + "\n";
  return out;
}

SwapTable tampered_table(int row, int col) {
  if (row < 0 || row > 3 || col < 0 || col > 3)
    throw std::out_of_range("tamper cell indices must lie in 0..3");
  SwapTable table = swap_table();
  auto& cell =
      table.entry[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
  cell = collection_from_index(collection_index(cell) ^ 1);
  return table;
}

}  // namespace qd
