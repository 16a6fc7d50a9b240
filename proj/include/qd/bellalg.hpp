// Symbolic algebra of Bell classes: one-sided Pauli action, the
// entanglement-swapping outcome collections, the two-bit secret codec, and
// collection-table decoding. Everything here is exact integer bookkeeping;
// amplitude-level cross-checks live in the state-vector layer.

#pragma once

#include <array>
#include <string>
#include <string_view>

namespace qd {

// The four maximally entangled two-qubit classes, labeled by a bit-flip
// component x and a phase component z; enum value = (x<<1)|z.
//   Phi+ = (0,0)  (|00> + |11>)/sqrt2
//   Phi- = (0,1)  (|00> - |11>)/sqrt2
//   Psi+ = (1,0)  (|01> + |10>)/sqrt2
//   Psi- = (1,1)  (|01> - |10>)/sqrt2
enum class BellClass : int {
  PhiPlus = 0,
  PhiMinus = 1,
  PsiPlus = 2,
  PsiMinus = 3,
};

// Encoding operations. Enum value = the two-bit secret it encodes
// (I->00, X->01, iY->10, Z->11), which is distinct from the (x,z)
// action label the operator has on a Bell class.
enum class PauliCode : int {
  Identity = 0,
  SigmaX = 1,
  ISigmaY = 2,
  SigmaZ = 3,
};

// Outcome collections of the swapping table; enum value = (x<<1)|z of the
// intrinsic label C0=(0,0), C1=(0,1), C2=(1,0), C3=(1,1).
enum class Collection : int { C0 = 0, C1 = 1, C2 = 2, C3 = 3 };

constexpr int bell_index(BellClass c) { return static_cast<int>(c); }
constexpr int bell_x(BellClass c) { return (static_cast<int>(c) >> 1) & 1; }
constexpr int bell_z(BellClass c) { return static_cast<int>(c) & 1; }
BellClass bell_from_index(int index);            // throws on index outside 0..3
BellClass bell_from_labels(int x, int z);        // throws on non-bit labels

// Two-bit secret value encoded by op, high bit first (SigmaX -> 0b01).
constexpr int secret_bits(PauliCode op) { return static_cast<int>(op); }
PauliCode pauli_from_bits(int bits);             // throws on value outside 0..3

// (x,z) action label of op on a Bell class: I=(0,0), X=(1,0), iY=(1,1),
// Z=(0,1). Applying op to either particle of class c yields the class with
// labels (x^x_op, z^z_op), up to global phase.
constexpr int pauli_action_x(PauliCode op) {
  return (op == PauliCode::SigmaX || op == PauliCode::ISigmaY) ? 1 : 0;
}
constexpr int pauli_action_z(PauliCode op) {
  return (op == PauliCode::ISigmaY || op == PauliCode::SigmaZ) ? 1 : 0;
}

constexpr int collection_index(Collection c) { return static_cast<int>(c); }
Collection collection_from_index(int index);     // throws on index outside 0..3

std::string_view to_string(BellClass c);         // "Phi+", "Phi-", "Psi+", "Psi-"
std::string_view to_string(PauliCode op);        // "I", "sigma_x", "i_sigma_y", "sigma_z"
std::string_view to_string(Collection c);        // "C0".."C3"
BellClass bell_from_string(std::string_view s);  // throws on unknown name
PauliCode pauli_from_string(std::string_view s);
Collection collection_from_string(std::string_view s);

// Bell class of (op applied to one particle of class), ignoring global phase.
BellClass pauli_action(BellClass c, PauliCode op);

// The published swapping table: entry[first][second] is the collection the
// joint measurement outcomes fall in when the two input classes are first and
// second. Stored as literal data so it can be verified cell by cell against
// the state-vector oracle (and tampered with in negative-control tests).
struct SwapTable {
  std::array<std::array<Collection, 4>, 4> entry;
};

const SwapTable& swap_table();

// Table cell for (first, second), from the reference table.
Collection swap_collection(BellClass first, BellClass second);

// An ordered pair of joint measurement outcomes.
struct OutcomePair {
  BellClass first;
  BellClass second;
};

// The four ordered outcome pairs belonging to a collection. The member sets
// are disjoint and cover all 16 ordered pairs.
std::array<OutcomePair, 4> collection_members(Collection c);

// The unique collection whose member list contains (m_a, m_b).
Collection classify_outcome(BellClass m_a, BellClass m_b);

// Given the announced collection, the shared initial class, and one's own
// operation, recover the partner's operation by scanning the table row for
// one's own post-operation class: unique because every row of the table
// contains each collection exactly once.
PauliCode decode_partner(Collection announced, BellClass initial,
                         PauliCode own_op);

}  // namespace qd
