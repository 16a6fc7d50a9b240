#include "qd/bellalg.hpp"

#include <stdexcept>

namespace qd {

namespace {

std::string bad_value(std::string_view what, std::string_view got) {
  std::string msg(what);
  msg += ": ";
  msg.append(got);
  return msg;
}

}  // namespace

BellClass bell_from_index(int index) {
  if (index < 0 || index > 3)
    throw std::out_of_range("bell class index must be 0..3");
  return static_cast<BellClass>(index);
}

BellClass bell_from_labels(int x, int z) {
  if ((x & ~1) != 0 || (z & ~1) != 0)
    throw std::out_of_range("bell class labels must be bits");
  return static_cast<BellClass>((x << 1) | z);
}

PauliCode pauli_from_bits(int bits) {
  if (bits < 0 || bits > 3)
    throw std::out_of_range("secret bit pair must be 0..3");
  return static_cast<PauliCode>(bits);
}

Collection collection_from_index(int index) {
  if (index < 0 || index > 3)
    throw std::out_of_range("collection index must be 0..3");
  return static_cast<Collection>(index);
}

std::string_view to_string(BellClass c) {
  switch (c) {
    case BellClass::PhiPlus: return "Phi+";
    case BellClass::PhiMinus: return "Phi-";
    case BellClass::PsiPlus: return "Psi+";
    case BellClass::PsiMinus: return "Psi-";
  }
  throw std::logic_error("corrupt BellClass");
}

std::string_view to_string(PauliCode op) {
  switch (op) {
    case PauliCode::Identity: return "I";
    case PauliCode::SigmaX: return "sigma_x";
    case PauliCode::ISigmaY: return "i_sigma_y";
    case PauliCode::SigmaZ: return "sigma_z";
  }
  throw std::logic_error("corrupt PauliCode");
}

std::string_view to_string(Collection c) {
  switch (c) {
    case Collection::C0: return "C0";
    case Collection::C1: return "C1";
    case Collection::C2: return "C2";
    case Collection::C3: return "C3";
  }
  throw std::logic_error("corrupt Collection");
}

BellClass bell_from_string(std::string_view s) {
  for (int i = 0; i < 4; ++i) {
    BellClass c = static_cast<BellClass>(i);
    if (s == to_string(c)) return c;
  }
  throw std::invalid_argument(bad_value("unknown bell class", s));
}

PauliCode pauli_from_string(std::string_view s) {
  for (int i = 0; i < 4; ++i) {
    PauliCode op = static_cast<PauliCode>(i);
    if (s == to_string(op)) return op;
  }
  throw std::invalid_argument(bad_value("unknown operation", s));
}

Collection collection_from_string(std::string_view s) {
  for (int i = 0; i < 4; ++i) {
    Collection c = static_cast<Collection>(i);
    if (s == to_string(c)) return c;
  }
  throw std::invalid_argument(bad_value("unknown collection", s));
}

BellClass pauli_action(BellClass c, PauliCode op) {
  int x = bell_x(c) ^ pauli_action_x(op);
  int z = bell_z(c) ^ pauli_action_z(op);
  return static_cast<BellClass>((x << 1) | z);
}

const SwapTable& swap_table() {
  // Literal data, row = first input class, column = second. Kept as an
  // explicit table (rather than a formula) so verification against the
  // amplitude-level oracle is meaningful.
  using enum Collection;
  static const SwapTable table{{{
      {{C0, C1, C2, C3}},  // row Phi+
      {{C1, C0, C3, C2}},  // row Phi-
      {{C2, C3, C0, C1}},  // row Psi+
      {{C3, C2, C1, C0}},  // row Psi-
  }}};
  return table;
}

Collection swap_collection(BellClass first, BellClass second) {
  return swap_table().entry[bell_index(first)][bell_index(second)];
}

std::array<OutcomePair, 4> collection_members(Collection c) {
  std::array<OutcomePair, 4> members{};
  std::size_t found = 0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (swap_table().entry[a][b] == c) {
        if (found == members.size())
          throw std::logic_error("collection has more than four members");
        members[found++] = {static_cast<BellClass>(a),
                            static_cast<BellClass>(b)};
      }
    }
  }
  if (found != members.size())
    throw std::logic_error("collection has fewer than four members");
  return members;
}

Collection classify_outcome(BellClass m_a, BellClass m_b) {
  for (int i = 0; i < 4; ++i) {
    Collection c = static_cast<Collection>(i);
    for (const OutcomePair& p : collection_members(c)) {
      if (p.first == m_a && p.second == m_b) return c;
    }
  }
  throw std::logic_error("outcome pair missing from every collection");
}

PauliCode decode_partner(Collection announced, BellClass initial,
                         PauliCode own_op) {
  BellClass own_class = pauli_action(initial, own_op);
  for (int bits = 0; bits < 4; ++bits) {
    PauliCode candidate = static_cast<PauliCode>(bits);
    BellClass partner_class = pauli_action(initial, candidate);
    if (swap_collection(own_class, partner_class) == announced)
      return candidate;
  }
  throw std::logic_error("no operation consistent with announcement");
}

}  // namespace qd
