#include "qd/particles.hpp"

#include <stdexcept>
#include <utility>

namespace qd {

ParticleStore::ParticleId ParticleStore::add_single(
    const StateVector& one_qubit) {
  if (one_qubit.num_qubits() != 1)
    throw std::invalid_argument("add_single expects a 1-qubit state");
  ParticleId id = static_cast<ParticleId>(slots_.size());
  int g = static_cast<int>(groups_.size());
  groups_.push_back(Group{one_qubit, {id}});
  slots_.push_back(Slot{g, 0});
  return id;
}

std::pair<ParticleStore::ParticleId, ParticleStore::ParticleId>
ParticleStore::add_bell_pair(BellClass c) {
  ParticleId first = static_cast<ParticleId>(slots_.size());
  ParticleId second = first + 1;
  int g = static_cast<int>(groups_.size());
  groups_.push_back(Group{prepare_bell(c), {first, second}});
  slots_.push_back(Slot{g, 0});
  slots_.push_back(Slot{g, 1});
  return {first, second};
}

bool ParticleStore::alive(ParticleId p) const {
  return p >= 0 && static_cast<std::size_t>(p) < slots_.size() &&
         slots_[static_cast<std::size_t>(p)].group >= 0;
}

const ParticleStore::Slot& ParticleStore::slot_of(ParticleId p) const {
  if (p < 0 || static_cast<std::size_t>(p) >= slots_.size())
    throw std::out_of_range("unknown particle id");
  const Slot& s = slots_[static_cast<std::size_t>(p)];
  if (s.group < 0) throw std::logic_error("particle was already measured");
  return s;
}

int ParticleStore::joint_size(ParticleId p) const {
  return groups_[static_cast<std::size_t>(slot_of(p).group)]
      .state.num_qubits();
}

const StateVector& ParticleStore::joint_state(ParticleId p) const {
  return groups_[static_cast<std::size_t>(slot_of(p).group)].state;
}

int ParticleStore::position_of(ParticleId p) const {
  return slot_of(p).position;
}

void ParticleStore::apply_pauli(ParticleId p, PauliCode op) {
  const Slot& s = slot_of(p);
  Group& g = groups_[static_cast<std::size_t>(s.group)];
  g.state = apply_single(op, s.position, g.state);
}

void ParticleStore::apply_one_qubit(ParticleId p,
                                    const std::array<cdouble, 4>& m) {
  const Slot& s = slot_of(p);
  Group& g = groups_[static_cast<std::size_t>(s.group)];
  g.state = qd::apply_one_qubit(m, s.position, g.state);
}

ParticleStore::ParticleId ParticleStore::attach_ancilla(
    ParticleId p, const StateVector& one_qubit) {
  if (one_qubit.num_qubits() != 1)
    throw std::invalid_argument("ancilla must be a 1-qubit state");
  const Slot& s = slot_of(p);
  Group& g = groups_[static_cast<std::size_t>(s.group)];
  ParticleId id = static_cast<ParticleId>(slots_.size());
  g.state = compose(g.state, one_qubit);
  g.members.push_back(id);
  slots_.push_back(Slot{s.group, g.state.num_qubits() - 1});
  return id;
}

int ParticleStore::fuse(int group_a, int group_b) {
  if (group_a == group_b) return group_a;
  Group& a = groups_[static_cast<std::size_t>(group_a)];
  Group& b = groups_[static_cast<std::size_t>(group_b)];
  int offset = a.state.num_qubits();
  a.state = compose(a.state, b.state);
  for (ParticleId p : b.members) {
    Slot& s = slots_[static_cast<std::size_t>(p)];
    s.group = group_a;
    s.position += offset;
    a.members.push_back(p);
  }
  b.members.clear();
  b.state = StateVector(0, {cdouble{1.0, 0.0}});
  return group_a;
}

void ParticleStore::remove_qubit(int group, int pos, StateVector remainder) {
  Group& g = groups_[static_cast<std::size_t>(group)];
  ParticleId gone = g.members[static_cast<std::size_t>(pos)];
  slots_[static_cast<std::size_t>(gone)] = Slot{-1, -1};
  g.members.erase(g.members.begin() + pos);
  for (std::size_t i = static_cast<std::size_t>(pos); i < g.members.size(); ++i)
    slots_[static_cast<std::size_t>(g.members[i])].position -= 1;
  g.state = std::move(remainder);
}

void ParticleStore::remove_qubits(int group, int pos_a, int pos_b,
                                  StateVector remainder) {
  // Remove the higher position first so the lower one stays valid.
  int hi = pos_a > pos_b ? pos_a : pos_b;
  int lo = pos_a > pos_b ? pos_b : pos_a;
  Group& g = groups_[static_cast<std::size_t>(group)];
  for (int pos : {hi, lo}) {
    ParticleId gone = g.members[static_cast<std::size_t>(pos)];
    slots_[static_cast<std::size_t>(gone)] = Slot{-1, -1};
    g.members.erase(g.members.begin() + pos);
    for (std::size_t i = static_cast<std::size_t>(pos); i < g.members.size();
         ++i)
      slots_[static_cast<std::size_t>(g.members[i])].position -= 1;
  }
  g.state = std::move(remainder);
}

void ParticleStore::apply_two_qubit(ParticleId a, ParticleId b,
                                    const std::array<cdouble, 16>& m) {
  if (a == b) throw std::invalid_argument("two-qubit target must be distinct");
  int g = fuse(slot_of(a).group, slot_of(b).group);
  Group& grp = groups_[static_cast<std::size_t>(g)];
  grp.state = qd::apply_two_qubit(m, slot_of(a).position, slot_of(b).position,
                                  grp.state);
}

int ParticleStore::measure(ParticleId p, Basis basis, Rng& rng) {
  const Slot s = slot_of(p);
  Group& g = groups_[static_cast<std::size_t>(s.group)];
  auto [bit, rest] = measure_single(g.state, s.position, basis, rng);
  remove_qubit(s.group, s.position, std::move(rest));
  return bit;
}

int ParticleStore::project_measure(ParticleId p, Basis basis, Rng& rng) {
  const Slot s = slot_of(p);
  Group& g = groups_[static_cast<std::size_t>(s.group)];
  auto probs = single_outcome_probs(g.state, s.position, basis);
  int bit = rng.pick_weighted(probs.data(), 2);
  g.state = project_single(g.state, s.position, basis, bit);
  return bit;
}

BellClass ParticleStore::measure_bell(ParticleId a, ParticleId b, Rng& rng) {
  if (a == b) throw std::invalid_argument("measured pair must be distinct");
  int g = fuse(slot_of(a).group, slot_of(b).group);
  Group& grp = groups_[static_cast<std::size_t>(g)];
  int pos_a = slot_of(a).position;
  int pos_b = slot_of(b).position;
  auto [outcome, rest] = measure_bell_pair(grp.state, pos_a, pos_b, rng);
  remove_qubits(g, pos_a, pos_b, std::move(rest));
  return outcome;
}

DensityMatrix ParticleStore::reduced_density(ParticleId p) const {
  const Slot& s = slot_of(p);
  const Group& g = groups_[static_cast<std::size_t>(s.group)];
  return qd::reduced_density(g.state, {s.position});
}

int ParticleStore::live_count() const {
  int n = 0;
  for (const Slot& s : slots_)
    if (s.group >= 0) ++n;
  return n;
}

}  // namespace qd
