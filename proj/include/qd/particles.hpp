// Bookkeeping for many physical particles spread over independent joint
// states. Each particle lives at a qubit position inside one joint state;
// operations that span two joint states fuse them first (tensor product),
// and measurements remove the measured qubits, shrinking or retiring the
// joint state. This is what lets a session reason in terms of named
// particles (A3, B3, a decoy, an ancilla) while the simulator only ever
// sees small state vectors.

#pragma once

#include <cstddef>
#include <vector>

#include "qd/qsim.hpp"

namespace qd {

class ParticleStore {
 public:
  using ParticleId = int;

  ParticleStore() = default;

  // A fresh 1-qubit particle in the given state.
  ParticleId add_single(const StateVector& one_qubit);

  // A fresh entangled pair; returns (first half, second half).
  std::pair<ParticleId, ParticleId> add_bell_pair(BellClass c);

  bool alive(ParticleId p) const;
  // Number of particles sharing p's joint state (including p).
  int joint_size(ParticleId p) const;
  // The joint state p belongs to, and p's qubit position inside it.
  const StateVector& joint_state(ParticleId p) const;
  int position_of(ParticleId p) const;

  void apply_pauli(ParticleId p, PauliCode op);
  void apply_one_qubit(ParticleId p, const std::array<cdouble, 4>& m);

  // Fuse a fresh 1-qubit particle into p's joint state (appended on the
  // right) and return its id. Used for attaching probe ancillas.
  ParticleId attach_ancilla(ParticleId p, const StateVector& one_qubit);

  // Apply a 4x4 unitary to the ordered particle pair, fusing their joint
  // states first when they differ.
  void apply_two_qubit(ParticleId a, ParticleId b,
                       const std::array<cdouble, 16>& m);

  // Projective single-qubit measurement that removes the particle.
  int measure(ParticleId p, Basis basis, Rng& rng);

  // Measurement that collapses in place and keeps the particle alive
  // (models measure-and-resend of the same eigenstate).
  int project_measure(ParticleId p, Basis basis, Rng& rng);

  // Joint measurement of the ordered pair (a, b); fuses if needed, removes
  // both particles.
  BellClass measure_bell(ParticleId a, ParticleId b, Rng& rng);

  // Partial trace of p's joint state onto p alone.
  DensityMatrix reduced_density(ParticleId p) const;

  int live_count() const;

 private:
  struct Group {
    StateVector state{0, {cdouble{1.0, 0.0}}};
    std::vector<ParticleId> members;  // members[i] occupies qubit i
  };
  struct Slot {
    int group = -1;     // index into groups_, -1 once measured
    int position = -1;  // qubit position within the group
  };

  const Slot& slot_of(ParticleId p) const;
  // Merge group b into group a (tensor on the right); returns a's index.
  int fuse(int group_a, int group_b);
  void remove_qubits(int group, int pos_a, int pos_b, StateVector remainder);
  void remove_qubit(int group, int pos, StateVector remainder);

  std::vector<Group> groups_;
  std::vector<Slot> slots_;
};

}  // namespace qd
