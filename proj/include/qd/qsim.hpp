// Exact state-vector simulation for up to five qubits: preparation of the
// four entangled pair classes and of Z/X basis singles, Pauli and general
// one-/two-qubit unitaries, Bell-basis and single-qubit projective
// measurement, and partial trace to density matrices.
//
// Conventions:
//   - Qubit 0 is the leftmost ket position; basis-state integers carry qubit 0
//     as the most significant bit, so |01> on two qubits is index 1.
//   - Operations never renormalize global phase; comparisons against expected
//     states are made exactly or via |<expected|actual>| = 1.
//   - Measurement helpers come in two flavors: project_* keeps the measured
//     qubits (collapsed in place), collapse_* removes them from the register.
//     The protocol never reuses measured particles, so its paths use the
//     removing flavor; the keeping flavor exists for attack modeling and for
//     repeated-measurement tests.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qd/bellalg.hpp"
#include "qd/rng.hpp"

namespace qd {

using cdouble = std::complex<double>;

inline constexpr int kMaxQubits = 5;
// Loose tolerance for state invariants (norm, Hermiticity, trace).
inline constexpr double kInvariantTol = 1e-10;
// Tight tolerance for exact algebraic identities at dimension <= 32.
inline constexpr double kAlgebraTol = 1e-12;

enum class Basis { Z, X };

std::string_view to_string(Basis b);  // "Z" or "X"
Basis basis_from_string(std::string_view s);

// Normalized pure state over num_qubits qubits. Immutable after construction.
// num_qubits may be 0: the dimension-1 terminal state left over once every
// qubit of a register has been measured and removed.
class StateVector {
 public:
  // Validates 0 <= num_qubits <= kMaxQubits, amplitude count = 2^num_qubits,
  // and unit norm within kInvariantTol.
  StateVector(int num_qubits, std::vector<cdouble> amplitudes);

  // |0>, |1>, |+> or |-> depending on (basis, bit).
  static StateVector single(Basis basis, int bit);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cdouble>& amplitudes() const { return amps_; }
  cdouble amplitude(std::size_t index) const { return amps_.at(index); }

 private:
  int num_qubits_;
  std::vector<cdouble> amps_;
};

// Two-qubit state of the given class, exact amplitudes with +1/sqrt2 leading
// coefficient (Phi+ -> (1,0,0,1)/sqrt2, Psi- -> (0,1,-1,0)/sqrt2, ...).
StateVector prepare_bell(BellClass c);

// Tensor product in argument order; qubit indices assigned left to right.
// Throws std::length_error if the composite would exceed kMaxQubits.
StateVector compose(std::span<const StateVector> parts);
StateVector compose(const StateVector& a, const StateVector& b);

// Row-major 2x2 matrix {m00, m01, m10, m11} of the encoding operation.
// i_sigma_y is the real matrix {0, 1, -1, 0}.
std::array<cdouble, 4> pauli_matrix(PauliCode op);

// Apply a 2x2 unitary at the given qubit. No unitarity check: callers own
// that invariant (the named entry points below all pass unitaries).
StateVector apply_one_qubit(const std::array<cdouble, 4>& m, int index,
                            const StateVector& s);
StateVector apply_single(PauliCode op, int index, const StateVector& s);

// Apply a 4x4 unitary to the ordered qubit pair (q_a, q_b); row/column index
// = 2*bit(q_a) + bit(q_b). Indices must be distinct and in range.
StateVector apply_two_qubit(const std::array<cdouble, 16>& m, int q_a, int q_b,
                            const StateVector& s);

// Born probabilities of the four Bell outcomes on the ordered pair
// (q_a, q_b), indexed by bell_index. Always sums to 1 within kAlgebraTol.
std::array<double, 4> bell_outcome_probs(const StateVector& s, int q_a,
                                         int q_b);

// Renormalized post-measurement state for a given Bell outcome, keeping the
// measured pair in place. Throws std::domain_error if the outcome has zero
// probability.
StateVector project_bell(const StateVector& s, int q_a, int q_b,
                         BellClass outcome);

// Same collapse, with the measured pair removed from the register.
StateVector collapse_bell(const StateVector& s, int q_a, int q_b,
                          BellClass outcome);

// Sample a Bell outcome by the Born rule and return it with the collapsed,
// pair-removed state.
std::pair<BellClass, StateVector> measure_bell_pair(const StateVector& s,
                                                    int q_a, int q_b,
                                                    Rng& rng);

// Born probabilities of outcome bits 0/1 at the given qubit in the given
// basis (bit 0 -> |0> or |+>, bit 1 -> |1> or |->).
std::array<double, 2> single_outcome_probs(const StateVector& s, int index,
                                           Basis basis);

StateVector project_single(const StateVector& s, int index, Basis basis,
                           int bit);
StateVector collapse_single(const StateVector& s, int index, Basis basis,
                            int bit);
std::pair<int, StateVector> measure_single(const StateVector& s, int index,
                                           Basis basis, Rng& rng);

// <a|b> with the conjugate on a. Dimensions must match.
cdouble inner_product(const StateVector& a, const StateVector& b);

// The class c with |<bell(c)|s>| = 1 within kAlgebraTol, if s is a two-qubit
// state equal to one of the four classes up to global phase.
std::optional<BellClass> classify_bell_state(const StateVector& s);

// Correlation rule for qubit-wise measurement of an entangled pair: whether
// the two halves of a pair of class c must yield equal bits when both are
// measured in this basis (true for Phi classes in Z and for zero-phase
// classes in X).
bool same_outcome_expected(BellClass c, Basis basis);

// Hermitian, unit-trace, positive-semidefinite matrix. Immutable.
class DensityMatrix {
 public:
  // Validates Hermiticity and unit trace within kInvariantTol and eigenvalue
  // nonnegativity within the same tolerance. Entries are row-major.
  DensityMatrix(int dimension, std::vector<cdouble> entries);

  int dimension() const { return dimension_; }
  const std::vector<cdouble>& entries() const { return entries_; }
  cdouble entry(int row, int col) const;

  // Real spectrum in ascending order.
  std::vector<double> eigenvalues() const;

 private:
  int dimension_;
  std::vector<cdouble> entries_;
};

// Partial trace onto the listed qubits (distinct, in range, nonempty); the
// result is indexed by the kept qubits in the order given.
DensityMatrix reduced_density(const StateVector& s, std::span<const int> keep);
DensityMatrix reduced_density(const StateVector& s,
                              std::initializer_list<int> keep);

}  // namespace qd
