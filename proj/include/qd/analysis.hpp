// Security analysis of the probe attack and the protocol's information
// accounting: the attacked-qubit density operator, its closed-form spectrum,
// the eavesdropper information curve I(d), the exhaustive announcement
// leakage audit, and the qubit-efficiency ratio.

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "qd/bellalg.hpp"
#include "qd/protocol.hpp"
#include "qd/qsim.hpp"

namespace qd {

// Priors over the four encoding operations (I, sigma_x, i*sigma_y, sigma_z)
// together with the probe's detection probability d = |beta|^2.
struct AttackAnalysisParams {
  std::array<double, 4> priors{0.25, 0.25, 0.25, 0.25};
  double d = 0.0;

  static AttackAnalysisParams uniform(double d);
  // Throws std::invalid_argument unless priors are nonnegative, sum to 1
  // within 1e-12, and d lies in [0,1].
  void validate() const;
};

// One point of the information curve: detection probability, the four
// eigenvalues of the attacked state, and the resulting information in bits.
struct EveInfoPoint {
  double d = 0.0;
  std::array<double, 4> eigenvalues{};
  double info = 0.0;

  void validate() const;  // eigenvalues >= -1e-12, sum to 1 within 1e-10
};

// Exhaustive enumeration of (initial class, Alice op, Bob op) under uniform
// priors, with the announced collection computed for each triple.
struct LeakageAudit {
  struct Entry {
    BellClass initial;
    PauliCode alice_op;
    PauliCode bob_op;
    Collection announced;
    double probability;
  };
  std::vector<Entry> joint;          // all 64 triples
  double prior_entropy_bits;         // H(op pair)
  double conditional_entropy_bits;   // H(op pair | announced collection)
  double mutual_information_bits;    // I(op pair ; announced collection)
  // The published figure for the conditional uncertainty, echoed for
  // side-by-side comparison; the enumeration above is the ground truth and
  // this value is never asserted against it.
  double claimed_conditional_entropy_bits;
};

struct EfficiencyReport {
  long long secret_bits = 0;        // b_s
  long long qubits_used = 0;        // q_t
  long long classical_bits = 0;     // b_t
  double eta = 0.0;                 // b_s / (q_t + b_t)
};

// Shannon entropy in bits of a probability distribution (0*log0 = 0).
// Throws std::invalid_argument on negative entries or a sum off 1 by more
// than 1e-10.
double shannon_entropy(std::span<const double> probs);

// The 4x4 state of (receiver qubit, probe arm) after the probe touched a
// |0> carrier and the sender encoded with the given priors, written in the
// orthogonal basis {|0,e00>, |1,e01>, |1,e00>, |0,e01>}. alpha and beta are
// the probe's pass/flip amplitudes; |alpha|^2 + |beta|^2 must be 1 and
// |beta|^2 must equal params.d (both within 1e-9).
DensityMatrix build_rho(const AttackAnalysisParams& params, cdouble alpha,
                        cdouble beta);
// Convenience: real amplitudes alpha = sqrt(1-d), beta = sqrt(d).
DensityMatrix build_rho(const AttackAnalysisParams& params);

// Closed-form eigenvalues of build_rho's matrix, one +/- pair per block:
// {s0/2 + r0, s0/2 - r0, s1/2 + r1, s1/2 - r1} where s0 = p0+p3,
// s1 = p1+p2 and r_k = sqrt(s_k^2 - 16 p p (d - d^2)) / 2. Throws when a
// discriminant falls below -1e-12.
std::array<double, 4> attack_eigenvalues(const AttackAnalysisParams& params);

// -sum lambda_i log2 lambda_i with 0*log0 = 0. Validates the spectrum
// (entries >= -1e-12, sum within 1e-10 of 1).
double von_neumann_info(std::span<const double> eigenvalues);

// Information gained per attacked qubit when the carrier is |0> (or |1>);
// the two cases are symmetric and each equals the binary-channel entropy
// -d log2(d/2) - (1-d) log2((1-d)/2).
double eve_info_carrier0(double d);
double eve_info_carrier1(double d);
// The average of the two carrier cases: I(d) = 1 - d log2 d
// - (1-d) log2(1-d). Throws unless 0 <= d <= 1.
double eve_info(double d);

// The information curve sampled on the uniform grid d_i = i/round(1/step)
// over [0,1]. Requires 0 < step <= 0.5.
std::vector<EveInfoPoint> information_curve(double step);

// The curve as CSV: header "d,I", one row per grid point, shortest
// round-trip decimal representation.
std::string fig1_csv(double step);

LeakageAudit leakage_audit();

// eta = b_s / (q_t + b_t). Throws std::invalid_argument when the
// denominator is zero or negative.
EfficiencyReport cabello_efficiency(long long secret_bits, long long qubits,
                                    long long classical_bits);
// Reads the three counts from a completed session's tallies; throws for
// aborted sessions (no secret was exchanged).
EfficiencyReport cabello_efficiency(const SessionTranscript& transcript);

}  // namespace qd
