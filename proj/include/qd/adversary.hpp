// Channel abstraction with pluggable eavesdropper models. The channel
// carries store particles from sender to receiver; an attack transforms
// each transmitted particle and leaves a full record of Eve's classical
// wiretaps and quantum actions. Attacks:
//   - measure-resend: Eve measures each qubit in a random Z/X basis and
//     forwards the observed eigenstate.
//   - intercept-substitute: Eve keeps the qubit and forwards a fresh one
//     drawn uniformly from {|0>, |1>, |+>, |->}.
//   - entangle-measure: Eve entangles each qubit with a fresh |0> ancilla
//     via a fixed probe unitary with flip probability |beta|^2, then
//     measures the ancilla immediately (equivalent, for every protocol
//     observable, to storing it, by deferred measurement).

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qd/particles.hpp"
#include "qd/qsim.hpp"

namespace qd {

enum class AttackKind {
  None,
  MeasureResend,
  InterceptSubstitute,
  EntangleMeasure,
};

std::string_view to_string(AttackKind k);

struct AttackModel {
  AttackKind kind = AttackKind::None;
  // Flip probability |beta|^2 of the probe unitary; meaningful only for
  // EntangleMeasure.
  double strength = 0.0;

  // Grammar: none | measure-resend | intercept | entangle:<beta2> with
  // beta2 a decimal in [0,1]. Throws std::invalid_argument on anything else.
  static AttackModel parse(std::string_view spec);
  std::string spec_string() const;
  void validate() const;
};

// Which of the two quantum transmissions a channel use belongs to.
enum class TransmissionLeg { First, Second };

std::string_view to_string(TransmissionLeg leg);

// One quantum action by Eve on one transmitted particle.
struct EveAction {
  TransmissionLeg leg;
  int position = 0;  // index within the transmitted sequence
  AttackKind kind = AttackKind::None;
  std::optional<Basis> basis;           // measure-resend: Eve's basis
  std::optional<int> outcome;           // measured bit / ancilla bit
  std::optional<std::string> substitute;  // intercept: forwarded state name
  std::optional<ParticleStore::ParticleId> stored;  // intercept: kept particle
};

// Everything Eve ends up holding: wiretapped classical traffic, her quantum
// actions, and any particles she captured.
struct EveLog {
  std::vector<std::string> classical;
  std::vector<EveAction> actions;

  void wiretap(std::string message);
  std::vector<ParticleStore::ParticleId> stored_particles() const;
};

// The 4x4 probe unitary on (data, ancilla) with real flip amplitude
// beta = sqrt(beta_sq): |0>|0> -> alpha|00> + beta|11>,
// |1>|0> -> alpha|10> + beta|01>. Throws if beta_sq is outside [0,1].
std::array<cdouble, 16> entangle_probe_unitary(double beta_sq);

// Per-particle attack applications. Each returns the particle id actually
// delivered to the receiver (differs from the input only for
// intercept-substitute) and appends one action record.
ParticleStore::ParticleId attack_measure_resend(ParticleStore& store,
                                                ParticleStore::ParticleId p,
                                                Rng& rng, EveAction& record);
ParticleStore::ParticleId attack_intercept_substitute(
    ParticleStore& store, ParticleStore::ParticleId p, Rng& rng,
    EveAction& record);
ParticleStore::ParticleId attack_entangle_measure(ParticleStore& store,
                                                  ParticleStore::ParticleId p,
                                                  double beta_sq, Rng& rng,
                                                  EveAction& record);

// Send a particle sequence through the channel under the given attack;
// returns the delivered sequence. log may be null (actions are dropped).
std::vector<ParticleStore::ParticleId> transmit(
    ParticleStore& store,
    const std::vector<ParticleStore::ParticleId>& sequence,
    TransmissionLeg leg, const AttackModel& attack, Rng& rng, EveLog* log);

// Empirical detection statistics for one of the two checks run stand-alone
// against an attack, with per-basis breakdown (check one: the measuring
// basis; check two: the decoy preparation basis).
struct DetectionStats {
  int trials = 0;
  int mismatches = 0;
  int z_trials = 0;
  int z_mismatches = 0;
  int x_trials = 0;
  int x_mismatches = 0;

  double rate() const;
  double std_error() const;
  double z_rate() const;
  double x_rate() const;
};

// One trial = one random-class sample pair, attacked on its transmitted
// half, checked by the correlation rule in a random basis.
DetectionStats detection_stats_check_one(const AttackModel& attack, int trials,
                                         Rng& rng);
// One trial = one random decoy from {|0>,|1>,|+>,|->}, attacked, measured
// in its preparation basis, compared with the prepared bit.
DetectionStats detection_stats_check_two(const AttackModel& attack, int trials,
                                         Rng& rng);

}  // namespace qd
