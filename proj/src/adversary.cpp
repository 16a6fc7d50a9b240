#include "qd/adversary.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qd {

namespace {

// The four substitute states Eve can forward, with display names.
struct Substitute {
  const char* name;
  Basis basis;
  int bit;
};

constexpr Substitute kSubstitutes[4] = {
    {"0", Basis::Z, 0},
    {"1", Basis::Z, 1},
    {"+", Basis::X, 0},
    {"-", Basis::X, 1},
};

}  // namespace

std::string_view to_string(AttackKind k) {
  switch (k) {
    case AttackKind::None: return "none";
    case AttackKind::MeasureResend: return "measure-resend";
    case AttackKind::InterceptSubstitute: return "intercept";
    case AttackKind::EntangleMeasure: return "entangle";
  }
  throw std::logic_error("corrupt AttackKind");
}

std::string_view to_string(TransmissionLeg leg) {
  return leg == TransmissionLeg::First ? "first" : "second";
}

AttackModel AttackModel::parse(std::string_view spec) {
  AttackModel model;
  if (spec == "none") {
    model.kind = AttackKind::None;
  } else if (spec == "measure-resend") {
    model.kind = AttackKind::MeasureResend;
  } else if (spec == "intercept") {
    model.kind = AttackKind::InterceptSubstitute;
  } else if (spec.starts_with("entangle:")) {
    model.kind = AttackKind::EntangleMeasure;
    std::string_view num = spec.substr(9);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc{} || ptr != num.data() + num.size())
      throw std::invalid_argument("bad attack strength: " + std::string(num));
    model.strength = value;
  } else {
    throw std::invalid_argument("unknown attack spec: " + std::string(spec));
  }
  model.validate();
  return model;
}

std::string AttackModel::spec_string() const {
  if (kind != AttackKind::EntangleMeasure) return std::string(to_string(kind));
  return "entangle:" + std::to_string(strength);
}

void AttackModel::validate() const {
  if (kind == AttackKind::EntangleMeasure) {
    if (!(strength >= 0.0 && strength <= 1.0))
      throw std::invalid_argument("attack strength must lie in [0,1]");
  } else if (strength != 0.0) {
    throw std::invalid_argument("strength is only meaningful for entangle");
  }
}

void EveLog::wiretap(std::string message) {
  classical.push_back(std::move(message));
}

std::vector<ParticleStore::ParticleId> EveLog::stored_particles() const {
  std::vector<ParticleStore::ParticleId> out;
  for (const EveAction& a : actions)
    if (a.stored) out.push_back(*a.stored);
  return out;
}

std::array<cdouble, 16> entangle_probe_unitary(double beta_sq) {
  if (!(beta_sq >= 0.0 && beta_sq <= 1.0))
    throw std::invalid_argument("flip probability must lie in [0,1]");
  double beta = std::sqrt(beta_sq);
  double alpha = std::sqrt(1.0 - beta_sq);
  // Columns are images of |data,ancilla> basis states 00,01,10,11:
  //   |00> -> alpha|00> + beta|11>      |01> -> alpha|01> - beta|10>
  //   |10> -> alpha|10> + beta|01>      |11> -> alpha|11> - beta|00>
  return {alpha, 0.0,   0.0,  -beta,  //
          0.0,   alpha, beta, 0.0,    //
          0.0,   -beta, alpha, 0.0,   //
          beta,  0.0,   0.0,  alpha};
}

ParticleStore::ParticleId attack_measure_resend(ParticleStore& store,
                                                ParticleStore::ParticleId p,
                                                Rng& rng, EveAction& record) {
  Basis basis = rng.bernoulli(0.5) ? Basis::X : Basis::Z;
  int outcome = store.project_measure(p, basis, rng);
  record.kind = AttackKind::MeasureResend;
  record.basis = basis;
  record.outcome = outcome;
  return p;
}

ParticleStore::ParticleId attack_intercept_substitute(
    ParticleStore& store, ParticleStore::ParticleId p, Rng& rng,
    EveAction& record) {
  const Substitute& sub = kSubstitutes[rng.uniform_int(4)];
  ParticleStore::ParticleId fresh =
      store.add_single(StateVector::single(sub.basis, sub.bit));
  record.kind = AttackKind::InterceptSubstitute;
  record.substitute = sub.name;
  record.stored = p;
  return fresh;
}

ParticleStore::ParticleId attack_entangle_measure(ParticleStore& store,
                                                  ParticleStore::ParticleId p,
                                                  double beta_sq, Rng& rng,
                                                  EveAction& record) {
  auto probe = entangle_probe_unitary(beta_sq);
  ParticleStore::ParticleId ancilla =
      store.attach_ancilla(p, StateVector::single(Basis::Z, 0));
  store.apply_two_qubit(p, ancilla, probe);
  // Measuring the ancilla now instead of at Eve's leisure changes nothing
  // any later protocol measurement can observe, and keeps registers small.
  int outcome = store.measure(ancilla, Basis::Z, rng);
  record.kind = AttackKind::EntangleMeasure;
  record.outcome = outcome;
  return p;
}

std::vector<ParticleStore::ParticleId> transmit(
    ParticleStore& store,
    const std::vector<ParticleStore::ParticleId>& sequence,
    TransmissionLeg leg, const AttackModel& attack, Rng& rng, EveLog* log) {
  attack.validate();
  std::vector<ParticleStore::ParticleId> delivered;
  delivered.reserve(sequence.size());
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    ParticleStore::ParticleId p = sequence[i];
    EveAction record;
    record.leg = leg;
    record.position = static_cast<int>(i);
    switch (attack.kind) {
      case AttackKind::None:
        delivered.push_back(p);
        continue;
      case AttackKind::MeasureResend:
        delivered.push_back(attack_measure_resend(store, p, rng, record));
        break;
      case AttackKind::InterceptSubstitute:
        delivered.push_back(
            attack_intercept_substitute(store, p, rng, record));
        break;
      case AttackKind::EntangleMeasure:
        delivered.push_back(
            attack_entangle_measure(store, p, attack.strength, rng, record));
        break;
    }
    if (log) log->actions.push_back(std::move(record));
  }
  return delivered;
}

double DetectionStats::rate() const {
  return trials == 0 ? 0.0 : double(mismatches) / double(trials);
}

double DetectionStats::std_error() const {
  if (trials == 0) return 0.0;
  double p = rate();
  return std::sqrt(p * (1.0 - p) / double(trials));
}

double DetectionStats::z_rate() const {
  return z_trials == 0 ? 0.0 : double(z_mismatches) / double(z_trials);
}

double DetectionStats::x_rate() const {
  return x_trials == 0 ? 0.0 : double(x_mismatches) / double(x_trials);
}

DetectionStats detection_stats_check_one(const AttackModel& attack, int trials,
                                         Rng& rng) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  DetectionStats stats;
  for (int t = 0; t < trials; ++t) {
    ParticleStore store;
    auto cls = bell_from_index(static_cast<int>(rng.uniform_int(4)));
    auto [a_half, b_half] = store.add_bell_pair(cls);
    auto delivered = transmit(store, {b_half}, TransmissionLeg::First, attack,
                              rng, nullptr);
    Basis basis = rng.bernoulli(0.5) ? Basis::X : Basis::Z;
    int receiver_bit = store.measure(delivered[0], basis, rng);
    int sender_bit = store.measure(a_half, basis, rng);
    bool match = (receiver_bit == sender_bit) == same_outcome_expected(cls, basis);
    ++stats.trials;
    (basis == Basis::Z ? stats.z_trials : stats.x_trials) += 1;
    if (!match) {
      ++stats.mismatches;
      (basis == Basis::Z ? stats.z_mismatches : stats.x_mismatches) += 1;
    }
  }
  return stats;
}

DetectionStats detection_stats_check_two(const AttackModel& attack, int trials,
                                         Rng& rng) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  DetectionStats stats;
  for (int t = 0; t < trials; ++t) {
    ParticleStore store;
    const Substitute& decoy = kSubstitutes[rng.uniform_int(4)];
    ParticleStore::ParticleId p =
        store.add_single(StateVector::single(decoy.basis, decoy.bit));
    auto delivered = transmit(store, {p}, TransmissionLeg::Second, attack, rng,
                              nullptr);
    int observed = store.measure(delivered[0], decoy.basis, rng);
    ++stats.trials;
    (decoy.basis == Basis::Z ? stats.z_trials : stats.x_trials) += 1;
    if (observed != decoy.bit) {
      ++stats.mismatches;
      (decoy.basis == Basis::Z ? stats.z_mismatches : stats.x_mismatches) += 1;
    }
  }
  return stats;
}

}  // namespace qd
