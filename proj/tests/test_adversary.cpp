// Eavesdropping models against both checks. Expected detection rates are
// frozen from closed-form enumeration over attack and check randomness:
//   measure-resend  -> 1/4 on either check (same basis: clean; crossed
//                      basis: 1/2), uniformly mixed over basis choices
//   intercept       -> 1/2 on either check (the receiver's qubit carries no
//                      correlation with the sender's reference)
//   entangle beta^2 -> flips Z-basis content with probability beta^2 and
//                      leaves X-basis content alone: Z rate beta^2, X rate
//                      exactly 0, mixed rate beta^2 / 2

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qd/adversary.hpp"
#include "qd/protocol.hpp"

using namespace qd;

namespace {

constexpr int kTrials = 10000;
constexpr double kTol = 0.02;  // > 4.5 binomial standard errors at 10k

}  // namespace

TEST_CASE("attack spec grammar") {
  CHECK(AttackModel::parse("none").kind == AttackKind::None);
  CHECK(AttackModel::parse("measure-resend").kind == AttackKind::MeasureResend);
  CHECK(AttackModel::parse("intercept").kind == AttackKind::InterceptSubstitute);
  auto e = AttackModel::parse("entangle:0.25");
  CHECK(e.kind == AttackKind::EntangleMeasure);
  CHECK(e.strength == doctest::Approx(0.25));
  // Value round-trips through the rendered spec.
  auto again = AttackModel::parse(e.spec_string());
  CHECK(again.kind == e.kind);
  CHECK(again.strength == doctest::Approx(e.strength));

  CHECK_THROWS_AS(AttackModel::parse("entangle:1.5"), std::invalid_argument);
  CHECK_THROWS_AS(AttackModel::parse("entangle:-0.1"), std::invalid_argument);
  CHECK_THROWS_AS(AttackModel::parse("entangle:"), std::invalid_argument);
  CHECK_THROWS_AS(AttackModel::parse("entangle:abc"), std::invalid_argument);
  CHECK_THROWS_AS(AttackModel::parse("resend"), std::invalid_argument);
  CHECK_THROWS_AS(AttackModel::parse(""), std::invalid_argument);

  AttackModel bad;
  bad.kind = AttackKind::MeasureResend;
  bad.strength = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("probe operator is unitary and acts as specified") {
  for (double d : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    auto u = entangle_probe_unitary(d);
    // U^dagger U = I.
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        cdouble sum = 0.0;
        for (int k = 0; k < 4; ++k)
          sum += std::conj(u[static_cast<std::size_t>(4 * k + r)]) *
                 u[static_cast<std::size_t>(4 * k + c)];
        CHECK(std::abs(sum - (r == c ? 1.0 : 0.0)) < 1e-12);
      }
    }
    double alpha = std::sqrt(1.0 - d), beta = std::sqrt(d);
    // |0>|0> -> alpha|00> + beta|11>
    auto s0 = apply_two_qubit(u, 0, 1,
                              compose(StateVector::single(Basis::Z, 0),
                                      StateVector::single(Basis::Z, 0)));
    CHECK(std::abs(s0.amplitude(0) - alpha) < 1e-12);
    CHECK(std::abs(s0.amplitude(3) - beta) < 1e-12);
    // |1>|0> -> alpha|10> + beta|01>
    auto s1 = apply_two_qubit(u, 0, 1,
                              compose(StateVector::single(Basis::Z, 1),
                                      StateVector::single(Basis::Z, 0)));
    CHECK(std::abs(s1.amplitude(2) - alpha) < 1e-12);
    CHECK(std::abs(s1.amplitude(1) - beta) < 1e-12);
  }
  CHECK_THROWS_AS(entangle_probe_unitary(-0.2), std::invalid_argument);
  CHECK_THROWS_AS(entangle_probe_unitary(1.2), std::invalid_argument);
}

TEST_CASE("probe passes X-basis states untouched in the data register") {
  for (double d : {0.1, 0.5, 0.9}) {
    for (int bit : {0, 1}) {
      auto u = entangle_probe_unitary(d);
      auto s = apply_two_qubit(u, 0, 1,
                               compose(StateVector::single(Basis::X, bit),
                                       StateVector::single(Basis::Z, 0)));
      double alpha = std::sqrt(1.0 - d), beta = std::sqrt(d);
      double sign = bit == 0 ? 1.0 : -1.0;
      // Expected product: |x_bit> (x) (alpha|0> +/- beta|1>).
      StateVector probe_arm(1, {cdouble(alpha), cdouble(sign * beta)});
      auto expected = compose(StateVector::single(Basis::X, bit), probe_arm);
      CHECK(std::abs(inner_product(expected, s) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("no attack leaves channels error-free") {
  Rng rng(10);
  AttackModel none;
  auto one = detection_stats_check_one(none, 4000, rng);
  CHECK(one.mismatches == 0);
  auto two = detection_stats_check_two(none, 4000, rng);
  CHECK(two.mismatches == 0);
}

TEST_CASE("measure-resend is caught at rate 1/4 on both checks") {
  Rng rng(11);
  auto attack = AttackModel::parse("measure-resend");
  auto one = detection_stats_check_one(attack, kTrials, rng);
  CHECK(std::abs(one.rate() - 0.25) < kTol);
  CHECK(std::abs(one.z_rate() - 0.25) < 2 * kTol);
  CHECK(std::abs(one.x_rate() - 0.25) < 2 * kTol);
  auto two = detection_stats_check_two(attack, kTrials, rng);
  CHECK(std::abs(two.rate() - 0.25) < kTol);
}

TEST_CASE("intercept-substitute is caught at rate 1/2 on both checks") {
  Rng rng(12);
  auto attack = AttackModel::parse("intercept");
  auto one = detection_stats_check_one(attack, kTrials, rng);
  CHECK(std::abs(one.rate() - 0.5) < kTol);
  auto two = detection_stats_check_two(attack, kTrials, rng);
  CHECK(std::abs(two.rate() - 0.5) < kTol);
}

TEST_CASE("entangling probe: Z rate tracks flip probability, X rate is zero") {
  Rng rng(13);
  for (double d : {0.1, 0.3, 0.5}) {
    AttackModel attack;
    attack.kind = AttackKind::EntangleMeasure;
    attack.strength = d;
    auto one = detection_stats_check_one(attack, kTrials, rng);
    CHECK(std::abs(one.z_rate() - d) < 2 * kTol);
    CHECK(one.x_mismatches == 0);
    CHECK(std::abs(one.rate() - d / 2) < kTol);
    auto two = detection_stats_check_two(attack, kTrials, rng);
    CHECK(std::abs(two.z_rate() - d) < 2 * kTol);
    CHECK(two.x_mismatches == 0);
    CHECK(std::abs(two.rate() - d / 2) < kTol);
  }
}

TEST_CASE("entangling probe extremes are exact") {
  Rng rng(14);
  AttackModel silent;
  silent.kind = AttackKind::EntangleMeasure;
  silent.strength = 0.0;
  auto clean = detection_stats_check_one(silent, 2000, rng);
  CHECK(clean.mismatches == 0);
  CHECK(detection_stats_check_two(silent, 2000, rng).mismatches == 0);

  AttackModel total;
  total.kind = AttackKind::EntangleMeasure;
  total.strength = 1.0;
  auto loud = detection_stats_check_one(total, 2000, rng);
  CHECK(loud.z_mismatches == loud.z_trials);  // every Z trial flips
  CHECK(loud.x_mismatches == 0);
  auto loud2 = detection_stats_check_two(total, 2000, rng);
  CHECK(loud2.z_mismatches == loud2.z_trials);
  CHECK(loud2.x_mismatches == 0);
}

TEST_CASE("strength-zero probe delivers the identical state") {
  ParticleStore store;
  Rng rng(15);
  auto [a, b] = store.add_bell_pair(BellClass::PsiMinus);
  AttackModel silent;
  silent.kind = AttackKind::EntangleMeasure;
  silent.strength = 0.0;
  EveLog log;
  auto delivered =
      transmit(store, {b}, TransmissionLeg::First, silent, rng, &log);
  CHECK(delivered == std::vector<ParticleStore::ParticleId>{b});
  REQUIRE(log.actions.size() == 1);
  CHECK(log.actions[0].outcome == 0);  // ancilla can never fire
  auto id = classify_bell_state(store.joint_state(a));
  REQUIRE(id.has_value());
  CHECK(*id == BellClass::PsiMinus);
}

TEST_CASE("intercept stores the genuine particle, maximally mixed") {
  ParticleStore store;
  Rng rng(16);
  auto [a, b] = store.add_bell_pair(BellClass::PhiPlus);
  EveLog log;
  auto delivered = transmit(store, {b}, TransmissionLeg::Second,
                            AttackModel::parse("intercept"), rng, &log);
  REQUIRE(delivered.size() == 1);
  CHECK(delivered[0] != b);
  auto stored = log.stored_particles();
  REQUIRE(stored.size() == 1);
  CHECK(stored[0] == b);
  CHECK(store.alive(b));  // Eve still holds it
  for (auto p : {a, b}) {
    DensityMatrix rho = store.reduced_density(p);
    CHECK(std::abs(rho.entry(0, 0) - 0.5) < 1e-12);
    CHECK(std::abs(rho.entry(0, 1)) < 1e-12);
  }
  // The forwarded qubit is one of the four advertised substitutes.
  REQUIRE(log.actions[0].substitute.has_value());
  std::string name = *log.actions[0].substitute;
  CHECK((name == "0" || name == "1" || name == "+" || name == "-"));
}

TEST_CASE("action records carry leg and position") {
  ParticleStore store;
  Rng rng(17);
  std::vector<ParticleStore::ParticleId> seq;
  for (int i = 0; i < 5; ++i)
    seq.push_back(store.add_single(StateVector::single(Basis::Z, 0)));
  EveLog log;
  auto delivered = transmit(store, seq, TransmissionLeg::Second,
                            AttackModel::parse("measure-resend"), rng, &log);
  CHECK(delivered.size() == seq.size());
  REQUIRE(log.actions.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(log.actions[static_cast<std::size_t>(i)].position == i);
    CHECK(log.actions[static_cast<std::size_t>(i)].leg ==
          TransmissionLeg::Second);
    CHECK(log.actions[static_cast<std::size_t>(i)].basis.has_value());
  }
  // A clean channel leaves no action records.
  EveLog quiet;
  transmit(store, {}, TransmissionLeg::First, AttackModel{}, rng, &quiet);
  CHECK(quiet.actions.empty());
}
