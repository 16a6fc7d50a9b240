// The dialogue protocol proper: Alice prepares paired entangled blocks and
// sends Bob first the partner-half sequence (checked by sampled pair
// correlations), then her encoded-half sequence (checked by decoy singles);
// Bob completes each group by entanglement swapping and announces the
// outcome collection, from which each side reads the other's two bits per
// group. A session produces a complete transcript: every classical message,
// both check reports, per-group records, resource tallies, and the
// eavesdropper's view.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qd/adversary.hpp"
#include "qd/bellalg.hpp"
#include "qd/particles.hpp"
#include "qd/qsim.hpp"
#include "qd/rng.hpp"

namespace qd {

// A party's secret: an even-length bit string, two bits per group, each pair
// mapping to an encoding operation via the agreed codec.
class SecretMessage {
 public:
  explicit SecretMessage(std::vector<int> bits);
  static SecretMessage random(int groups, Rng& rng);
  // Parses a string of '0'/'1' characters.
  static SecretMessage from_string(std::string_view text);

  int group_count() const { return static_cast<int>(bits_.size() / 2); }
  const std::vector<int>& bits() const { return bits_; }
  // Operation encoding bits (2n, 2n+1), i.e. group n (0-based).
  PauliCode op_for_group(int n) const;
  std::string to_string() const;

 private:
  std::vector<int> bits_;
};

// Which A particle of each group Alice encodes (1-based odd = first of the
// group, even = second); Bob always encodes the partner-half of the other
// pair. Pre-agreed out of band, fixed per session.
enum class PositionConvention { OddFirst, EvenFirst };

std::string_view to_string(PositionConvention c);  // "odd-first"/"even-first"
PositionConvention position_convention_from_string(std::string_view s);

struct GroupRecord {
  int index = 0;  // 1-based group number
  BellClass initial_class = BellClass::PhiPlus;   // prepared by Alice
  PauliCode alice_op = PauliCode::Identity;
  PauliCode bob_op = PauliCode::Identity;
  std::string encode_position;                    // "odd" or "even"
  BellClass bob_observed_class = BellClass::PhiPlus;  // measured by Bob
  BellClass outcome_a = BellClass::PhiPlus;       // joint outcome, A halves
  BellClass outcome_b = BellClass::PhiPlus;       // joint outcome, B halves
  Collection announced = Collection::C0;
  int alice_read_bits = -1;  // two-bit value Alice decodes (Bob's secret)
  int bob_read_bits = -1;    // two-bit value Bob decodes (Alice's secret)
};

struct CheckReport {
  int check_id = 0;
  int samples_tested = 0;
  int mismatches = 0;
  double error_rate = 0.0;
  bool aborted = false;
};

struct ClassicalMessage {
  std::string from;
  std::string about;
  std::string data;
};

struct Tallies {
  long long secret_bits = 0;        // both directions
  long long message_qubits = 0;     // halves of the 2N carrier pairs
  long long announcement_bits = 0;  // 2 per group
  long long sample_qubits = 0;      // check-one pairs, both halves
  long long decoy_qubits = 0;       // check-two singles
};

struct SessionConfig {
  int groups = 1;
  std::uint64_t seed = 0;
  AttackModel attack;
  // Which transmissions the attack applies to (both by default).
  bool attack_first_leg = true;
  bool attack_second_leg = true;
  int check_pairs = -1;  // negative = default 2*groups
  int decoys = -1;       // negative = default 2*groups
  double threshold = 0.0;
  PositionConvention convention = PositionConvention::OddFirst;
  // Fixed secrets for reproducing specific scenarios; random when absent.
  std::optional<SecretMessage> alice_secret;
  std::optional<SecretMessage> bob_secret;

  int resolved_check_pairs() const;
  int resolved_decoys() const;
  void validate() const;  // throws std::invalid_argument
};

struct SessionTranscript {
  SessionConfig config;
  std::vector<GroupRecord> groups;
  std::vector<CheckReport> checks;
  std::vector<ClassicalMessage> classical_log;
  Tallies tallies;
  EveLog eve;
  bool aborted = false;
  int aborted_at_check = 0;  // 0 when not aborted
  std::string alice_sent;    // Alice's secret bits
  std::string bob_sent;
  std::string alice_read;    // what Alice decoded (Bob's bits); "" on abort
  std::string bob_read;

  // Deterministic structured rendering (sorted keys, 2-space indent,
  // trailing newline); identical configs yield identical bytes.
  std::string serialize() const;
};

// Insert items at uniformly random slots of seq (one at a time, each slot
// uniform over the current length + 1). Returns the final position of each
// item, aligned with items order. Erasing those positions restores seq.
std::vector<int> insert_randomly(std::vector<ParticleStore::ParticleId>& seq,
                                 const std::vector<ParticleStore::ParticleId>& items,
                                 Rng& rng);

// One protocol session as an explicit state machine. Steps must be invoked
// in order; out-of-order invocation throws std::logic_error. run_session
// drives all steps and is the normal entry point.
class Session {
 public:
  enum class Phase {
    Fresh,
    Prepared,
    SamplesInserted,
    FirstDelivered,
    CheckOneDone,
    Encoded,
    DecoysInserted,
    SecondDelivered,
    CheckTwoDone,
    Done,
    Aborted,
  };

  explicit Session(const SessionConfig& config);

  void prepare_blocks();
  void insert_check_pairs();
  void transmit_first();
  CheckReport run_check_one();
  void alice_encode();
  void insert_decoys();
  void transmit_second();
  CheckReport run_check_two();
  void run_dialogue();

  Phase phase() const { return phase_; }
  const SessionTranscript& transcript() const { return transcript_; }
  SessionTranscript take_transcript();

  // Introspection for tests: current A/B message sequences and the store.
  const std::vector<ParticleStore::ParticleId>& sequence_a() const {
    return seq_a_;
  }
  const std::vector<ParticleStore::ParticleId>& sequence_b() const {
    return seq_b_;
  }
  const ParticleStore& store() const { return store_; }

 private:
  void require_phase(Phase expected, const char* step);
  void log_message(std::string from, std::string about, std::string data);
  CheckReport finish_check(int check_id, int tested, int mismatches);

  SessionConfig config_;
  Phase phase_ = Phase::Fresh;
  ParticleStore store_;
  Rng rng_preparation_;
  Rng rng_insertion_;
  Rng rng_measurement_;
  Rng rng_attack_;

  SecretMessage alice_secret_;
  SecretMessage bob_secret_;

  std::vector<ParticleStore::ParticleId> seq_a_;  // Alice's kept halves
  std::vector<ParticleStore::ParticleId> seq_b_;  // transmitted halves
  std::vector<BellClass> group_class_;            // prepared chi per group

  std::vector<ParticleStore::ParticleId> sample_a_;  // check-one pair halves
  std::vector<ParticleStore::ParticleId> sample_b_;
  std::vector<BellClass> sample_class_;
  std::vector<int> sample_positions_b_;  // positions announced for check one

  struct Decoy {
    ParticleStore::ParticleId id;
    Basis basis;
    int bit;
  };
  std::vector<Decoy> decoys_;
  std::vector<int> decoy_positions_;

  SessionTranscript transcript_;
};

SessionTranscript run_session(const SessionConfig& config);

// Step-3 dialogue for a single group in isolation (no transmissions or
// checks): prepare two pairs of class chi, apply the two encodings per the
// convention, swap, announce, decode. Used for exhaustive correctness runs.
GroupRecord run_group_dialogue(BellClass chi, PauliCode alice_op,
                               PauliCode bob_op, PositionConvention convention,
                               Rng& rng);

}  // namespace qd
