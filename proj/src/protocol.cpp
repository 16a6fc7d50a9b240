#include "qd/protocol.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace qd {

namespace {

using nlohmann::json;

// Decoy state k in 0..3 -> |0>, |1>, |+>, |->.
std::pair<Basis, int> decoy_state(int k) {
  return {k < 2 ? Basis::Z : Basis::X, k % 2};
}

std::string render(const ClassicalMessage& m) {
  return m.from + "|" + m.about + "|" + m.data;
}

std::string two_bit_string(int value) {
  std::string out;
  out += static_cast<char>('0' + ((value >> 1) & 1));
  out += static_cast<char>('0' + (value & 1));
  return out;
}

// The Step-3 dialogue for one group whose four particles (and the encodings
// on them) are already in place. Positional argument order: pair 1 then
// pair 2, A half then B half.
GroupRecord dialogue_group(ParticleStore& store,
                           ParticleStore::ParticleId a_first,
                           ParticleStore::ParticleId a_second,
                           ParticleStore::ParticleId b_first,
                           ParticleStore::ParticleId b_second,
                           BellClass prepared, PauliCode alice_op,
                           PauliCode bob_op, PositionConvention convention,
                           int index, Rng& rng) {
  const bool odd_first = convention == PositionConvention::OddFirst;
  // Bob first measures the pair Alice left unencoded, learning the group's
  // initial class, then replaces it with a fresh pair of that class and
  // encodes on the fresh partner half.
  ParticleStore::ParticleId shared_a = odd_first ? a_second : a_first;
  ParticleStore::ParticleId shared_b = odd_first ? b_second : b_first;
  BellClass observed = store.measure_bell(shared_a, shared_b, rng);
  auto [fresh_a, fresh_b] = store.add_bell_pair(observed);
  store.apply_pauli(fresh_b, bob_op);

  // Cross measurements in positional order: (A of pair 1, A of pair 2).
  BellClass m_a = odd_first ? store.measure_bell(a_first, fresh_a, rng)
                            : store.measure_bell(fresh_a, a_second, rng);
  BellClass m_b = odd_first ? store.measure_bell(b_first, fresh_b, rng)
                            : store.measure_bell(fresh_b, b_second, rng);
  Collection announced = classify_outcome(m_a, m_b);

  GroupRecord rec;
  rec.index = index;
  rec.initial_class = prepared;
  rec.alice_op = alice_op;
  rec.bob_op = bob_op;
  rec.encode_position = odd_first ? "odd" : "even";
  rec.bob_observed_class = observed;
  rec.outcome_a = m_a;
  rec.outcome_b = m_b;
  rec.announced = announced;
  // Each side decodes from the announcement, the initial class as that side
  // knows it, and its own operation.
  rec.alice_read_bits = secret_bits(decode_partner(announced, prepared, alice_op));
  rec.bob_read_bits = secret_bits(decode_partner(announced, observed, bob_op));
  return rec;
}

json to_json(const CheckReport& r) {
  return json{{"check_id", r.check_id},
              {"samples_tested", r.samples_tested},
              {"mismatches", r.mismatches},
              {"error_rate", r.error_rate},
              {"verdict", r.aborted ? "abort" : "continue"}};
}

json to_json(const GroupRecord& g) {
  return json{{"index", g.index},
              {"initial_class", to_string(g.initial_class)},
              {"alice_op", to_string(g.alice_op)},
              {"bob_op", to_string(g.bob_op)},
              {"encode_position", g.encode_position},
              {"bob_observed_class", to_string(g.bob_observed_class)},
              {"outcome_a", to_string(g.outcome_a)},
              {"outcome_b", to_string(g.outcome_b)},
              {"announced", to_string(g.announced)},
              {"alice_read_bits", two_bit_string(g.alice_read_bits)},
              {"bob_read_bits", two_bit_string(g.bob_read_bits)}};
}

json to_json(const EveAction& a) {
  json j{{"leg", to_string(a.leg)},
         {"position", a.position},
         {"kind", to_string(a.kind)}};
  if (a.basis) j["basis"] = to_string(*a.basis);
  if (a.outcome) j["outcome"] = *a.outcome;
  if (a.substitute) j["substitute"] = *a.substitute;
  if (a.stored) j["stored_particle"] = *a.stored;
  return j;
}

}  // namespace

SecretMessage::SecretMessage(std::vector<int> bits) : bits_(std::move(bits)) {
  if (bits_.size() % 2 != 0)
    throw std::invalid_argument("secret bit count must be even");
  for (int b : bits_)
    if (b != 0 && b != 1)
      throw std::invalid_argument("secret bits must be 0 or 1");
}

SecretMessage SecretMessage::random(int groups, Rng& rng) {
  if (groups < 0) throw std::invalid_argument("group count must be >= 0");
  std::vector<int> bits(static_cast<std::size_t>(2 * groups));
  for (int& b : bits) b = static_cast<int>(rng.uniform_int(2));
  return SecretMessage(std::move(bits));
}

SecretMessage SecretMessage::from_string(std::string_view text) {
  std::vector<int> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("secret string must contain only 0 and 1");
    bits.push_back(c - '0');
  }
  return SecretMessage(std::move(bits));
}

PauliCode SecretMessage::op_for_group(int n) const {
  if (n < 0 || n >= group_count())
    throw std::out_of_range("group index out of range");
  std::size_t i = static_cast<std::size_t>(2 * n);
  return pauli_from_bits((bits_[i] << 1) | bits_[i + 1]);
}

std::string SecretMessage::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (int b : bits_) out += static_cast<char>('0' + b);
  return out;
}

std::string_view to_string(PositionConvention c) {
  return c == PositionConvention::OddFirst ? "odd-first" : "even-first";
}

PositionConvention position_convention_from_string(std::string_view s) {
  if (s == "odd-first") return PositionConvention::OddFirst;
  if (s == "even-first") return PositionConvention::EvenFirst;
  throw std::invalid_argument("unknown position convention: " + std::string(s));
}

int SessionConfig::resolved_check_pairs() const {
  return check_pairs < 0 ? 2 * groups : check_pairs;
}

int SessionConfig::resolved_decoys() const {
  return decoys < 0 ? 2 * groups : decoys;
}

void SessionConfig::validate() const {
  if (groups < 1) throw std::invalid_argument("group count must be >= 1");
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw std::invalid_argument("threshold must lie in [0,1]");
  attack.validate();
  if (alice_secret && alice_secret->group_count() != groups)
    throw std::invalid_argument("alice secret length must be 2*groups");
  if (bob_secret && bob_secret->group_count() != groups)
    throw std::invalid_argument("bob secret length must be 2*groups");
}

std::vector<int> insert_randomly(
    std::vector<ParticleStore::ParticleId>& seq,
    const std::vector<ParticleStore::ParticleId>& items, Rng& rng) {
  for (ParticleStore::ParticleId id : items) {
    std::size_t pos = rng.uniform_int(seq.size() + 1);
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos), id);
  }
  std::vector<int> positions;
  positions.reserve(items.size());
  for (ParticleStore::ParticleId id : items) {
    auto it = std::find(seq.begin(), seq.end(), id);
    positions.push_back(static_cast<int>(it - seq.begin()));
  }
  return positions;
}

Session::Session(const SessionConfig& config)
    : config_(config),
      rng_preparation_(Rng::stream(config.seed, "preparation")),
      rng_insertion_(Rng::stream(config.seed, "insertion")),
      rng_measurement_(Rng::stream(config.seed, "measurement")),
      rng_attack_(Rng::stream(config.seed, "attack")),
      alice_secret_(std::vector<int>{}),
      bob_secret_(std::vector<int>{}) {
  config_.validate();
  Rng secrets = Rng::stream(config_.seed, "secrets");
  alice_secret_ = config_.alice_secret
                      ? *config_.alice_secret
                      : SecretMessage::random(config_.groups, secrets);
  bob_secret_ = config_.bob_secret
                    ? *config_.bob_secret
                    : SecretMessage::random(config_.groups, secrets);
  transcript_.config = config_;
  transcript_.alice_sent = alice_secret_.to_string();
  transcript_.bob_sent = bob_secret_.to_string();
}

void Session::require_phase(Phase expected, const char* step) {
  if (phase_ != expected)
    throw std::logic_error(std::string("protocol order violation at ") + step);
}

void Session::log_message(std::string from, std::string about,
                          std::string data) {
  ClassicalMessage m{std::move(from), std::move(about), std::move(data)};
  transcript_.eve.wiretap(render(m));
  transcript_.classical_log.push_back(std::move(m));
}

CheckReport Session::finish_check(int check_id, int tested, int mismatches) {
  CheckReport report;
  report.check_id = check_id;
  report.samples_tested = tested;
  report.mismatches = mismatches;
  report.error_rate = tested == 0 ? 0.0 : double(mismatches) / double(tested);
  report.aborted = report.error_rate > config_.threshold;
  transcript_.checks.push_back(report);
  if (report.aborted) {
    transcript_.aborted = true;
    transcript_.aborted_at_check = check_id;
    phase_ = Phase::Aborted;
  }
  return report;
}

void Session::prepare_blocks() {
  require_phase(Phase::Fresh, "prepare_blocks");
  for (int n = 0; n < config_.groups; ++n) {
    auto chi = bell_from_index(static_cast<int>(rng_preparation_.uniform_int(4)));
    group_class_.push_back(chi);
    for (int rep = 0; rep < 2; ++rep) {
      auto [a, b] = store_.add_bell_pair(chi);
      seq_a_.push_back(a);
      seq_b_.push_back(b);
    }
  }
  phase_ = Phase::Prepared;
}

void Session::insert_check_pairs() {
  require_phase(Phase::Prepared, "insert_check_pairs");
  int count = config_.resolved_check_pairs();
  for (int k = 0; k < count; ++k) {
    auto chi = bell_from_index(static_cast<int>(rng_preparation_.uniform_int(4)));
    auto [a, b] = store_.add_bell_pair(chi);
    sample_a_.push_back(a);
    sample_b_.push_back(b);
    sample_class_.push_back(chi);
  }
  insert_randomly(seq_a_, sample_a_, rng_insertion_);
  sample_positions_b_ = insert_randomly(seq_b_, sample_b_, rng_insertion_);
  phase_ = Phase::SamplesInserted;
}

void Session::transmit_first() {
  require_phase(Phase::SamplesInserted, "transmit_first");
  AttackModel effective =
      config_.attack_first_leg ? config_.attack : AttackModel{};
  seq_b_ = transmit(store_, seq_b_, TransmissionLeg::First, effective,
                    rng_attack_, &transcript_.eve);
  log_message("bob", "receipt", "received partner-half sequence");
  phase_ = Phase::FirstDelivered;
}

CheckReport Session::run_check_one() {
  require_phase(Phase::FirstDelivered, "run_check_one");
  std::string positions;
  for (std::size_t k = 0; k < sample_positions_b_.size(); ++k) {
    if (k) positions += ' ';
    positions += std::to_string(sample_positions_b_[k]);
  }
  log_message("alice", "sample_positions", positions);

  int mismatches = 0;
  std::string outcomes;
  for (std::size_t k = 0; k < sample_b_.size(); ++k) {
    Basis basis = rng_measurement_.bernoulli(0.5) ? Basis::X : Basis::Z;
    int bob_bit = store_.measure(
        seq_b_[static_cast<std::size_t>(sample_positions_b_[k])], basis,
        rng_measurement_);
    int alice_bit = store_.measure(sample_a_[k], basis, rng_measurement_);
    bool correlated =
        (bob_bit == alice_bit) == same_outcome_expected(sample_class_[k], basis);
    if (!correlated) ++mismatches;
    if (k) outcomes += ' ';
    outcomes += to_string(basis);
    outcomes += static_cast<char>('0' + bob_bit);
  }
  log_message("bob", "check_one_outcomes", outcomes);

  transcript_.tallies.sample_qubits = 2LL * static_cast<long long>(sample_b_.size());
  CheckReport report =
      finish_check(1, static_cast<int>(sample_b_.size()), mismatches);
  log_message("alice", "check_one_verdict", report.aborted ? "abort" : "continue");
  if (!report.aborted) {
    // Drop the consumed samples; both sequences return to message order.
    auto dead_b = sample_positions_b_;
    std::sort(dead_b.begin(), dead_b.end(), std::greater<int>());
    for (int pos : dead_b) seq_b_.erase(seq_b_.begin() + pos);
    for (ParticleStore::ParticleId id : sample_a_)
      seq_a_.erase(std::find(seq_a_.begin(), seq_a_.end(), id));
    phase_ = Phase::CheckOneDone;
  }
  return report;
}

void Session::alice_encode() {
  require_phase(Phase::CheckOneDone, "alice_encode");
  for (int n = 0; n < config_.groups; ++n) {
    std::size_t idx = static_cast<std::size_t>(
        config_.convention == PositionConvention::OddFirst ? 2 * n : 2 * n + 1);
    store_.apply_pauli(seq_a_[idx], alice_secret_.op_for_group(n));
  }
  phase_ = Phase::Encoded;
}

void Session::insert_decoys() {
  require_phase(Phase::Encoded, "insert_decoys");
  int count = config_.resolved_decoys();
  std::vector<ParticleStore::ParticleId> ids;
  for (int k = 0; k < count; ++k) {
    auto [basis, bit] = decoy_state(static_cast<int>(rng_preparation_.uniform_int(4)));
    auto id = store_.add_single(StateVector::single(basis, bit));
    decoys_.push_back(Decoy{id, basis, bit});
    ids.push_back(id);
  }
  decoy_positions_ = insert_randomly(seq_a_, ids, rng_insertion_);
  phase_ = Phase::DecoysInserted;
}

void Session::transmit_second() {
  require_phase(Phase::DecoysInserted, "transmit_second");
  AttackModel effective =
      config_.attack_second_leg ? config_.attack : AttackModel{};
  seq_a_ = transmit(store_, seq_a_, TransmissionLeg::Second, effective,
                    rng_attack_, &transcript_.eve);
  log_message("bob", "receipt", "received encoded-half sequence");
  phase_ = Phase::SecondDelivered;
}

CheckReport Session::run_check_two() {
  require_phase(Phase::SecondDelivered, "run_check_two");
  std::string announced;
  for (std::size_t k = 0; k < decoys_.size(); ++k) {
    if (k) announced += ' ';
    announced += std::to_string(decoy_positions_[k]);
    announced += ':';
    announced += to_string(decoys_[k].basis);
  }
  log_message("alice", "decoy_positions_bases", announced);

  int mismatches = 0;
  std::string outcomes;
  for (std::size_t k = 0; k < decoys_.size(); ++k) {
    int bit = store_.measure(
        seq_a_[static_cast<std::size_t>(decoy_positions_[k])],
        decoys_[k].basis, rng_measurement_);
    if (bit != decoys_[k].bit) ++mismatches;
    outcomes += static_cast<char>('0' + bit);
  }
  log_message("bob", "check_two_outcomes", outcomes);

  transcript_.tallies.decoy_qubits = static_cast<long long>(decoys_.size());
  CheckReport report =
      finish_check(2, static_cast<int>(decoys_.size()), mismatches);
  log_message("alice", "check_two_verdict", report.aborted ? "abort" : "continue");
  if (!report.aborted) {
    auto dead = decoy_positions_;
    std::sort(dead.begin(), dead.end(), std::greater<int>());
    for (int pos : dead) seq_a_.erase(seq_a_.begin() + pos);
    phase_ = Phase::CheckTwoDone;
  }
  return report;
}

void Session::run_dialogue() {
  require_phase(Phase::CheckTwoDone, "run_dialogue");
  std::string alice_read, bob_read;
  for (int n = 0; n < config_.groups; ++n) {
    std::size_t i = static_cast<std::size_t>(2 * n);
    GroupRecord rec = dialogue_group(
        store_, seq_a_[i], seq_a_[i + 1], seq_b_[i], seq_b_[i + 1],
        group_class_[static_cast<std::size_t>(n)],
        alice_secret_.op_for_group(n), bob_secret_.op_for_group(n),
        config_.convention, n + 1, rng_measurement_);
    log_message("bob", "announce_collection",
                "group=" + std::to_string(n + 1) + " " +
                    std::string(to_string(rec.announced)));
    alice_read += two_bit_string(rec.alice_read_bits);
    bob_read += two_bit_string(rec.bob_read_bits);
    transcript_.groups.push_back(rec);
  }
  transcript_.alice_read = alice_read;
  transcript_.bob_read = bob_read;

  const long long n = config_.groups;
  transcript_.tallies.secret_bits = 4 * n;
  transcript_.tallies.message_qubits = 4 * n;
  transcript_.tallies.announcement_bits = 2 * n;
  phase_ = Phase::Done;
}

SessionTranscript Session::take_transcript() { return std::move(transcript_); }

std::string SessionTranscript::serialize() const {
  json j;
  j["config"] = json{
      {"groups", config.groups},
      {"seed", config.seed},
      {"attack", config.attack.spec_string()},
      {"attack_first_leg", config.attack_first_leg},
      {"attack_second_leg", config.attack_second_leg},
      {"check_pairs", config.resolved_check_pairs()},
      {"decoys", config.resolved_decoys()},
      {"threshold", config.threshold},
      {"position_convention", to_string(config.convention)}};
  j["groups"] = json::array();
  for (const GroupRecord& g : groups) j["groups"].push_back(to_json(g));
  j["checks"] = json::array();
  for (const CheckReport& c : checks) j["checks"].push_back(to_json(c));
  j["classical_log"] = json::array();
  for (const ClassicalMessage& m : classical_log)
    j["classical_log"].push_back(
        json{{"from", m.from}, {"about", m.about}, {"data", m.data}});
  j["tallies"] = json{{"secret_bits", tallies.secret_bits},
                      {"message_qubits", tallies.message_qubits},
                      {"announcement_bits", tallies.announcement_bits},
                      {"sample_qubits", tallies.sample_qubits},
                      {"decoy_qubits", tallies.decoy_qubits}};
  if (!aborted && !groups.empty())
    j["tallies"]["per_group"] = json{
        {"secret_bits", 4}, {"message_qubits", 4}, {"announcement_bits", 2}};
  j["decoded"] = json{{"alice_sent", alice_sent},
                      {"bob_sent", bob_sent},
                      {"alice_read", alice_read},
                      {"bob_read", bob_read}};
  j["status"] =
      json{{"aborted", aborted}, {"aborted_at_check", aborted_at_check}};
  j["eve"] = json{{"classical", eve.classical}, {"actions", json::array()}};
  for (const EveAction& a : eve.actions) j["eve"]["actions"].push_back(to_json(a));
  return j.dump(2) + "\n";
}

SessionTranscript run_session(const SessionConfig& config) {
  Session session(config);
  session.prepare_blocks();
  session.insert_check_pairs();
  session.transmit_first();
  CheckReport first = session.run_check_one();
  if (!first.aborted) {
    session.alice_encode();
    session.insert_decoys();
    session.transmit_second();
    CheckReport second = session.run_check_two();
    if (!second.aborted) session.run_dialogue();
  }
  return session.take_transcript();
}

GroupRecord run_group_dialogue(BellClass chi, PauliCode alice_op,
                               PauliCode bob_op, PositionConvention convention,
                               Rng& rng) {
  ParticleStore store;
  auto [a1, b1] = store.add_bell_pair(chi);
  auto [a2, b2] = store.add_bell_pair(chi);
  store.apply_pauli(convention == PositionConvention::OddFirst ? a1 : a2,
                    alice_op);
  return dialogue_group(store, a1, a2, b1, b2, chi, alice_op, bob_op,
                        convention, 1, rng);
}

}  // namespace qd
