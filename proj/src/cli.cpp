#include "qd/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qd/analysis.hpp"
#include "qd/protocol.hpp"
#include "qd/verify.hpp"

namespace qd {

namespace {

using nlohmann::json;

// Writes to the path when given, otherwise to the fallback stream.
void write_document(const std::string& path, const std::string& document,
                    std::ostream& fallback) {
  if (path.empty()) {
    fallback << document;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file: " + path);
  file << document;
  if (!file) throw std::invalid_argument("cannot write output file: " + path);
}

struct RunOptions {
  int groups = 1;
  std::uint64_t seed = 0;
  std::string attack = "none";
  int check_pairs = -1;
  int decoys = -1;
  double threshold = 0.0;
  std::string convention = "odd-first";
  std::string alice_secret;
  std::string bob_secret;
  std::string out_path;
};

int cmd_run(const RunOptions& opt, std::ostream& out) {
  SessionConfig cfg;
  cfg.groups = opt.groups;
  cfg.seed = opt.seed;
  cfg.attack = AttackModel::parse(opt.attack);
  cfg.check_pairs = opt.check_pairs;
  cfg.decoys = opt.decoys;
  cfg.threshold = opt.threshold;
  cfg.convention = position_convention_from_string(opt.convention);
  if (!opt.alice_secret.empty())
    cfg.alice_secret = SecretMessage::from_string(opt.alice_secret);
  if (!opt.bob_secret.empty())
    cfg.bob_secret = SecretMessage::from_string(opt.bob_secret);
  cfg.validate();
  SessionTranscript transcript = run_session(cfg);
  write_document(opt.out_path, transcript.serialize(), out);
  return transcript.aborted ? kExitAborted : kExitOk;
}

int cmd_verify_table(const std::string& tamper_spec, std::ostream& out) {
  SwapTable table = swap_table();
  if (!tamper_spec.empty()) {
    auto comma = tamper_spec.find(',');
    int row = -1, col = -1;
    if (comma != std::string::npos) {
      const char* begin = tamper_spec.data();
      auto r1 = std::from_chars(begin, begin + comma, row);
      auto r2 = std::from_chars(begin + comma + 1,
                                begin + tamper_spec.size(), col);
      if (r1.ec != std::errc{} || r2.ec != std::errc{} ||
          r1.ptr != begin + comma ||
          r2.ptr != begin + tamper_spec.size())
        row = col = -1;
    }
    if (row < 0 || col < 0)
      throw std::invalid_argument("tamper spec must be row,col with each in 0..3");
    table = tampered_table(row, col);
  }
  VerifyReport report = verify_swap_identities(table);
  out << report.render();
  return report.ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_fig1(double step, const std::string& out_path, std::ostream& out) {
  write_document(out_path, fig1_csv(step), out);
  return kExitOk;
}

int cmd_audit(const std::string& out_path, std::ostream& out) {
  LeakageAudit audit = leakage_audit();
  json j;
  j["leakage"] = {
      {"prior_entropy_bits", audit.prior_entropy_bits},
      {"conditional_entropy_bits", audit.conditional_entropy_bits},
      {"mutual_information_bits", audit.mutual_information_bits},
      {"claimed_conditional_entropy_bits",
       audit.claimed_conditional_entropy_bits},
      {"note",
       "conditional_entropy_bits is the exhaustive enumeration over all 64 "
       "(initial class, operation pair) triples with uniform priors; "
       "claimed_conditional_entropy_bits is the published figure, reported "
       "side by side for comparison"}};
  json joint = json::array();
  for (const auto& entry : audit.joint)
    joint.push_back(json{{"initial", to_string(entry.initial)},
                         {"alice_op", to_string(entry.alice_op)},
                         {"bob_op", to_string(entry.bob_op)},
                         {"announced", to_string(entry.announced)},
                         {"probability", entry.probability}});
  j["leakage"]["joint"] = std::move(joint);
  EfficiencyReport eff = cabello_efficiency(4, 4, 2);
  j["efficiency"] = {{"secret_bits", eff.secret_bits},
                     {"qubits_used", eff.qubits_used},
                     {"classical_bits", eff.classical_bits},
                     {"eta", eff.eta},
                     {"per_group", true}};
  write_document(out_path, j.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_sweep(const std::vector<std::string>& attacks, int trials,
              std::uint64_t seed, const std::string& out_path,
              std::ostream& out) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  json report = json::array();
  for (const std::string& spec : attacks) {
    AttackModel attack = AttackModel::parse(spec);
    Rng rng = Rng::stream(seed, spec);
    DetectionStats one = detection_stats_check_one(attack, trials, rng);
    DetectionStats two = detection_stats_check_two(attack, trials, rng);
    auto stats_json = [](const DetectionStats& s) {
      return json{{"trials", s.trials},
                  {"mismatches", s.mismatches},
                  {"rate", s.rate()},
                  {"std_error", s.std_error()},
                  {"z_rate", s.z_rate()},
                  {"x_rate", s.x_rate()}};
    };
    json entry{{"attack", spec},
               {"check_one", stats_json(one)},
               {"check_two", stats_json(two)}};
    if (attack.kind == AttackKind::EntangleMeasure) {
      // The probe's signature triple: nominal flip probability, the flip
      // rate actually observed on Z-basis content, and the information the
      // probe would yield at that detection level.
      double z_mism = one.z_mismatches + two.z_mismatches;
      double z_trials = one.z_trials + two.z_trials;
      entry["probe"] = {{"d", attack.strength},
                        {"empirical_flip_rate",
                         z_trials == 0.0 ? 0.0 : z_mism / z_trials},
                        {"info_bits", eve_info(attack.strength)}};
    }
    report.push_back(std::move(entry));
  }
  write_document(out_path, report.dump(2) + "\n", out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"entanglement-dialogue simulator and security analysis"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "simulate one dialogue session");
  run->add_option("--groups", run_opt.groups,
                  "number of message groups (2 bits each way per group)");
  run->add_option("--seed", run_opt.seed, "session seed");
  run->add_option("--attack", run_opt.attack,
                  "none | measure-resend | intercept | entangle:<beta2>");
  run->add_option("--check-pairs", run_opt.check_pairs,
                  "sampled pairs for the first check (default 2*groups)");
  run->add_option("--decoys", run_opt.decoys,
                  "decoy singles for the second check (default 2*groups)");
  run->add_option("--threshold", run_opt.threshold,
                  "abort when a check's error rate exceeds this");
  run->add_option("--convention", run_opt.convention,
                  "odd-first | even-first encoding position");
  run->add_option("--alice-secret", run_opt.alice_secret,
                  "fixed bit string for Alice (default random)");
  run->add_option("--bob-secret", run_opt.bob_secret,
                  "fixed bit string for Bob (default random)");
  run->add_option("--out", run_opt.out_path,
                  "transcript file (default stdout)");

  std::string tamper_spec;
  auto* verify =
      app.add_subcommand("verify-table", "check the swapping table against "
                                         "the simulator");
  verify->add_option("--tamper", tamper_spec,
                     "negative control: corrupt cell row,col before checking");

  double fig1_step = 0.01;
  std::string fig1_out;
  auto* fig1 = app.add_subcommand("fig1", "emit the information curve as CSV");
  fig1->add_option("--step", fig1_step, "grid spacing in (0, 0.5]");
  fig1->add_option("--out", fig1_out, "CSV file (default stdout)");

  std::string audit_out;
  auto* audit =
      app.add_subcommand("audit", "exhaustive announcement-leakage audit "
                                  "and efficiency report");
  audit->add_option("--out", audit_out, "report file (default stdout)");

  std::vector<std::string> sweep_attacks{"measure-resend", "intercept",
                                         "entangle:0.1", "entangle:0.3",
                                         "entangle:0.5"};
  int sweep_trials = 10000;
  std::uint64_t sweep_seed = 0;
  std::string sweep_out;
  auto* sweep = app.add_subcommand(
      "sweep", "empirical detection rates for a list of attacks");
  sweep->add_option("--attacks", sweep_attacks, "attack specs")
      ->delimiter(',');
  sweep->add_option("--trials", sweep_trials, "trials per attack and check");
  sweep->add_option("--seed", sweep_seed, "sweep seed");
  sweep->add_option("--out", sweep_out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_opt, out);
    if (verify->parsed()) return cmd_verify_table(tamper_spec, out);
    if (fig1->parsed()) return cmd_fig1(fig1_step, fig1_out, out);
    if (audit->parsed()) return cmd_audit(audit_out, out);
    if (sweep->parsed())
      return cmd_sweep(sweep_attacks, sweep_trials, sweep_seed, sweep_out, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("qdial");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qd
