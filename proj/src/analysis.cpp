#include "qd/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qd {

namespace {

constexpr double kProbTol = 1e-10;

double plogp(double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); }

// Shortest decimal form that round-trips to the same double.
std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::logic_error("double formatting failed");
  return std::string(buf, ptr);
}

int grid_count(double step) {
  if (!(step > 0.0 && step <= 0.5))
    throw std::invalid_argument("grid step must lie in (0, 0.5]");
  return static_cast<int>(std::llround(1.0 / step));
}

}  // namespace

AttackAnalysisParams AttackAnalysisParams::uniform(double d) {
  AttackAnalysisParams params;
  params.d = d;
  params.validate();
  return params;
}

void AttackAnalysisParams::validate() const {
  double sum = 0.0;
  for (double p : priors) {
    if (!(p >= 0.0)) throw std::invalid_argument("priors must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("priors must sum to 1");
  if (!(d >= 0.0 && d <= 1.0))
    throw std::invalid_argument("detection probability must lie in [0,1]");
}

void EveInfoPoint::validate() const {
  double sum = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -1e-12)
      throw std::invalid_argument("negative eigenvalue in info point");
    sum += lambda;
  }
  if (std::abs(sum - 1.0) > kProbTol)
    throw std::invalid_argument("info point spectrum must sum to 1");
}

double shannon_entropy(std::span<const double> probs) {
  double sum = 0.0, h = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0))
      throw std::invalid_argument("probabilities must be nonnegative");
    sum += p;
    h += plogp(p);
  }
  if (std::abs(sum - 1.0) > kProbTol)
    throw std::invalid_argument("probabilities must sum to 1");
  return h;
}

DensityMatrix build_rho(const AttackAnalysisParams& params, cdouble alpha,
                        cdouble beta) {
  params.validate();
  double a2 = std::norm(alpha), b2 = std::norm(beta);
  if (std::abs(a2 + b2 - 1.0) > 1e-9)
    throw std::invalid_argument("probe amplitudes must be normalized");
  if (std::abs(b2 - params.d) > 1e-9)
    throw std::invalid_argument(
        "flip amplitude must realize the detection probability");
  const auto& p = params.priors;
  cdouble cross0 = (p[0] - p[3]) * alpha * std::conj(beta);
  cdouble cross1 = (p[1] - p[2]) * alpha * std::conj(beta);
  std::vector<cdouble> m(16, cdouble{0.0, 0.0});
  m[0 * 4 + 0] = (p[0] + p[3]) * a2;
  m[0 * 4 + 1] = cross0;
  m[1 * 4 + 0] = std::conj(cross0);
  m[1 * 4 + 1] = (p[0] + p[3]) * b2;
  m[2 * 4 + 2] = (p[1] + p[2]) * a2;
  m[2 * 4 + 3] = cross1;
  m[3 * 4 + 2] = std::conj(cross1);
  m[3 * 4 + 3] = (p[1] + p[2]) * b2;
  return DensityMatrix(4, std::move(m));
}

DensityMatrix build_rho(const AttackAnalysisParams& params) {
  return build_rho(params, std::sqrt(1.0 - params.d), std::sqrt(params.d));
}

std::array<double, 4> attack_eigenvalues(const AttackAnalysisParams& params) {
  params.validate();
  const auto& p = params.priors;
  double ab = params.d - params.d * params.d;  // |alpha|^2 |beta|^2
  auto block = [ab](double pa, double pb) {
    double s = pa + pb;
    double disc = s * s - 16.0 * pa * pb * ab;
    if (disc < -1e-12)
      throw std::invalid_argument("negative eigenvalue discriminant");
    double r = 0.5 * std::sqrt(std::max(disc, 0.0));
    return std::array<double, 2>{0.5 * s + r, 0.5 * s - r};
  };
  auto first = block(p[0], p[3]);
  auto second = block(p[1], p[2]);
  return {first[0], first[1], second[0], second[1]};
}

double von_neumann_info(std::span<const double> eigenvalues) {
  double sum = 0.0, h = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -1e-12)
      throw std::invalid_argument("eigenvalues must be nonnegative");
    sum += lambda;
    h += plogp(lambda);
  }
  if (std::abs(sum - 1.0) > kProbTol)
    throw std::invalid_argument("spectrum must sum to 1");
  return h;
}

namespace {

// Binary-channel entropy over the spectrum {d/2, (1-d)/2, repeated}: what
// the probe yields when the carrier is a computational basis state.
double carrier_info(double d) {
  if (!(d >= 0.0 && d <= 1.0))
    throw std::invalid_argument("detection probability must lie in [0,1]");
  return 2.0 * (plogp(0.5 * d) + plogp(0.5 * (1.0 - d)));
}

}  // namespace

double eve_info_carrier0(double d) { return carrier_info(d); }

double eve_info_carrier1(double d) { return carrier_info(d); }

double eve_info(double d) {
  if (!(d >= 0.0 && d <= 1.0))
    throw std::invalid_argument("detection probability must lie in [0,1]");
  return 1.0 + plogp(d) + plogp(1.0 - d);
}

std::vector<EveInfoPoint> information_curve(double step) {
  int count = grid_count(step);
  std::vector<EveInfoPoint> curve;
  curve.reserve(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) {
    EveInfoPoint point;
    point.d = double(i) / double(count);
    point.eigenvalues = attack_eigenvalues(AttackAnalysisParams::uniform(point.d));
    point.info = eve_info(point.d);
    point.validate();
    curve.push_back(point);
  }
  return curve;
}

std::string fig1_csv(double step) {
  std::string out = "d,I\n";
  for (const EveInfoPoint& point : information_curve(step)) {
    out += format_double(point.d);
    out += ',';
    out += format_double(point.info);
    out += '\n';
  }
  return out;
}

LeakageAudit leakage_audit() {
  LeakageAudit audit;
  audit.claimed_conditional_entropy_bits = 4.0;
  // P(op pair, collection): collection is a function of the pair, so the
  // joint over pairs IS the joint over (pair, collection).
  std::array<std::array<double, 4>, 16> pair_and_collection{};
  std::array<double, 4> collection_prob{};
  for (int c = 0; c < 4; ++c) {
    for (int ua = 0; ua < 4; ++ua) {
      for (int ub = 0; ub < 4; ++ub) {
        auto initial = bell_from_index(c);
        auto op_a = pauli_from_bits(ua);
        auto op_b = pauli_from_bits(ub);
        Collection announced = swap_collection(pauli_action(initial, op_a),
                                               pauli_action(initial, op_b));
        double prob = 1.0 / 64.0;
        audit.joint.push_back({initial, op_a, op_b, announced, prob});
        pair_and_collection[static_cast<std::size_t>(4 * ua + ub)]
                           [static_cast<std::size_t>(collection_index(announced))] +=
            prob;
      }
    }
  }
  std::array<double, 16> pair_prob{};
  for (int pair = 0; pair < 16; ++pair)
    for (int col = 0; col < 4; ++col) {
      double prob = pair_and_collection[static_cast<std::size_t>(pair)]
                                       [static_cast<std::size_t>(col)];
      pair_prob[static_cast<std::size_t>(pair)] += prob;
      collection_prob[static_cast<std::size_t>(col)] += prob;
    }
  audit.prior_entropy_bits = shannon_entropy(pair_prob);
  // H(pair | collection) = sum_c P(c) H(pair | c).
  double conditional = 0.0;
  for (int col = 0; col < 4; ++col) {
    double pc = collection_prob[static_cast<std::size_t>(col)];
    if (pc <= 0.0) continue;
    std::array<double, 16> given{};
    for (int pair = 0; pair < 16; ++pair)
      given[static_cast<std::size_t>(pair)] =
          pair_and_collection[static_cast<std::size_t>(pair)]
                             [static_cast<std::size_t>(col)] /
          pc;
    conditional += pc * shannon_entropy(given);
  }
  audit.conditional_entropy_bits = conditional;
  audit.mutual_information_bits = audit.prior_entropy_bits - conditional;
  return audit;
}

EfficiencyReport cabello_efficiency(long long secret_bits, long long qubits,
                                    long long classical_bits) {
  if (qubits + classical_bits <= 0)
    throw std::invalid_argument("efficiency denominator must be positive");
  if (secret_bits < 0 || qubits < 0 || classical_bits < 0)
    throw std::invalid_argument("efficiency counts must be nonnegative");
  EfficiencyReport report;
  report.secret_bits = secret_bits;
  report.qubits_used = qubits;
  report.classical_bits = classical_bits;
  report.eta = double(secret_bits) / double(qubits + classical_bits);
  return report;
}

EfficiencyReport cabello_efficiency(const SessionTranscript& transcript) {
  if (transcript.aborted)
    throw std::invalid_argument(
        "efficiency is undefined for an aborted session");
  return cabello_efficiency(transcript.tallies.secret_bits,
                            transcript.tallies.message_qubits,
                            transcript.tallies.announcement_bits);
}

}  // namespace qd
