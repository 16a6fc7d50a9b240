#include "qd/qsim.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

#include "qd/kernels.hpp"

namespace qd {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Bit of qubit q inside basis index idx of an n-qubit register (qubit 0 is
// the most significant bit).
inline int bit_of(std::size_t idx, int q, int n) {
  return static_cast<int>((idx >> (n - 1 - q)) & 1u);
}

// Basis index with the bits at qubit positions q_a and q_b deleted and the
// remaining bits packed in qubit order.
inline std::size_t drop_two(std::size_t idx, int q_a, int q_b, int n) {
  std::size_t out = 0;
  for (int q = 0; q < n; ++q) {
    if (q == q_a || q == q_b) continue;
    out = (out << 1) | static_cast<std::size_t>(bit_of(idx, q, n));
  }
  return out;
}

inline std::size_t drop_one(std::size_t idx, int q_cut, int n) {
  std::size_t out = 0;
  for (int q = 0; q < n; ++q) {
    if (q == q_cut) continue;
    out = (out << 1) | static_cast<std::size_t>(bit_of(idx, q, n));
  }
  return out;
}

void check_index(const StateVector& s, int index) {
  if (index < 0 || index >= s.num_qubits())
    throw std::out_of_range("qubit index out of range");
}

void check_pair(const StateVector& s, int q_a, int q_b) {
  check_index(s, q_a);
  check_index(s, q_b);
  if (q_a == q_b) throw std::invalid_argument("qubit pair indices must differ");
}

// Amplitudes of |outcome> over the ordered bit pair (a, b), index 2a+b.
std::array<cdouble, 4> bell_amps(BellClass outcome) {
  std::array<cdouble, 4> amps{};
  int x = bell_x(outcome);
  int z = bell_z(outcome);
  amps[static_cast<std::size_t>(x)] = kInvSqrt2;
  amps[static_cast<std::size_t>(2 + (1 - x))] = z ? -kInvSqrt2 : kInvSqrt2;
  return amps;
}

std::array<cdouble, 2> basis_vector(Basis basis, int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("outcome bit must be 0 or 1");
  if (basis == Basis::Z) {
    return bit == 0 ? std::array<cdouble, 2>{1.0, 0.0}
                    : std::array<cdouble, 2>{0.0, 1.0};
  }
  return bit == 0 ? std::array<cdouble, 2>{kInvSqrt2, kInvSqrt2}
                  : std::array<cdouble, 2>{kInvSqrt2, -kInvSqrt2};
}

struct PairCollapse {
  std::vector<cdouble> rest;  // unnormalized amplitudes over remaining qubits
  double probability = 0.0;
};

PairCollapse collapse_pair_unnormalized(const StateVector& s, int q_a, int q_b,
                                        BellClass outcome) {
  const int n = s.num_qubits();
  const auto proj = bell_amps(outcome);
  PairCollapse out;
  out.rest.assign(std::size_t{1} << (n - 2), cdouble{});
  const auto& amps = s.amplitudes();
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    int a = bit_of(idx, q_a, n);
    int b = bit_of(idx, q_b, n);
    out.rest[drop_two(idx, q_a, q_b, n)] +=
        std::conj(proj[static_cast<std::size_t>(2 * a + b)]) * amps[idx];
  }
  out.probability = kernels::active().norm_sq(out.rest.data(), out.rest.size());
  return out;
}

struct SingleCollapse {
  std::vector<cdouble> rest;
  double probability = 0.0;
};

SingleCollapse collapse_single_unnormalized(const StateVector& s, int index,
                                            Basis basis, int bit) {
  const int n = s.num_qubits();
  const auto proj = basis_vector(basis, bit);
  SingleCollapse out;
  out.rest.assign(std::size_t{1} << (n - 1), cdouble{});
  const auto& amps = s.amplitudes();
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    int b = bit_of(idx, index, n);
    out.rest[drop_one(idx, index, n)] +=
        std::conj(proj[static_cast<std::size_t>(b)]) * amps[idx];
  }
  out.probability = kernels::active().norm_sq(out.rest.data(), out.rest.size());
  return out;
}

void renormalize(std::vector<cdouble>& amps, double probability,
                 const char* what) {
  if (probability < kAlgebraTol)
    throw std::domain_error(std::string("zero-probability outcome in ") + what);
  kernels::active().scale(amps.data(), amps.size(),
                          1.0 / std::sqrt(probability));
}

}  // namespace

std::string_view to_string(Basis b) { return b == Basis::Z ? "Z" : "X"; }

Basis basis_from_string(std::string_view s) {
  if (s == "Z") return Basis::Z;
  if (s == "X") return Basis::X;
  throw std::invalid_argument("unknown basis name");
}

StateVector::StateVector(int num_qubits, std::vector<cdouble> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (num_qubits_ < 0 || num_qubits_ > kMaxQubits)
    throw std::out_of_range("qubit count must be 0..5");
  if (amps_.size() != (std::size_t{1} << num_qubits_))
    throw std::invalid_argument("amplitude count must be 2^num_qubits");
  double norm_sq = kernels::active().norm_sq(amps_.data(), amps_.size());
  if (std::abs(norm_sq - 1.0) > kInvariantTol)
    throw std::invalid_argument("state is not normalized");
}

StateVector StateVector::single(Basis basis, int bit) {
  auto v = basis_vector(basis, bit);
  return StateVector(1, {v[0], v[1]});
}

StateVector prepare_bell(BellClass c) {
  auto amps = bell_amps(c);
  return StateVector(2, {amps[0], amps[1], amps[2], amps[3]});
}

StateVector compose(std::span<const StateVector> parts) {
  int total = 0;
  for (const StateVector& p : parts) total += p.num_qubits();
  if (total > kMaxQubits)
    throw std::length_error("composite state exceeds qubit limit");
  std::vector<cdouble> amps{cdouble{1.0, 0.0}};
  int qubits = 0;
  for (const StateVector& p : parts) {
    std::vector<cdouble> next(amps.size() * p.dim());
    for (std::size_t i = 0; i < amps.size(); ++i)
      for (std::size_t j = 0; j < p.dim(); ++j)
        next[i * p.dim() + j] = amps[i] * p.amplitudes()[j];
    amps = std::move(next);
    qubits += p.num_qubits();
  }
  return StateVector(qubits, std::move(amps));
}

StateVector compose(const StateVector& a, const StateVector& b) {
  std::array<StateVector, 2> parts{a, b};
  return compose(std::span<const StateVector>(parts));
}

std::array<cdouble, 4> pauli_matrix(PauliCode op) {
  switch (op) {
    case PauliCode::Identity: return {1.0, 0.0, 0.0, 1.0};
    case PauliCode::SigmaX: return {0.0, 1.0, 1.0, 0.0};
    case PauliCode::ISigmaY: return {0.0, 1.0, -1.0, 0.0};
    case PauliCode::SigmaZ: return {1.0, 0.0, 0.0, -1.0};
  }
  throw std::logic_error("corrupt PauliCode");
}

StateVector apply_one_qubit(const std::array<cdouble, 4>& m, int index,
                            const StateVector& s) {
  check_index(s, index);
  std::vector<cdouble> amps = s.amplitudes();
  std::size_t stride = std::size_t{1} << (s.num_qubits() - 1 - index);
  kernels::active().apply_2x2(amps.data(), amps.size(), stride, m.data());
  return StateVector(s.num_qubits(), std::move(amps));
}

StateVector apply_single(PauliCode op, int index, const StateVector& s) {
  return apply_one_qubit(pauli_matrix(op), index, s);
}

StateVector apply_two_qubit(const std::array<cdouble, 16>& m, int q_a, int q_b,
                            const StateVector& s) {
  check_pair(s, q_a, q_b);
  const int n = s.num_qubits();
  const std::size_t sa = std::size_t{1} << (n - 1 - q_a);
  const std::size_t sb = std::size_t{1} << (n - 1 - q_b);
  std::vector<cdouble> amps = s.amplitudes();
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    if ((idx & sa) != 0 || (idx & sb) != 0) continue;
    const std::array<std::size_t, 4> at{idx, idx | sb, idx | sa, idx | sa | sb};
    std::array<cdouble, 4> in{};
    for (int k = 0; k < 4; ++k) in[static_cast<std::size_t>(k)] = amps[at[static_cast<std::size_t>(k)]];
    for (int r = 0; r < 4; ++r) {
      cdouble acc{};
      for (int c = 0; c < 4; ++c)
        acc += m[static_cast<std::size_t>(4 * r + c)] * in[static_cast<std::size_t>(c)];
      amps[at[static_cast<std::size_t>(r)]] = acc;
    }
  }
  return StateVector(n, std::move(amps));
}

std::array<double, 4> bell_outcome_probs(const StateVector& s, int q_a,
                                         int q_b) {
  check_pair(s, q_a, q_b);
  std::array<double, 4> probs{};
  for (int i = 0; i < 4; ++i)
    probs[static_cast<std::size_t>(i)] =
        collapse_pair_unnormalized(s, q_a, q_b, static_cast<BellClass>(i))
            .probability;
  return probs;
}

StateVector project_bell(const StateVector& s, int q_a, int q_b,
                         BellClass outcome) {
  check_pair(s, q_a, q_b);
  const int n = s.num_qubits();
  auto collapsed = collapse_pair_unnormalized(s, q_a, q_b, outcome);
  const auto proj = bell_amps(outcome);
  std::vector<cdouble> amps(s.dim(), cdouble{});
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    int a = bit_of(idx, q_a, n);
    int b = bit_of(idx, q_b, n);
    amps[idx] = proj[static_cast<std::size_t>(2 * a + b)] *
                collapsed.rest[drop_two(idx, q_a, q_b, n)];
  }
  renormalize(amps, collapsed.probability, "project_bell");
  return StateVector(n, std::move(amps));
}

StateVector collapse_bell(const StateVector& s, int q_a, int q_b,
                          BellClass outcome) {
  check_pair(s, q_a, q_b);
  auto collapsed = collapse_pair_unnormalized(s, q_a, q_b, outcome);
  renormalize(collapsed.rest, collapsed.probability, "collapse_bell");
  return StateVector(s.num_qubits() - 2, std::move(collapsed.rest));
}

std::pair<BellClass, StateVector> measure_bell_pair(const StateVector& s,
                                                    int q_a, int q_b,
                                                    Rng& rng) {
  auto probs = bell_outcome_probs(s, q_a, q_b);
  auto outcome = static_cast<BellClass>(rng.pick_weighted(probs.data(), 4));
  return {outcome, collapse_bell(s, q_a, q_b, outcome)};
}

std::array<double, 2> single_outcome_probs(const StateVector& s, int index,
                                           Basis basis) {
  check_index(s, index);
  std::array<double, 2> probs{};
  for (int bit = 0; bit < 2; ++bit)
    probs[static_cast<std::size_t>(bit)] =
        collapse_single_unnormalized(s, index, basis, bit).probability;
  return probs;
}

StateVector project_single(const StateVector& s, int index, Basis basis,
                           int bit) {
  check_index(s, index);
  const int n = s.num_qubits();
  auto collapsed = collapse_single_unnormalized(s, index, basis, bit);
  const auto proj = basis_vector(basis, bit);
  std::vector<cdouble> amps(s.dim(), cdouble{});
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    int b = bit_of(idx, index, n);
    amps[idx] = proj[static_cast<std::size_t>(b)] *
                collapsed.rest[drop_one(idx, index, n)];
  }
  renormalize(amps, collapsed.probability, "project_single");
  return StateVector(n, std::move(amps));
}

StateVector collapse_single(const StateVector& s, int index, Basis basis,
                            int bit) {
  check_index(s, index);
  auto collapsed = collapse_single_unnormalized(s, index, basis, bit);
  renormalize(collapsed.rest, collapsed.probability, "collapse_single");
  return StateVector(s.num_qubits() - 1, std::move(collapsed.rest));
}

std::pair<int, StateVector> measure_single(const StateVector& s, int index,
                                           Basis basis, Rng& rng) {
  auto probs = single_outcome_probs(s, index, basis);
  int bit = rng.pick_weighted(probs.data(), 2);
  return {bit, collapse_single(s, index, basis, bit)};
}

cdouble inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("inner product dimension mismatch");
  return kernels::active().inner(a.amplitudes().data(), b.amplitudes().data(),
                                 a.dim());
}

std::optional<BellClass> classify_bell_state(const StateVector& s) {
  if (s.num_qubits() != 2) return std::nullopt;
  for (int i = 0; i < 4; ++i) {
    auto c = static_cast<BellClass>(i);
    cdouble overlap = inner_product(prepare_bell(c), s);
    if (std::abs(std::abs(overlap) - 1.0) <= kAlgebraTol) return c;
  }
  return std::nullopt;
}

bool same_outcome_expected(BellClass c, Basis basis) {
  return basis == Basis::Z ? bell_x(c) == 0 : bell_z(c) == 0;
}

DensityMatrix::DensityMatrix(int dimension, std::vector<cdouble> entries)
    : dimension_(dimension), entries_(std::move(entries)) {
  if (dimension_ <= 0) throw std::out_of_range("dimension must be positive");
  if (entries_.size() !=
      static_cast<std::size_t>(dimension_) * static_cast<std::size_t>(dimension_))
    throw std::invalid_argument("entry count must be dimension^2");
  cdouble trace{};
  for (int r = 0; r < dimension_; ++r) {
    trace += entry(r, r);
    for (int c = 0; c < dimension_; ++c) {
      cdouble diff = entry(r, c) - std::conj(entry(c, r));
      if (std::abs(diff) > kInvariantTol)
        throw std::invalid_argument("matrix is not Hermitian");
    }
  }
  if (std::abs(trace - cdouble{1.0, 0.0}) > kInvariantTol)
    throw std::invalid_argument("matrix trace must be 1");
  for (double lambda : eigenvalues()) {
    if (lambda < -kInvariantTol)
      throw std::invalid_argument("matrix has a negative eigenvalue");
  }
}

cdouble DensityMatrix::entry(int row, int col) const {
  if (row < 0 || row >= dimension_ || col < 0 || col >= dimension_)
    throw std::out_of_range("density matrix index out of range");
  return entries_[static_cast<std::size_t>(row) *
                      static_cast<std::size_t>(dimension_) +
                  static_cast<std::size_t>(col)];
}

std::vector<double> DensityMatrix::eigenvalues() const {
  Eigen::MatrixXcd m(dimension_, dimension_);
  for (int r = 0; r < dimension_; ++r)
    for (int c = 0; c < dimension_; ++c) m(r, c) = entry(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue computation failed");
  std::vector<double> out(static_cast<std::size_t>(dimension_));
  for (int i = 0; i < dimension_; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

DensityMatrix reduced_density(const StateVector& s, std::span<const int> keep) {
  if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
  const int n = s.num_qubits();
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= n)
      throw std::out_of_range("kept qubit index out of range");
    for (std::size_t j = i + 1; j < keep.size(); ++j)
      if (keep[i] == keep[j])
        throw std::invalid_argument("kept qubit indices must be distinct");
  }
  const int k = static_cast<int>(keep.size());
  const int dim = 1 << k;
  auto kept_index = [&](std::size_t idx) {
    std::size_t out = 0;
    for (int i = 0; i < k; ++i)
      out = (out << 1) | static_cast<std::size_t>(bit_of(idx, keep[static_cast<std::size_t>(i)], n));
    return out;
  };
  auto env_index = [&](std::size_t idx) {
    std::size_t out = 0;
    for (int q = 0; q < n; ++q) {
      bool kept = false;
      for (int i = 0; i < k; ++i) kept = kept || keep[static_cast<std::size_t>(i)] == q;
      if (!kept) out = (out << 1) | static_cast<std::size_t>(bit_of(idx, q, n));
    }
    return out;
  };
  std::vector<cdouble> rho(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), cdouble{});
  const auto& amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    for (std::size_t j = 0; j < amps.size(); ++j) {
      if (env_index(i) != env_index(j)) continue;
      rho[kept_index(i) * static_cast<std::size_t>(dim) + kept_index(j)] +=
          amps[i] * std::conj(amps[j]);
    }
  }
  return DensityMatrix(dim, std::move(rho));
}

DensityMatrix reduced_density(const StateVector& s,
                              std::initializer_list<int> keep) {
  return reduced_density(s, std::span<const int>(keep.begin(), keep.size()));
}

}  // namespace qd
