// Copyright 2026 The PSV Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Finite-dimensional state algebra over labelled tensor factors: spin
// eigenstates along arbitrary axes, projective outcome sets, the Born rule,
// projection, and unitary evolution.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace psv::hilbert {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Spinor = Eigen::Vector2cd;

inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr double kNormEps = 1e-9;
inline constexpr double kProbEps = 1e-12;
inline constexpr double kMatrixEps = 1e-12;

enum class SubsystemKind { Spin, Mode, DetectorRegister };

const char *to_string(SubsystemKind k);
SubsystemKind parse_subsystem_kind(const std::string &s);

struct SubsystemSpec {
  std::string label;
  std::size_t dim = 2;
  SubsystemKind kind = SubsystemKind::Spin;

  static SubsystemSpec spin(std::string label) {
    return {std::move(label), 2, SubsystemKind::Spin};
  }
  static SubsystemSpec mode(std::string label) {
    return {std::move(label), 2, SubsystemKind::Mode};
  }
  static SubsystemSpec detector_register(std::string label, std::size_t dim) {
    return {std::move(label), dim, SubsystemKind::DetectorRegister};
  }

  bool operator==(const SubsystemSpec &) const = default;
};

/// Throws ConfigError on duplicate labels or kind/dim inconsistencies.
void validate_specs(std::span<const SubsystemSpec> specs);

/// Normalized amplitudes over an ordered tensor product. The first subsystem
/// is the most significant index digit.
class StateVector {
 public:
  StateVector() = default;
  /// Requires unit norm within kNormEps.
  StateVector(std::vector<SubsystemSpec> specs, std::vector<cplx> amplitudes);

  /// Rescales to unit norm; throws ConfigError on a zero vector.
  static StateVector normalized(std::vector<SubsystemSpec> specs,
                                std::vector<cplx> amplitudes);
  static StateVector basis(std::vector<SubsystemSpec> specs,
                           std::span<const std::size_t> digits);
  static StateVector from_spinor(SubsystemSpec spec, const Spinor &s);

  const std::vector<SubsystemSpec> &subsystems() const { return specs_; }
  std::span<const cplx> amplitudes() const { return amps_; }
  std::size_t size() const { return amps_.size(); }
  cplx amplitude(std::size_t i) const { return amps_[i]; }
  double norm() const;

  std::size_t position(const std::string &label) const;
  bool has(const std::string &label) const;
  const SubsystemSpec &spec(const std::string &label) const;
  /// Row-major stride of a subsystem inside the amplitude index.
  std::size_t stride(std::size_t position) const;
  std::vector<std::size_t> digits(std::size_t index) const;
  std::size_t index(std::span<const std::size_t> digits) const;

  /// Amplitude of the basis state given as label -> digit pairs covering all
  /// subsystems.
  cplx amplitude_of(
      std::span<const std::pair<std::string, std::size_t>> digits) const;

  /// Copy with the largest-magnitude amplitude made real and positive.
  StateVector canonical_phase() const;

 private:
  std::vector<SubsystemSpec> specs_;
  std::vector<cplx> amps_;
};

/// |<a|b>| == 1 within tol for states on the same subsystem layout.
bool equal_up_to_phase(const StateVector &a, const StateVector &b,
                       double tol = 1e-10);

/// Max-norm distance between amplitude vectors after phase canonicalization.
double phase_distance(const StateVector &a, const StateVector &b);

/// A unit 3-vector.
class Axis {
 public:
  /// Throws ConfigError unless |(x,y,z)| = 1 within 1e-12.
  Axis(double x, double y, double z);
  static Axis from_angles(double theta, double phi);
  static Axis x_axis() { return {1, 0, 0}; }
  static Axis y_axis() { return {0, 1, 0}; }
  static Axis z_axis() { return {0, 0, 1}; }
  /// "x", "y", "z", "-x" ... or "theta,phi" in radians.
  static Axis parse(const std::string &text);

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  double theta() const;
  double phi() const;
  Axis negated() const { return {-x_, -y_, -z_}; }
  std::string describe() const;

  bool operator==(const Axis &) const = default;

 private:
  double x_, y_, z_;
};

/// Angle between two axes in [0, pi].
double angle_between(const Axis &a, const Axis &b);

enum class Sign { Plus, Minus };

/// Eigenvector of r.sigma/2 with eigenvalue +-1/2:
///   + -> (cos(theta/2), e^{i phi} sin(theta/2))
///   - -> (-e^{-i phi} sin(theta/2), cos(theta/2))
Spinor axis_eigenstate(const Axis &axis, Sign sign);

/// Spin component operator r.L = r.sigma/2.
Matrix spin_operator(const Axis &axis);

/// <bra|ket>
cplx overlap(const Spinor &bra, const Spinor &ket);

StateVector tensor(const StateVector &a, const StateVector &b);
StateVector tensor(std::span<const StateVector> parts);

struct Outcome {
  std::string label;
  Matrix projector;  // on the target subspace, dim = prod(target dims)
};

/// A complete set of orthogonal projectors on the listed target subsystems.
class OutcomeSet {
 public:
  OutcomeSet() = default;
  OutcomeSet(std::vector<std::string> targets, std::vector<Outcome> outcomes);

  /// "+" / "-" along `axis` on one spin.
  static OutcomeSet spin(const std::string &target, const Axis &axis);
  /// "+"/"-" combinations ("+-" means first target +, second -) for
  /// independent spin measurements on several targets.
  static OutcomeSet spins(std::vector<std::string> targets,
                          std::span<const Axis> axes);
  /// One rank-1 projector per occupation pattern of the target modes.
  /// Labels are supplied per pattern (row-major, first target most
  /// significant).
  static OutcomeSet occupation(std::vector<std::string> targets,
                               std::vector<std::string> labels);

  const std::vector<std::string> &targets() const { return targets_; }
  const std::vector<Outcome> &outcomes() const { return outcomes_; }
  std::size_t size() const { return outcomes_.size(); }
  std::size_t find(const std::string &label) const;
  const Outcome &at(const std::string &label) const {
    return outcomes_[find(label)];
  }

  /// Hermitian, idempotent, mutually orthogonal and complete within
  /// kMatrixEps. Throws ConfigError otherwise.
  void validate() const;

 private:
  std::vector<std::string> targets_;
  std::vector<Outcome> outcomes_;
};

/// Kronecker product, `a` as the more significant factor.
Matrix kron(const Matrix &a, const Matrix &b);

bool is_unitary(const Matrix &u, double tol = kMatrixEps);
bool is_hermitian(const Matrix &h, double tol = kMatrixEps);

/// Applies an arbitrary operator on the listed subsystems (no norm
/// bookkeeping). The matrix index is row-major over `targets` in the given
/// order.
std::vector<cplx> apply_operator(const StateVector &psi,
                                 std::span<const std::string> targets,
                                 const Matrix &op);

double born_probability(const StateVector &psi, const OutcomeSet &outcomes,
                        const std::string &label);

/// Probabilities of every outcome, in outcome-set order.
std::vector<double> born_distribution(const StateVector &psi,
                                      const OutcomeSet &outcomes);

/// P psi / |P psi|, phase canonicalized. Throws ImpossibleBranchError when
/// the outcome probability is at most kProbEps.
StateVector project_and_normalize(const StateVector &psi,
                                  const OutcomeSet &outcomes,
                                  const std::string &label);

/// Throws ConfigError if `u` is not unitary on the targets.
StateVector apply_unitary(const StateVector &psi,
                          std::span<const std::string> targets,
                          const Matrix &u);

/// exp(-i H dt) via Hermitian eigendecomposition.
Matrix evolution_operator(const Matrix &h, double dt);

StateVector evolve_hamiltonian(const StateVector &psi,
                               std::span<const std::string> targets,
                               const Matrix &h, double dt);

/// Sum over `charged` Mode labels of <n>.
double charge_expectation(const StateVector &psi,
                          std::span<const std::string> charged);

/// Controlled flip in the eigenbasis of `basis`: |k+>|t> -> |k+>|t>,
/// |k->|t> -> |k->X_k|t>, where X_k swaps |k+> and |k->. Copies the control
/// into a target prepared in |k+>.
Matrix copy_gate(const Axis &basis);
/// The same gate in the occupation basis (|0> plays the role of |k+>).
Matrix occupation_copy_gate();

/// Permutation on a register swapping |0> and |pointer>.
Matrix pointer_shift(std::size_t dim, std::size_t pointer);

/// Number of nonzero Schmidt coefficients (above tol) across the cut
/// `labels` | rest.
std::size_t schmidt_rank(const StateVector &psi,
                         std::span<const std::string> labels,
                         double tol = 1e-10);

/// Reduced pure state of `label` if psi factorizes across that cut;
/// throws ConfigError otherwise.
Eigen::VectorXcd factor_state(const StateVector &psi, const std::string &label,
                              double tol = 1e-10);

/// Drops a factor that is in a known basis state, e.g. a detector register.
StateVector drop_factor(const StateVector &psi, const std::string &label);

}  // namespace psv::hilbert
