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

#include "psv/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "psv/errors.hpp"
#include "psv/kernels.hpp"

namespace psv::hilbert {

namespace {

std::size_t product_of_dims(std::span<const SubsystemSpec> specs) {
  std::size_t n = 1;
  for (const auto &s : specs) n *= s.dim;
  return n;
}

void canonicalize(std::vector<cplx> &amps) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    // Ties go to the lowest index; the small slack keeps that choice stable
    // under roundoff.
    const double m = std::abs(amps[i]);
    if (m > best_mag + 1e-12) {
      best_mag = m;
      best = i;
    }
  }
  if (best_mag <= 0.0) return;
  const cplx phase = std::conj(amps[best]) / best_mag;
  kernels::active().scale(phase, amps.data(), amps.size());
  amps[best] = best_mag;
}

// Positions of `targets` inside psi's layout, in the caller's order.
std::vector<std::size_t> target_positions(const StateVector &psi,
                                          std::span<const std::string> targets) {
  std::vector<std::size_t> pos;
  pos.reserve(targets.size());
  for (const auto &t : targets) {
    const std::size_t p = psi.position(t);
    if (std::find(pos.begin(), pos.end(), p) != pos.end()) {
      throw ConfigError("subsystem '" + t + "' listed twice");
    }
    pos.push_back(p);
  }
  return pos;
}

std::size_t target_dim(const StateVector &psi, std::span<const std::size_t> pos) {
  std::size_t m = 1;
  for (auto p : pos) m *= psi.subsystems()[p].dim;
  return m;
}

}  // namespace

const char *to_string(SubsystemKind k) {
  switch (k) {
    case SubsystemKind::Spin: return "spin";
    case SubsystemKind::Mode: return "mode";
    case SubsystemKind::DetectorRegister: return "register";
  }
  return "?";
}

SubsystemKind parse_subsystem_kind(const std::string &s) {
  if (s == "spin") return SubsystemKind::Spin;
  if (s == "mode") return SubsystemKind::Mode;
  if (s == "register") return SubsystemKind::DetectorRegister;
  throw ConfigError("unknown subsystem kind '" + s + "'");
}

void validate_specs(std::span<const SubsystemSpec> specs) {
  std::set<std::string> seen;
  for (const auto &s : specs) {
    if (s.label.empty()) throw ConfigError("empty subsystem label");
    if (!seen.insert(s.label).second) {
      throw ConfigError("duplicate subsystem label '" + s.label + "'");
    }
    switch (s.kind) {
      case SubsystemKind::Spin:
      case SubsystemKind::Mode:
        if (s.dim != 2) {
          throw ConfigError("subsystem '" + s.label + "' of kind " +
                            to_string(s.kind) + " must have dim 2");
        }
        break;
      case SubsystemKind::DetectorRegister:
        if (s.dim < 2) {
          throw ConfigError("register '" + s.label + "' needs dim >= 2");
        }
        break;
    }
  }
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<SubsystemSpec> specs,
                         std::vector<cplx> amplitudes)
    : specs_(std::move(specs)), amps_(std::move(amplitudes)) {
  validate_specs(specs_);
  if (amps_.size() != product_of_dims(specs_)) {
    throw ConfigError("amplitude count " + std::to_string(amps_.size()) +
                      " does not match subsystem dimensions " +
                      std::to_string(product_of_dims(specs_)));
  }
  if (std::abs(norm() - 1.0) > kNormEps) {
    throw ConfigError("state is not normalized (norm " +
                      std::to_string(norm()) + ")");
  }
}

StateVector StateVector::normalized(std::vector<SubsystemSpec> specs,
                                    std::vector<cplx> amplitudes) {
  const double n =
      std::sqrt(kernels::active().norm_sq(amplitudes.data(), amplitudes.size()));
  if (!(n > 0.0)) throw ConfigError("cannot normalize a zero vector");
  kernels::active().scale(1.0 / n, amplitudes.data(), amplitudes.size());
  return StateVector(std::move(specs), std::move(amplitudes));
}

StateVector StateVector::basis(std::vector<SubsystemSpec> specs,
                               std::span<const std::size_t> digits) {
  if (digits.size() != specs.size()) {
    throw ConfigError("basis state needs one digit per subsystem");
  }
  std::vector<cplx> amps(product_of_dims(specs), 0.0);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (digits[i] >= specs[i].dim) {
      throw ConfigError("digit out of range for '" + specs[i].label + "'");
    }
    idx = idx * specs[i].dim + digits[i];
  }
  amps[idx] = 1.0;
  return StateVector(std::move(specs), std::move(amps));
}

StateVector StateVector::from_spinor(SubsystemSpec spec, const Spinor &s) {
  if (spec.dim != 2) throw ConfigError("spinor needs a dim-2 subsystem");
  return normalized({std::move(spec)}, {s(0), s(1)});
}

double StateVector::norm() const {
  return std::sqrt(kernels::active().norm_sq(amps_.data(), amps_.size()));
}

std::size_t StateVector::position(const std::string &label) const {
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].label == label) return i;
  }
  throw ConfigError("unknown subsystem '" + label + "'");
}

bool StateVector::has(const std::string &label) const {
  return std::any_of(specs_.begin(), specs_.end(),
                     [&](const auto &s) { return s.label == label; });
}

const SubsystemSpec &StateVector::spec(const std::string &label) const {
  return specs_[position(label)];
}

std::size_t StateVector::stride(std::size_t position) const {
  std::size_t s = 1;
  for (std::size_t i = position + 1; i < specs_.size(); ++i) s *= specs_[i].dim;
  return s;
}

std::vector<std::size_t> StateVector::digits(std::size_t index) const {
  std::vector<std::size_t> d(specs_.size());
  for (std::size_t i = specs_.size(); i-- > 0;) {
    d[i] = index % specs_[i].dim;
    index /= specs_[i].dim;
  }
  return d;
}

std::size_t StateVector::index(std::span<const std::size_t> digits) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    idx = idx * specs_[i].dim + digits[i];
  }
  return idx;
}

cplx StateVector::amplitude_of(
    std::span<const std::pair<std::string, std::size_t>> digits) const {
  if (digits.size() != specs_.size()) {
    throw ConfigError("amplitude_of needs a digit for every subsystem");
  }
  std::vector<std::size_t> d(specs_.size());
  for (const auto &[label, digit] : digits) d[position(label)] = digit;
  return amps_[index(d)];
}

StateVector StateVector::canonical_phase() const {
  StateVector out = *this;
  canonicalize(out.amps_);
  return out;
}

bool equal_up_to_phase(const StateVector &a, const StateVector &b, double tol) {
  if (a.subsystems() != b.subsystems()) return false;
  const cplx ip = kernels::active().dot(a.amplitudes().data(),
                                        b.amplitudes().data(), a.size());
  return std::abs(std::abs(ip) - 1.0) <= tol;
}

double phase_distance(const StateVector &a, const StateVector &b) {
  if (a.subsystems() != b.subsystems()) {
    throw ConfigError("phase_distance: layouts differ");
  }
  const StateVector ca = a.canonical_phase();
  const StateVector cb = b.canonical_phase();
  double d = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    d = std::max(d, std::abs(ca.amplitude(i) - cb.amplitude(i)));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Axes and spinors

Axis::Axis(double x, double y, double z) : x_(x), y_(y), z_(z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(std::abs(n - 1.0) <= 1e-12)) {
    std::ostringstream os;
    os << "axis (" << x << ", " << y << ", " << z << ") is not a unit vector";
    throw ConfigError(os.str());
  }
}

Axis Axis::from_angles(double theta, double phi) {
  return Axis(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
              std::cos(theta));
}

Axis Axis::parse(const std::string &text) {
  std::string s = text;
  bool negate = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+') && s.size() == 2) {
    negate = s[0] == '-';
    s = s.substr(1);
  }
  if (s == "x") return negate ? x_axis().negated() : x_axis();
  if (s == "y") return negate ? y_axis().negated() : y_axis();
  if (s == "z") return negate ? z_axis().negated() : z_axis();
  const auto sep = text.find_first_of(",:");
  if (sep == std::string::npos) {
    throw ConfigError("cannot parse axis '" + text +
                      "' (expected x|y|z|-x|... or theta,phi)");
  }
  try {
    std::size_t used = 0;
    const double theta = std::stod(text.substr(0, sep), &used);
    const std::string rest = text.substr(sep + 1);
    std::size_t used2 = 0;
    const double phi = std::stod(rest, &used2);
    if (used != sep || used2 != rest.size()) throw std::invalid_argument("");
    return from_angles(theta, phi);
  } catch (const std::logic_error &) {
    throw ConfigError("cannot parse axis '" + text + "'");
  }
}

double Axis::theta() const { return std::acos(std::clamp(z_, -1.0, 1.0)); }

double Axis::phi() const {
  if (std::abs(x_) < 1e-15 && std::abs(y_) < 1e-15) return 0.0;
  return std::atan2(y_, x_);
}

std::string Axis::describe() const {
  auto near = [](double a, double b) { return std::abs(a - b) < 1e-12; };
  if (near(x_, 1)) return "x";
  if (near(y_, 1)) return "y";
  if (near(z_, 1)) return "z";
  if (near(x_, -1)) return "-x";
  if (near(y_, -1)) return "-y";
  if (near(z_, -1)) return "-z";
  std::ostringstream os;
  os.precision(17);
  os << theta() << "," << phi();
  return os.str();
}

double angle_between(const Axis &a, const Axis &b) {
  const double d = a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
  return std::acos(std::clamp(d, -1.0, 1.0));
}

Spinor axis_eigenstate(const Axis &axis, Sign sign) {
  const double half = axis.theta() / 2.0;
  const double phi = axis.phi();
  const cplx i(0.0, 1.0);
  Spinor s;
  if (sign == Sign::Plus) {
    s << std::cos(half), std::exp(i * phi) * std::sin(half);
  } else {
    s << -std::exp(-i * phi) * std::sin(half), std::cos(half);
  }
  return s;
}

Matrix spin_operator(const Axis &axis) {
  const cplx i(0.0, 1.0);
  Matrix m(2, 2);
  m << axis.z(), axis.x() - i * axis.y(), axis.x() + i * axis.y(), -axis.z();
  return 0.5 * m;
}

cplx overlap(const Spinor &bra, const Spinor &ket) { return bra.dot(ket); }

StateVector tensor(const StateVector &a, const StateVector &b) {
  std::vector<SubsystemSpec> specs = a.subsystems();
  specs.insert(specs.end(), b.subsystems().begin(), b.subsystems().end());
  std::vector<cplx> amps(a.size() * b.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    kernels::active().axpy(a.amplitude(i), b.amplitudes().data(),
                           amps.data() + i * b.size(), b.size());
  }
  return StateVector(std::move(specs), std::move(amps));
}

StateVector tensor(std::span<const StateVector> parts) {
  if (parts.empty()) throw ConfigError("tensor of nothing");
  StateVector out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = tensor(out, parts[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Outcome sets

OutcomeSet::OutcomeSet(std::vector<std::string> targets,
                       std::vector<Outcome> outcomes)
    : targets_(std::move(targets)), outcomes_(std::move(outcomes)) {
  validate();
}

OutcomeSet OutcomeSet::spin(const std::string &target, const Axis &axis) {
  std::vector<Axis> axes{axis};
  return spins({target}, axes);
}

OutcomeSet OutcomeSet::spins(std::vector<std::string> targets,
                             std::span<const Axis> axes) {
  if (targets.size() != axes.size() || targets.empty()) {
    throw ConfigError("spins: one axis per target required");
  }
  const std::size_t n = targets.size();
  std::vector<Outcome> outcomes;
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << n); ++pattern) {
    std::string label;
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
    for (std::size_t k = 0; k < n; ++k) {
      const bool minus = (pattern >> (n - 1 - k)) & 1U;
      label += minus ? '-' : '+';
      const Spinor s = axis_eigenstate(axes[k], minus ? Sign::Minus : Sign::Plus);
      Eigen::VectorXcd next(v.size() * 2);
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        next(2 * i) = v(i) * s(0);
        next(2 * i + 1) = v(i) * s(1);
      }
      v = std::move(next);
    }
    outcomes.push_back({label, v * v.adjoint()});
  }
  return OutcomeSet(std::move(targets), std::move(outcomes));
}

OutcomeSet OutcomeSet::occupation(std::vector<std::string> targets,
                                  std::vector<std::string> labels) {
  const std::size_t m = std::size_t{1} << targets.size();
  if (labels.size() != m) {
    throw ConfigError("occupation outcome set needs " + std::to_string(m) +
                      " labels");
  }
  std::vector<Outcome> outcomes;
  for (std::size_t i = 0; i < m; ++i) {
    Matrix p = Matrix::Zero(m, m);
    p(i, i) = 1.0;
    outcomes.push_back({labels[i], p});
  }
  return OutcomeSet(std::move(targets), std::move(outcomes));
}

std::size_t OutcomeSet::find(const std::string &label) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (outcomes_[i].label == label) return i;
  }
  throw ConfigError("unknown outcome '" + label + "'");
}

void OutcomeSet::validate() const {
  if (targets_.empty()) throw ConfigError("outcome set has no targets");
  if (outcomes_.empty()) throw ConfigError("outcome set has no outcomes");
  const Eigen::Index m = outcomes_.front().projector.rows();
  Matrix sum = Matrix::Zero(m, m);
  std::set<std::string> labels;
  for (std::size_t a = 0; a < outcomes_.size(); ++a) {
    const Matrix &p = outcomes_[a].projector;
    const std::string &lbl = outcomes_[a].label;
    if (!labels.insert(lbl).second) {
      throw ConfigError("duplicate outcome label '" + lbl + "'");
    }
    if (p.rows() != m || p.cols() != m) {
      throw ConfigError("projector '" + lbl + "' has the wrong shape");
    }
    if (!is_hermitian(p)) throw ConfigError("projector '" + lbl + "' is not Hermitian");
    if (((p * p) - p).cwiseAbs().maxCoeff() > kMatrixEps) {
      throw ConfigError("projector '" + lbl + "' is not idempotent");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if ((p * outcomes_[b].projector).cwiseAbs().maxCoeff() > kMatrixEps) {
        throw ConfigError("projectors '" + lbl + "' and '" +
                          outcomes_[b].label + "' are not orthogonal");
      }
    }
    sum += p;
  }
  if ((sum - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > kMatrixEps) {
    throw ConfigError("outcome set is not complete");
  }
}

bool is_unitary(const Matrix &u, double tol) {
  if (u.rows() != u.cols()) return false;
  return ((u.adjoint() * u) - Matrix::Identity(u.rows(), u.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

bool is_hermitian(const Matrix &h, double tol) {
  if (h.rows() != h.cols()) return false;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------
// Local operator application.
//
// With p the layout position of the innermost target, amplitudes split into
// contiguous blocks of length stride(p). Each block address is (outer digits,
// target digits); for a fixed outer part the operator acts as
//   out_block[r] = sum_s op(r, s) * in_block[s],
// i.e. a sequence of contiguous axpy calls.

std::vector<cplx> apply_operator(const StateVector &psi,
                                 std::span<const std::string> targets,
                                 const Matrix &op) {
  const auto pos = target_positions(psi, targets);
  const std::size_t m = target_dim(psi, pos);
  if (static_cast<std::size_t>(op.rows()) != m ||
      static_cast<std::size_t>(op.cols()) != m) {
    throw ConfigError("operator shape does not match target dimension " +
                      std::to_string(m));
  }
  const std::size_t inner = psi.stride(*std::max_element(pos.begin(), pos.end()));

  // Offset of each target-local index relative to a block base.
  std::vector<std::size_t> offsets(m);
  for (std::size_t r = 0; r < m; ++r) {
    std::size_t rem = r, off = 0;
    for (std::size_t k = pos.size(); k-- > 0;) {
      const std::size_t d = psi.subsystems()[pos[k]].dim;
      off += (rem % d) * psi.stride(pos[k]);
      rem /= d;
    }
    offsets[r] = off;
  }

  const auto &kt = kernels::active();
  const cplx *in = psi.amplitudes().data();
  std::vector<cplx> out(psi.size(), 0.0);
  for (std::size_t base = 0; base < psi.size(); base += inner) {
    bool is_base = true;
    for (auto p : pos) {
      if ((base / psi.stride(p)) % psi.subsystems()[p].dim != 0) {
        is_base = false;
        break;
      }
    }
    if (!is_base) continue;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t s = 0; s < m; ++s) {
        const cplx coef = op(r, s);
        if (coef == cplx(0.0)) continue;
        kt.axpy(coef, in + base + offsets[s], out.data() + base + offsets[r],
                inner);
      }
    }
  }
  return out;
}

double born_probability(const StateVector &psi, const OutcomeSet &outcomes,
                        const std::string &label) {
  const auto projected =
      apply_operator(psi, outcomes.targets(), outcomes.at(label).projector);
  const double p = kernels::active().norm_sq(projected.data(), projected.size());
  return std::clamp(p, 0.0, 1.0);
}

std::vector<double> born_distribution(const StateVector &psi,
                                      const OutcomeSet &outcomes) {
  std::vector<double> probs;
  probs.reserve(outcomes.size());
  for (const auto &o : outcomes.outcomes()) {
    probs.push_back(born_probability(psi, outcomes, o.label));
  }
  return probs;
}

StateVector project_and_normalize(const StateVector &psi,
                                  const OutcomeSet &outcomes,
                                  const std::string &label) {
  auto projected =
      apply_operator(psi, outcomes.targets(), outcomes.at(label).projector);
  const double p = kernels::active().norm_sq(projected.data(), projected.size());
  if (p <= kProbEps) {
    throw ImpossibleBranchError("outcome '" + label +
                                "' has zero probability (p=" +
                                std::to_string(p) + ")");
  }
  kernels::active().scale(1.0 / std::sqrt(p), projected.data(), projected.size());
  canonicalize(projected);
  return StateVector(psi.subsystems(), std::move(projected));
}

StateVector apply_unitary(const StateVector &psi,
                          std::span<const std::string> targets,
                          const Matrix &u) {
  if (!is_unitary(u)) throw ConfigError("matrix is not unitary");
  return StateVector(psi.subsystems(), apply_operator(psi, targets, u));
}

Matrix evolution_operator(const Matrix &h, double dt) {
  if (!is_hermitian(h)) throw ConfigError("Hamiltonian is not Hermitian");
  if (dt < 0.0) throw ConfigError("negative evolution time");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Eigen::VectorXd &e = eig.eigenvalues();
  Eigen::VectorXcd phases(e.size());
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    phases(k) = std::exp(cplx(0.0, -e(k) * dt));
  }
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

StateVector evolve_hamiltonian(const StateVector &psi,
                               std::span<const std::string> targets,
                               const Matrix &h, double dt) {
  return apply_unitary(psi, targets, evolution_operator(h, dt));
}

double charge_expectation(const StateVector &psi,
                          std::span<const std::string> charged) {
  double q = 0.0;
  for (const auto &label : charged) {
    const std::size_t p = psi.position(label);
    if (psi.subsystems()[p].kind != SubsystemKind::Mode) {
      throw ConfigError("charged subsystem '" + label + "' is not a mode");
    }
    const std::size_t stride = psi.stride(p);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      if ((i / stride) % 2 == 1) q += std::norm(psi.amplitude(i));
    }
  }
  return q;
}

Matrix kron(const Matrix &a, const Matrix &b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix copy_gate(const Axis &basis) {
  const Spinor plus = axis_eigenstate(basis, Sign::Plus);
  const Spinor minus = axis_eigenstate(basis, Sign::Minus);
  const Matrix p_plus = plus * plus.adjoint();
  const Matrix p_minus = minus * minus.adjoint();
  const Matrix flip = plus * minus.adjoint() + minus * plus.adjoint();
  return kron(p_plus, Matrix::Identity(2, 2)) + kron(p_minus, flip);
}

Matrix occupation_copy_gate() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 3) = 1.0;
  u(3, 2) = 1.0;
  return u;
}

Matrix pointer_shift(std::size_t dim, std::size_t pointer) {
  if (pointer >= dim) throw ConfigError("register pointer out of range");
  Matrix u = Matrix::Identity(dim, dim);
  if (pointer != 0) {
    u(0, 0) = 0.0;
    u(pointer, pointer) = 0.0;
    u(0, pointer) = 1.0;
    u(pointer, 0) = 1.0;
  }
  return u;
}

namespace {

// psi reshaped as (labels) x (rest).
Matrix bipartition(const StateVector &psi, std::span<const std::string> labels) {
  std::vector<bool> in_a(psi.subsystems().size(), false);
  for (const auto &l : labels) in_a[psi.position(l)] = true;
  std::size_t rows = 1, cols = 1;
  for (std::size_t i = 0; i < in_a.size(); ++i) {
    (in_a[i] ? rows : cols) *= psi.subsystems()[i].dim;
  }
  Matrix m = Matrix::Zero(rows, cols);
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    const auto d = psi.digits(idx);
    std::size_t r = 0, c = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::size_t dim = psi.subsystems()[i].dim;
      if (in_a[i]) r = r * dim + d[i];
      else c = c * dim + d[i];
    }
    m(r, c) = psi.amplitude(idx);
  }
  return m;
}

}  // namespace

std::size_t schmidt_rank(const StateVector &psi,
                         std::span<const std::string> labels, double tol) {
  const Matrix m = bipartition(psi, labels);
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto &sv = svd.singularValues();
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++rank;
  }
  return rank;
}

Eigen::VectorXcd factor_state(const StateVector &psi, const std::string &label,
                              double tol) {
  const std::string labels[] = {label};
  const Matrix m = bipartition(psi, labels);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto &sv = svd.singularValues();
  if (sv.size() > 1 && sv(1) > tol) {
    throw ConfigError("subsystem '" + label + "' is entangled with the rest");
  }
  Eigen::VectorXcd v = svd.matrixU().col(0);
  Eigen::Index best = 0;
  v.cwiseAbs().maxCoeff(&best);
  v *= std::conj(v(best)) / std::abs(v(best));
  return v;
}

StateVector drop_factor(const StateVector &psi, const std::string &label) {
  const Eigen::VectorXcd v = factor_state(psi, label);
  const std::size_t p = psi.position(label);
  std::vector<SubsystemSpec> rest_specs;
  for (std::size_t i = 0; i < psi.subsystems().size(); ++i) {
    if (i != p) rest_specs.push_back(psi.subsystems()[i]);
  }
  const std::size_t stride = psi.stride(p);
  const std::size_t dim = psi.subsystems()[p].dim;
  std::vector<cplx> rest(psi.size() / dim, 0.0);
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    const std::size_t d = (idx / stride) % dim;
    const std::size_t hi = idx / (stride * dim);
    const std::size_t lo = idx % stride;
    rest[hi * stride + lo] += std::conj(v(d)) * psi.amplitude(idx);
  }
  return StateVector::normalized(std::move(rest_specs), std::move(rest));
}

}  // namespace psv::hilbert
