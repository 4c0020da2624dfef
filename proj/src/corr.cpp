// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#include "feqc/corr.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "feqc/errors.hpp"

namespace feqc {
namespace {

// Probabilities may come out slightly negative from cancellation.
constexpr double kNegativeSlack = 1e-9;

double clamp_probability(double p) {
  if (p < -kNegativeSlack) {
    throw std::runtime_error("negative probability " + std::to_string(p) +
                             " from correlation matrix");
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

CorrelationMatrix::CorrelationMatrix(int num_arms)
    : CorrelationMatrix(num_arms, Matrix::Zero(2 * num_arms, 2 * num_arms)) {}

CorrelationMatrix::CorrelationMatrix(int num_arms, Matrix m) : num_arms_(num_arms), m_(std::move(m)) {
  if (num_arms < 1 || num_arms > kMaxArms) throw std::invalid_argument("bad arm count");
  if (m_.rows() != 2 * num_arms || m_.cols() != 2 * num_arms) {
    throw std::invalid_argument("correlation matrix must be (2N)x(2N)");
  }
}

bool CorrelationMatrix::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool CorrelationMatrix::eigenvalues_in_unit_interval(double tol) const {
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return ev.minCoeff() >= -tol && ev.maxCoeff() <= 1.0 + tol;
}

bool CorrelationMatrix::is_projector(double tol) const {
  return (m_ * m_ - m_).cwiseAbs().maxCoeff() <= tol;
}

void CorrelationMatrix::check_mode(ModeIndex mode) const {
  if (mode.arm < 1 || mode.arm > num_arms_) {
    throw std::invalid_argument("arm " + std::to_string(mode.arm) + " out of range");
  }
}

CorrelationMatrix init_from_occupations(std::span<const ModeIndex> occupied, int total_arms) {
  CorrelationMatrix out(total_arms);
  Matrix m = Matrix::Zero(out.num_modes(), out.num_modes());
  for (const auto& mode : occupied) {
    out.check_mode(mode);
    m(mode.ordinal(), mode.ordinal()) = 1.0;
  }
  return {total_arms, std::move(m)};
}

CorrelationMatrix add_electron(const CorrelationMatrix& m, int arm, Complex alpha, Complex beta) {
  m.check_mode(up(arm));
  const int u = up(arm).ordinal(), d = down(arm).ordinal();
  if (std::abs(m.matrix()(u, u)) > 1e-12 || std::abs(m.matrix()(d, d)) > 1e-12) {
    throw PreconditionViolation("arm " + std::to_string(arm) + " is already occupied");
  }
  const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (n <= 0.0) throw std::invalid_argument("spinor must be nonzero");
  Eigen::VectorXcd orbital = Eigen::VectorXcd::Zero(m.num_modes());
  orbital(u) = alpha / n;
  orbital(d) = beta / n;
  // Single particle sum_mu phi_mu a†_mu: <a†_mu a_nu> = conj(phi_mu) phi_nu.
  return {m.num_arms(), m.matrix() + orbital.conjugate() * orbital.transpose()};
}

CorrelationMatrix evolve(const CorrelationMatrix& m, std::span<const ModeIndex> modes,
                         const Matrix& u) {
  const auto k = static_cast<Eigen::Index>(modes.size());
  if (k == 0 || u.rows() != k || u.cols() != k) {
    throw std::invalid_argument("unitary dimension does not match mode list");
  }
  const Matrix gram = u.adjoint() * u;
  if ((gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("matrix is not unitary within 1e-10");
  }
  Matrix w = Matrix::Identity(m.num_modes(), m.num_modes());
  for (Eigen::Index i = 0; i < k; ++i) {
    m.check_mode(modes[i]);
    for (Eigen::Index j = 0; j < i; ++j)
      if (modes[i] == modes[j]) throw std::invalid_argument("duplicate mode");
    w(modes[i].ordinal(), modes[i].ordinal()) = 0.0;
  }
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) w(modes[r].ordinal(), modes[c].ordinal()) = u(r, c);
  // U† a†_mu U = sum_k conj(W(mu, k)) a†_k, U† a_nu U = sum_l W(nu, l) a_l.
  return {m.num_arms(), w.conjugate() * m.matrix() * w.transpose()};
}

double occupation_probability(const CorrelationMatrix& m, ModeIndex mode) {
  m.check_mode(mode);
  return std::clamp(m(mode, mode).real(), 0.0, 1.0);
}

std::pair<double, CorrelationMatrix> project_occupation(const CorrelationMatrix& m,
                                                        ModeIndex mode, int outcome) {
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("occupation outcome is 0 or 1");
  const double n = occupation_probability(m, mode);
  const double p = outcome == 1 ? n : 1.0 - n;
  if (p <= 1e-12) throw std::invalid_argument("projection onto a zero-probability outcome");
  const int mu = mode.ordinal();
  const Matrix& a = m.matrix();
  const Eigen::VectorXcd col = a.col(mu);
  const Eigen::RowVectorXcd row = a.row(mu);
  // Outcome 1: M - M(:,mu) M(mu,:) / n;  outcome 0: M + M(:,mu) M(mu,:) / (1 - n).
  Matrix out = a + (outcome == 1 ? -1.0 : 1.0) / p * (col * row);
  out.row(mu).setZero();
  out.col(mu).setZero();
  out(mu, mu) = outcome == 1 ? 1.0 : 0.0;
  return {p, CorrelationMatrix(m.num_arms(), std::move(out))};
}

double principal_minor_probability(const CorrelationMatrix& m, std::span<const ModeIndex> modes) {
  const auto k = static_cast<Eigen::Index>(modes.size());
  if (k == 0) throw std::invalid_argument("principal minor needs at least one mode");
  Matrix sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    m.check_mode(modes[i]);
    for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = m(modes[i], modes[j]);
  }
  return clamp_probability(Eigen::PartialPivLU<Matrix>(sub).determinant().real());
}

TermCountedProbability single_occupancy_probability(const CorrelationMatrix& m,
                                                    std::span<const int> arms) {
  const auto count = arms.size();
  for (std::size_t i = 0; i < count; ++i) {
    m.check_mode(up(arms[i]));
    for (std::size_t j = 0; j < i; ++j)
      if (arms[i] == arms[j]) throw std::invalid_argument("arms must be distinct");
  }
  if (count == 0) return {1.0, 0};
  if (count > 20) throw std::invalid_argument("too many arms for term expansion");
  // Each arm picks n_up (+1), n_down (+1) or n_up n_down (-2).
  std::uint64_t total_terms = 1;
  for (std::size_t i = 0; i < count; ++i) total_terms *= 3;
  double sum = 0.0;
  std::vector<ModeIndex> modes;
  for (std::uint64_t t = 0; t < total_terms; ++t) {
    modes.clear();
    double coeff = 1.0;
    std::uint64_t digits = t;
    for (std::size_t i = 0; i < count; ++i, digits /= 3) {
      switch (digits % 3) {
        case 0: modes.push_back(up(arms[i])); break;
        case 1: modes.push_back(down(arms[i])); break;
        default:
          modes.push_back(up(arms[i]));
          modes.push_back(down(arms[i]));
          coeff *= -2.0;
      }
    }
    sum += coeff * principal_minor_probability(m, modes);
  }
  return {clamp_probability(sum), total_terms};
}

// ---------------------------------------------------------------------------

namespace {

class CorrRunner {
 public:
  explicit CorrRunner(const Circuit& c) : circuit_(c) {}

  void run(std::optional<CorrelationMatrix> m, std::size_t pc, OutcomeList outcomes, double prob) {
    for (; pc < circuit_.instructions.size(); ++pc) {
      const auto& ins = circuit_.instructions[pc];
      if (const auto* e = std::get_if<PrepElectron>(&ins)) {
        m = add_electron(*m, e->arm, e->alpha, e->beta);
      } else if (std::holds_alternative<PrepBell>(ins)) {
        throw NonGaussianOperation("Bell-pair preparation is not a Gaussian state");
      } else if (const auto* g = std::get_if<Gate>(&ins)) {
        if (m) m = apply(*m, *g);
      } else if (const auto* c = std::get_if<Conditional>(&ins)) {
        if (m && find_outcome(outcomes, c->label) == c->value) m = apply(*m, c->gate);
      } else if (const auto* meas = std::get_if<Measure>(&ins)) {
        if (!m) throw NonGaussianOperation("measurement after a non-Gaussian charge-1 projection");
        measure(*m, *meas, pc, outcomes, prob);
        return;
      }
    }
    result.branches.push_back({std::move(outcomes), prob});
  }

  CorrRunResult result;

 private:
  static CorrelationMatrix apply(CorrelationMatrix m, const Gate& g) {
    for (const auto& [modes, u] : gate_factors(g)) m = evolve(m, modes, u);
    return m;
  }

  bool later_measurement(std::size_t pc) const {
    for (std::size_t i = pc + 1; i < circuit_.instructions.size(); ++i)
      if (std::holds_alternative<Measure>(circuit_.instructions[i])) return true;
    return false;
  }

  struct Option {
    int value;
    double probability;
    std::optional<CorrelationMatrix> state;
  };

  void measure(const CorrelationMatrix& m, const Measure& meas, std::size_t pc,
               const OutcomeList& outcomes, double prob) {
    std::vector<Option> options;
    switch (meas.kind) {
      case MeasureKind::parity:
        throw NonGaussianOperation("parity measurement on arm " + std::to_string(meas.arm));
      case MeasureKind::spin:
        throw NonGaussianOperation("spin measurement on arm " + std::to_string(meas.arm));
      case MeasureKind::occupation: {
        const ModeIndex mode{meas.arm, meas.spin};
        const double n = occupation_probability(m, mode);
        ++result.terms;
        for (int v = 0; v < 2; ++v) {
          const double p = v ? n : 1.0 - n;
          if (p > kBranchThreshold) options.push_back({v, p, project_occupation(m, mode, v).second});
        }
        break;
      }
      case MeasureKind::charge: {
        const int arm = meas.arm;
        const ModeIndex both[] = {up(arm), down(arm)};
        const int arms[] = {arm};
        const double p2 = principal_minor_probability(m, both);
        const auto p1 = single_occupancy_probability(m, arms);
        result.terms += 1 + p1.terms;
        const double p0 = clamp_probability(1.0 - p1.probability - p2);
        if (p0 > kBranchThreshold) {
          auto s = project_occupation(m, up(arm), 0).second;
          options.push_back({0, p0, project_occupation(s, down(arm), 0).second});
        }
        if (p1.probability > kBranchThreshold) {
          const double only_up = clamp_probability(occupation_probability(m, up(arm)) - p2);
          const double only_down = clamp_probability(occupation_probability(m, down(arm)) - p2);
          std::optional<CorrelationMatrix> s;
          if (only_down <= kBranchThreshold) {
            s = project_occupation(project_occupation(m, up(arm), 1).second, down(arm), 0).second;
          } else if (only_up <= kBranchThreshold) {
            s = project_occupation(project_occupation(m, down(arm), 1).second, up(arm), 0).second;
          } else if (later_measurement(pc)) {
            throw NonGaussianOperation("charge-1 outcome on arm " + std::to_string(arm) +
                                       " superposes both spins");
          }
          options.push_back({1, p1.probability, std::move(s)});
        }
        if (p2 > kBranchThreshold) {
          auto s = project_occupation(m, up(arm), 1).second;
          options.push_back({2, p2, project_occupation(s, down(arm), 1).second});
        }
        break;
      }
    }
    double kept = 0.0;
    for (const auto& o : options) kept += o.probability;
    for (auto& o : options) {
      OutcomeList next = outcomes;
      next.emplace_back(meas.label, o.value);
      run(std::move(o.state), pc + 1, std::move(next), prob * o.probability / kept);
    }
  }

  const Circuit& circuit_;
};

}  // namespace

CorrRunResult corr_enumerate(const Circuit& circuit) {
  circuit.validate();
  const auto start = std::chrono::steady_clock::now();
  CorrRunner runner(circuit);
  runner.run(CorrelationMatrix(circuit.arm_count), 0, {}, 1.0);
  runner.result.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return std::move(runner.result);
}

}  // namespace feqc
