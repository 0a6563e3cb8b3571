#include "vbody/energetics.hpp"

#include <cmath>
#include <numbers>

#include "vbody/detail/shift_terms.hpp"
#include "vbody/fluid.hpp"

namespace vbody::energetics {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double smbk_energy(const ChartState& s, const BodyParams& body,
                   const EffectiveMass& mass,
                   std::span<const double> strengths) {
  const double R2 = body.radius * body.radius;
  Vec2 P = Vec2::Zero();
  Vec2 Q = Vec2::Zero();
  for (std::size_t i = 0; i < s.positions.size(); ++i) {
    P += strengths[i] * s.positions[i];
    Q += strengths[i] * s.positions[i] / s.positions[i].squaredNorm();
  }
  const Vec2 L = s.body.tail<2>();
  const double translational =
      (L.squaredNorm() - 2.0 * cross(L, P) + 2.0 * R2 * cross(L, Q) +
       P.squaredNorm() - 2.0 * R2 * P.dot(Q) + R2 * R2 * Q.squaredNorm()) /
      (2.0 * mass.c);
  const double a = s.body[0] + detail::angular_shift(strengths, s.positions);
  return translational + a * a / (2.0 * mass.i_eff) -
         fluid::kirchhoff_routh(strengths, s.positions, body.fluid());
}

double bmr_energy(const ChartState& s, const BodyParams& body,
                  const EffectiveMass& mass,
                  std::span<const double> strengths) {
  const double omega = s.body[0];
  const Vec2 V = s.body.tail<2>();
  return 0.5 * mass.i_eff * omega * omega + 0.5 * mass.c * V.squaredNorm() -
         fluid::kirchhoff_routh(strengths, s.positions, body.fluid());
}

Eigen::VectorXd analytic_gradient(const ChartState& s, const BodyParams& body,
                                  const EffectiveMass& mass,
                                  std::span<const double> strengths) {
  const std::vector<Vec2> grad_w =
      fluid::grad_kirchhoff_routh(strengths, s.positions, body.fluid());
  Eigen::VectorXd g(s.dim());
  if (s.chart == Chart::bmr) {
    g[0] = mass.i_eff * s.body[0];
    g.segment<2>(1) = mass.c * s.body.tail<2>();
    for (std::size_t i = 0; i < s.positions.size(); ++i) {
      g.segment<2>(3 + 2 * i) = -grad_w[i];
    }
    return g;
  }
  const double omega =
      (s.body[0] + detail::angular_shift(strengths, s.positions)) / mass.i_eff;
  const Vec2 V =
      (Vec2(s.body.tail<2>()) -
       detail::total_shift(strengths, s.positions, body.radius)) / mass.c;
  g[0] = omega;
  g.segment<2>(1) = V;
  for (std::size_t i = 0; i < s.positions.size(); ++i) {
    const Vec2& X = s.positions[i];
    g.segment<2>(3 + 2 * i) =
        omega * strengths[i] * X -
        strengths[i] * detail::shift_term_jacobian(X, body.radius).transpose() * V -
        grad_w[i];
  }
  return g;
}

Eigen::VectorXd fd_gradient(const ChartState& s, const BodyParams& body,
                            std::span<const double> strengths) {
  // Sixth-order central differences.
  static constexpr double w[3] = {45.0 / 60.0, -9.0 / 60.0, 1.0 / 60.0};
  const Eigen::VectorXd x = s.flat();
  const double h = 1e-5 * (1.0 + x.lpNorm<Eigen::Infinity>());
  Eigen::VectorXd g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    double acc = 0.0;
    for (int m = 1; m <= 3; ++m) {
      Eigen::VectorXd xp = x;
      Eigen::VectorXd xm = x;
      xp[k] += m * h;
      xm[k] -= m * h;
      acc += w[m - 1] *
             (hamiltonian(ChartState::from_flat(s.chart, xp), body, strengths) -
              hamiltonian(ChartState::from_flat(s.chart, xm), body, strengths));
    }
    g[k] = acc / h;
  }
  return g;
}

}  // namespace

Eigen::Matrix3d EffectiveMass::matrix() const {
  return Eigen::Vector3d(i_eff, c, c).asDiagonal();
}

Eigen::Matrix3d EffectiveMass::added(double radius) {
  const double a = std::numbers::pi * radius * radius;
  return Eigen::Vector3d(0.0, a, a).asDiagonal();
}

EffectiveMass effective_mass(const BodyParams& body) {
  if (!(body.mass > 0.0) || !(body.inertia > 0.0) || !(body.radius > 0.0)) {
    throw DomainError("body: mass, inertia and radius must be positive");
  }
  return {body.mass + std::numbers::pi * body.radius * body.radius,
          body.inertia};
}

double hamiltonian(const ChartState& state, const BodyParams& body,
                   std::span<const double> strengths) {
  detail::check_strengths(strengths, state.positions.size());
  const EffectiveMass mass = effective_mass(body);
  return state.chart == Chart::smbk ? smbk_energy(state, body, mass, strengths)
                                    : bmr_energy(state, body, mass, strengths);
}

Eigen::VectorXd hamiltonian_gradient(const ChartState& state,
                                     const BodyParams& body,
                                     std::span<const double> strengths,
                                     GradientMode mode) {
  detail::check_strengths(strengths, state.positions.size());
  if (mode == GradientMode::finite_difference) {
    return fd_gradient(state, body, strengths);
  }
  return analytic_gradient(state, body, effective_mass(body), strengths);
}

}  // namespace vbody::energetics
