#include "vbody/maps.hpp"

#include "vbody/detail/shift_terms.hpp"
#include "vbody/energetics.hpp"
#include "vbody/fluid.hpp"

namespace vbody::maps {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }
Vec2 cross_e3(const Vec2& a) { return Vec2(a.y(), -a.x()); }  // a x e3
Vec2 e3_cross(const Vec2& a) { return Vec2(-a.y(), a.x()); }  // e3 x a

void check_chart(const ChartState& s, Chart expected, const char* who) {
  if (s.chart != expected) {
    throw DomainError(std::string(who) + ": state is in the " +
                      to_string(s.chart) + " chart");
  }
}

}  // namespace

se2::Costate bg_potential(const VortexSet& vortices, const FluidParams& params) {
  se2::Costate phi;
  for (std::size_t i = 0; i < vortices.size(); ++i) {
    const double g = vortices.strengths[i];
    const Vec2& X = vortices.positions[i];
    const fluid::Potentials psi = fluid::elementary_streams(X, params);
    phi.pi_xy += g * (-cross_e3(X) + Vec2(psi.x, psi.y));
    phi.pi_omega += g * (0.5 * X.squaredNorm() + psi.omega);
  }
  return phi;
}

Eigen::Matrix<double, 3, 2> bg_potential_gradient(double strength,
                                                  const Vec2& X,
                                                  const FluidParams& params) {
  const Eigen::Matrix2d dpsi = fluid::stream_gradients(X, params);
  Eigen::Matrix<double, 3, 2> d;
  d.row(0) = X.transpose();
  d.row(1) = Eigen::RowVector2d(0.0, -1.0) + dpsi.row(0);
  d.row(2) = Eigen::RowVector2d(1.0, 0.0) + dpsi.row(1);
  return strength * d;
}

ChartState shift_map(const ChartState& bmr, const BodyParams& body,
                     std::span<const double> strengths) {
  check_chart(bmr, Chart::bmr, "shift_map");
  detail::check_strengths(strengths, bmr.positions.size());
  const auto mass = energetics::effective_mass(body);
  ChartState out = bmr;
  out.chart = Chart::smbk;
  out.body[0] = mass.i_eff * bmr.body[0] -
                detail::angular_shift(strengths, bmr.positions);
  out.body.tail<2>() = mass.c * bmr.body.tail<2>() +
                       detail::total_shift(strengths, bmr.positions, body.radius);
  return out;
}

ChartState inverse_shift_map(const ChartState& smbk, const BodyParams& body,
                             std::span<const double> strengths) {
  check_chart(smbk, Chart::smbk, "inverse_shift_map");
  detail::check_strengths(strengths, smbk.positions.size());
  const auto mass = energetics::effective_mass(body);
  ChartState out = smbk;
  out.chart = Chart::bmr;
  out.body[0] = (smbk.body[0] + detail::angular_shift(strengths, smbk.positions)) /
                mass.i_eff;
  out.body.tail<2>() =
      (Vec2(smbk.body.tail<2>()) -
       detail::total_shift(strengths, smbk.positions, body.radius)) / mass.c;
  return out;
}

Eigen::MatrixXd shift_jacobian(const ChartState& bmr, const BodyParams& body,
                               std::span<const double> strengths) {
  check_chart(bmr, Chart::bmr, "shift_jacobian");
  detail::check_strengths(strengths, bmr.positions.size());
  const auto mass = energetics::effective_mass(body);
  const std::size_t d = bmr.dim();
  Eigen::MatrixXd J = Eigen::MatrixXd::Identity(d, d);
  J(0, 0) = mass.i_eff;
  J(1, 1) = mass.c;
  J(2, 2) = mass.c;
  for (std::size_t i = 0; i < bmr.positions.size(); ++i) {
    const Vec2& X = bmr.positions[i];
    J.block<1, 2>(0, 3 + 2 * i) = -strengths[i] * X.transpose();
    J.block<2, 2>(1, 3 + 2 * i) =
        strengths[i] * detail::shift_term_jacobian(X, body.radius);
  }
  return J;
}

Eigen::MatrixXd inverse_shift_jacobian(const ChartState& smbk,
                                       const BodyParams& body,
                                       std::span<const double> strengths) {
  check_chart(smbk, Chart::smbk, "inverse_shift_jacobian");
  detail::check_strengths(strengths, smbk.positions.size());
  const auto mass = energetics::effective_mass(body);
  const std::size_t d = smbk.dim();
  Eigen::MatrixXd J = Eigen::MatrixXd::Identity(d, d);
  J(0, 0) = 1.0 / mass.i_eff;
  J(1, 1) = 1.0 / mass.c;
  J(2, 2) = 1.0 / mass.c;
  for (std::size_t i = 0; i < smbk.positions.size(); ++i) {
    const Vec2& X = smbk.positions[i];
    J.block<1, 2>(0, 3 + 2 * i) = strengths[i] * X.transpose() / mass.i_eff;
    J.block<2, 2>(1, 3 + 2 * i) =
        -strengths[i] * detail::shift_term_jacobian(X, body.radius) / mass.c;
  }
  return J;
}

se2::Costate body_momentum_map(const se2::Costate& pi,
                               const VortexSet& vortices,
                               const FluidParams& params) {
  const se2::Costate phi = bg_potential(vortices, params);
  return {pi.pi_omega - phi.pi_omega, pi.pi_xy - phi.pi_xy};
}

se2::Costate momentum_map(const se2::Element& pose, const se2::Costate& pi,
                          const VortexSet& vortices, const FluidParams& params) {
  const Eigen::Matrix2d rot = pose.rotation();
  const Vec2& x0 = pose.x0;
  // Cotangent-lift part Ad*_{g^-1} Pi.
  const Vec2 lin = rot * pi.pi_xy;
  se2::Costate J{pi.pi_omega + cross(x0, lin), lin};
  const double gamma = vortices.total_strength();
  J.pi_xy += gamma * cross_e3(x0);
  for (std::size_t i = 0; i < vortices.size(); ++i) {
    const double g = vortices.strengths[i];
    const Vec2 x = se2::body_to_inertial(pose, vortices.positions[i]);
    // Spatial stream functions of the translating circle, at the offset
    // from its center.
    const Vec2 rel = x - x0;
    const fluid::Potentials psi = fluid::elementary_streams(rel, params);
    const Vec2 psi_xy(psi.x, psi.y);
    J.pi_xy += g * (cross_e3(rel) - psi_xy);
    J.pi_omega -= g * (0.5 * x.squaredNorm() + cross(x0, psi_xy));
  }
  return J;
}

se2::Costate relation(const se2::Element& pose, const se2::Costate& body,
                      double gamma_total) {
  const Vec2& x0 = pose.x0;
  const Vec2 jx = pose.rotation() * body.pi_xy + gamma_total * cross_e3(x0);
  return {body.pi_omega + cross(x0, jx) + 0.5 * gamma_total * x0.squaredNorm(),
          jx};
}

Tangent generator(const se2::Algebra& xi, const VortexSet& vortices) {
  Tangent t{xi, {}};
  t.vortex.reserve(vortices.size());
  for (const Vec2& X : vortices.positions) {
    t.vortex.push_back(xi.omega * e3_cross(X) + xi.v);
  }
  return t;
}

double magnetic_form(const Tangent& a, const Tangent& b,
                     const VortexSet& vortices, const FluidParams& params) {
  if (a.vortex.size() != vortices.size() || b.vortex.size() != vortices.size()) {
    throw DomainError("magnetic_form: tangent does not match the vortex set");
  }
  double beta = 0.0;
  for (std::size_t i = 0; i < vortices.size(); ++i) {
    const Vec2& X = vortices.positions[i];
    const Eigen::Matrix2d dpsi = fluid::stream_gradients(X, params);
    // Stream functions depend on x - x0, so they see the vortex velocity
    // relative to the center.
    const Vec2 da = dpsi * (a.vortex[i] - a.body.v);
    const Vec2 db = dpsi * (b.vortex[i] - b.body.v);
    const double dtheta = da.dot(b.body.v) - db.dot(a.body.v);
    beta += vortices.strengths[i] * (-cross(a.vortex[i], b.vortex[i]) - dtheta);
  }
  return beta;
}

double magnetic_pairing(se2::Basis a, se2::Basis b, const VortexSet& vortices,
                        const FluidParams& params) {
  return magnetic_form(generator(se2::basis_vector(a), vortices),
                       generator(se2::basis_vector(b), vortices), vortices,
                       params);
}

CocycleForm::CocycleForm(double omega_x, double omega_y, double x_y)
    : omega_x_(omega_x), omega_y_(omega_y), x_y_(x_y) {}

double CocycleForm::operator()(se2::Basis a, se2::Basis b) const {
  if (a == b) return 0.0;
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const double sign = ia < ib ? 1.0 : -1.0;
  const int lo = std::min(ia, ib);
  const int hi = std::max(ia, ib);
  if (lo == 0) return sign * (hi == 1 ? omega_x_ : omega_y_);
  return sign * x_y_;
}

CocycleForm cocycle_sigma(const VortexSet& vortices, const FluidParams& params) {
  const se2::Costate phi = bg_potential(vortices, params);
  auto sigma = [&](se2::Basis a, se2::Basis b) {
    const se2::Algebra xi = se2::basis_vector(a);
    const se2::Algebra eta = se2::basis_vector(b);
    return -se2::pair(phi, se2::bracket(xi, eta)) +
           magnetic_pairing(a, b, vortices, params);
  };
  using se2::Basis;
  return {sigma(Basis::omega, Basis::x), sigma(Basis::omega, Basis::y),
          sigma(Basis::x, Basis::y)};
}

}  // namespace vbody::maps
