#include "vbody/structures.hpp"

#include <algorithm>
#include <cmath>

#include "vbody/detail/shift_terms.hpp"
#include "vbody/maps.hpp"
#include "vbody/se2.hpp"

namespace vbody::structures {

StructureMatrix::StructureMatrix(std::size_t dim)
    : dim_(dim), upper_(dim > 1 ? dim * (dim - 1) / 2 : 0, 0.0) {}

std::size_t StructureMatrix::index(std::size_t i, std::size_t j) const {
  return i * dim_ - i * (i + 1) / 2 + (j - i - 1);
}

double StructureMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  return i < j ? upper_[index(i, j)] : -upper_[index(j, i)];
}

void StructureMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i == j || i >= dim_ || j >= dim_) {
    throw DomainError("StructureMatrix::set: invalid index pair");
  }
  if (i < j) {
    upper_[index(i, j)] = value;
  } else {
    upper_[index(j, i)] = -value;
  }
}

Eigen::MatrixXd StructureMatrix::dense() const {
  Eigen::MatrixXd m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
  }
  return m;
}

Eigen::VectorXd StructureMatrix::apply(const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const double a = upper_[index(i, j)];
      if (a == 0.0) continue;
      out[i] += a * v[j];
      out[j] -= a * v[i];
    }
  }
  return out;
}

namespace {

void require_chart(const ChartState& s, Chart chart, const char* who) {
  if (s.chart != chart) {
    throw DomainError(std::string(who) + ": state is in the " +
                      to_string(s.chart) + " chart");
  }
}

void require_exterior(const ChartState& s, double R) {
  for (std::size_t i = 0; i < s.positions.size(); ++i) {
    if (!(s.positions[i].norm() > R)) {
      throw DomainError("vortices[" + std::to_string(i) + "] inside the body");
    }
  }
}

double total(std::span<const double> strengths) {
  double g = 0.0;
  for (double s : strengths) g += s;
  return g;
}

// Entries shared by the consistent and the published BMR blocks: the
// {V, X} coupling and sum Gamma_i (r_i^4 - R^4) / r_i^4.
double fill_velocity_vortex_block(StructureMatrix& m, const ChartState& s,
                                  std::span<const double> strengths, double c,
                                  double R) {
  const double R2 = R * R;
  double far = 0.0;
  for (std::size_t i = 0; i < s.positions.size(); ++i) {
    const Vec2& X = s.positions[i];
    const double r4 = X.squaredNorm() * X.squaredNorm();
    const double d = X.x() * X.x() - X.y() * X.y();
    const double off = -2.0 * R2 * X.x() * X.y() / (c * r4);
    const std::size_t ix = 3 + 2 * i;
    m.set(1, ix, (r4 - R2 * d) / (c * r4));
    m.set(1, ix + 1, off);
    m.set(2, ix, off);
    m.set(2, ix + 1, (r4 + R2 * d) / (c * r4));
    far += strengths[i] * (r4 - R2 * R2) / r4;
  }
  return far;
}

}  // namespace

StructureMatrix smbk_structure_matrix(const ChartState& state,
                                      std::span<const double> strengths,
                                      Signs signs) {
  require_chart(state, Chart::smbk, "smbk_structure_matrix");
  detail::check_strengths(strengths, state.positions.size());
  StructureMatrix m(state.dim());
  m.set(0, 1, -state.body[2]);
  m.set(0, 2, state.body[1]);
  m.set(1, 2, signs.cocycle * total(strengths));
  for (std::size_t i = 0; i < state.positions.size(); ++i) {
    m.set(3 + 2 * i, 4 + 2 * i, signs.vortex / strengths[i]);
  }
  return m;
}

StructureMatrix bmr_structure_matrix(const ChartState& state,
                                     std::span<const double> strengths,
                                     const BodyParams& body) {
  require_chart(state, Chart::bmr, "bmr_structure_matrix");
  detail::check_strengths(strengths, state.positions.size());
  require_exterior(state, body.radius);
  const auto mass = energetics::effective_mass(body);
  const double c = mass.c;
  const double I = mass.i_eff;
  StructureMatrix m(state.dim());
  // Omega row: the pushforward of the Lie-Poisson rotation generator.
  m.set(0, 1, -state.body[2] / I);
  m.set(0, 2, state.body[1] / I);
  for (std::size_t i = 0; i < state.positions.size(); ++i) {
    m.set(0, 3 + 2 * i, -state.positions[i].y() / I);
    m.set(0, 4 + 2 * i, state.positions[i].x() / I);
    m.set(3 + 2 * i, 4 + 2 * i, 1.0 / strengths[i]);
  }
  const double far = fill_velocity_vortex_block(m, state, strengths, c, body.radius);
  m.set(1, 2, -(total(strengths) - far) / (c * c));
  return m;
}

StructureMatrix bmr_published_block(const ChartState& state,
                                    std::span<const double> strengths,
                                    const BodyParams& body) {
  require_chart(state, Chart::bmr, "bmr_published_block");
  detail::check_strengths(strengths, state.positions.size());
  require_exterior(state, body.radius);
  const double c = energetics::effective_mass(body).c;
  StructureMatrix m(state.dim());
  const double far = fill_velocity_vortex_block(m, state, strengths, c, body.radius);
  m.set(1, 2, (total(strengths) - far) / (c * c));
  for (std::size_t i = 0; i < state.positions.size(); ++i) {
    m.set(3 + 2 * i, 4 + 2 * i, -1.0 / strengths[i]);
  }
  return m;
}

StructureMatrix to_momentum_coordinates(const StructureMatrix& m,
                                        const energetics::EffectiveMass& mass) {
  auto scale = [&](std::size_t k) {
    if (k == 0) return mass.i_eff;
    if (k < 3) return mass.c;
    return 1.0;
  };
  StructureMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i + 1; j < m.dim(); ++j) {
      out.set(i, j, scale(i) * scale(j) * m(i, j));
    }
  }
  return out;
}

InteractionBracket interaction_bracket_coefficients(
    const ChartState& state, std::span<const double> strengths,
    const BodyParams& body) {
  require_chart(state, Chart::bmr, "interaction_bracket_coefficients");
  detail::check_strengths(strengths, state.positions.size());
  require_exterior(state, body.radius);
  const auto mass = energetics::effective_mass(body);
  const FluidParams fluid = body.fluid();
  const VortexSet vortices{{strengths.begin(), strengths.end()}, state.positions};
  const std::size_t n = state.positions.size();

  se2::Costate pi{mass.i_eff * state.body[0], mass.c * state.body.tail<2>()};
  std::vector<Eigen::Matrix<double, 3, 2>> dphi(n);
  for (std::size_t i = 0; i < n; ++i) {
    dphi[i] = maps::bg_potential_gradient(strengths[i], state.positions[i], fluid);
  }

  InteractionBracket out{StructureMatrix(state.dim()), Eigen::Matrix3d::Zero(),
                         Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Zero()};
  using se2::Basis;
  const Basis basis[3] = {Basis::omega, Basis::x, Basis::y};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const se2::Algebra ea = se2::basis_vector(basis[a]);
      const se2::Algebra eb = se2::basis_vector(basis[b]);
      out.lie_poisson(a, b) = -se2::pair(pi, se2::bracket(ea, eb));
      out.magnetic(a, b) = maps::magnetic_pairing(basis[a], basis[b], vortices, fluid);
      double star = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        star += (dphi[i](a, 0) * dphi[i](b, 1) - dphi[i](a, 1) * dphi[i](b, 0)) /
                strengths[i];
      }
      out.star(a, b) = star;
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      out.bracket.set(a, b, out.lie_poisson(a, b) + out.magnetic(a, b) +
                                out.star(a, b));
    }
    // e_a acting on the vortex coordinates: {phi_a, X_i} and {phi_a, Y_i}.
    for (std::size_t i = 0; i < n; ++i) {
      out.bracket.set(a, 3 + 2 * i, -dphi[i](a, 1) / strengths[i]);
      out.bracket.set(a, 4 + 2 * i, dphi[i](a, 0) / strengths[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.bracket.set(3 + 2 * i, 4 + 2 * i, 1.0 / strengths[i]);
  }
  return out;
}

double jacobi_residual(const StructureField& field,
                       const Eigen::VectorXd& point, double h) {
  const StructureMatrix center = field(point);
  const std::size_t d = center.dim();
  const double step = h * (1.0 + point.lpNorm<Eigen::Infinity>());
  const Eigen::MatrixXd lam = center.dense();
  std::vector<Eigen::MatrixXd> dlam(d);
  for (std::size_t l = 0; l < d; ++l) {
    Eigen::VectorXd xp = point;
    Eigen::VectorXd xm = point;
    xp[l] += step;
    xm[l] -= step;
    dlam[l] = (field(xp).dense() - field(xm).dense()) / (2.0 * step);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      for (std::size_t k = j + 1; k < d; ++k) {
        double s = 0.0;
        for (std::size_t l = 0; l < d; ++l) {
          s += lam(i, l) * dlam[l](j, k) + lam(j, l) * dlam[l](k, i) +
               lam(k, l) * dlam[l](i, j);
        }
        worst = std::max(worst, std::abs(s));
      }
    }
  }
  return worst;
}

}  // namespace vbody::structures
