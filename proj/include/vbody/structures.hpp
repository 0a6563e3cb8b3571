#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vbody/energetics.hpp"
#include "vbody/types.hpp"

namespace vbody::structures {

// Skew-symmetric matrix; only the strict upper triangle is stored, so
// skew-symmetry holds by construction.
class StructureMatrix {
 public:
  explicit StructureMatrix(std::size_t dim = 0);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const;
  // Sets entry (i, j) and implicitly (j, i) = -value. Requires i != j.
  void set(std::size_t i, std::size_t j, double value);

  Eigen::MatrixXd dense() const;
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t dim_;
  std::vector<double> upper_;
};

enum class BracketKind { smbk, bmr, interaction };

// Global signs of the SMBK bracket: {X_i, Y_i} = vortex / Gamma_i and
// {Pi_x, Pi_y} = cocycle * Gamma.
struct Signs {
  double vortex = 1.0;
  double cocycle = -1.0;
};

StructureMatrix smbk_structure_matrix(const ChartState& state,
                                      std::span<const double> strengths,
                                      Signs signs = {});

// Full BMR structure, equal to the pushforward of the SMBK structure under
// the shift map. The Omega row is included.
StructureMatrix bmr_structure_matrix(const ChartState& state,
                                     std::span<const double> strengths,
                                     const BodyParams& body);

// The (V, X) block with the signs exactly as published for the BMR bracket.
// Omega row and column are zero.
StructureMatrix bmr_published_block(const ChartState& state,
                                    std::span<const double> strengths,
                                    const BodyParams& body);

// Rescales velocity coordinates to momenta: rows/columns of Omega by I and
// of V by c.
StructureMatrix to_momentum_coordinates(const StructureMatrix& m,
                                        const energetics::EffectiveMass& mass);

// Pieces of the reduced bracket on se(2)* x R^2N, in momentum coordinates
// (Pi_Omega, Pi_x, Pi_y, X1, Y1, ...). 3x3 tables are indexed by se2::Basis.
struct InteractionBracket {
  StructureMatrix bracket;
  Eigen::Matrix3d lie_poisson;  // -<Pi, [e_a, e_b]>
  Eigen::Matrix3d magnetic;     // beta(e_a~, e_b~)
  Eigen::Matrix3d star;         // e_a * e_b = {phi_a, phi_b} vortex bracket
};

InteractionBracket interaction_bracket_coefficients(
    const ChartState& state, std::span<const double> strengths,
    const BodyParams& body);

using StructureField = std::function<StructureMatrix(const Eigen::VectorXd&)>;

// Max over triples of the cyclic Jacobi sum, derivatives by central
// differences with step h (1 + |point|_inf).
double jacobi_residual(const StructureField& field,
                       const Eigen::VectorXd& point, double h = 1e-5);

}  // namespace vbody::structures
