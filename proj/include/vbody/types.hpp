#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vbody {

using Vec2 = Eigen::Vector2d;

// Thrown when a point leaves the fluid domain or a parameter is out of range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A vortex came closer than the configured clearance to the body or to
// another vortex. `other` is npos for body contact.
class ClearanceViolation : public DomainError {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  ClearanceViolation(const std::string& what, std::size_t index,
                     std::size_t other = npos)
      : DomainError(what), index_(index), other_(other) {}

  std::size_t index() const { return index_; }
  std::size_t other() const { return other_; }

 private:
  std::size_t index_;
  std::size_t other_;
};

struct FluidParams {
  double radius = 1.0;
};

struct BodyParams {
  double mass = 1.0;
  double inertia = 1.0;
  double radius = 1.0;

  FluidParams fluid() const { return {radius}; }
};

// Strengths and body-frame positions of the point vortices.
struct VortexSet {
  std::vector<double> strengths;
  std::vector<Vec2> positions;

  std::size_t size() const { return strengths.size(); }
  double total_strength() const;
  // Throws DomainError naming the offending vortex.
  void validate(const FluidParams& params) const;
};

enum class Chart { smbk, bmr };

const char* to_string(Chart chart);

// Phase point. `body` is (A, Lx, Ly) in the SMBK chart and (Omega, Vx, Vy)
// in the BMR chart. Flat layout: body triple, then X1, Y1, X2, Y2, ...
struct ChartState {
  Chart chart = Chart::bmr;
  Eigen::Vector3d body = Eigen::Vector3d::Zero();
  std::vector<Vec2> positions;

  std::size_t dim() const { return 3 + 2 * positions.size(); }
  Eigen::VectorXd flat() const;
  static ChartState from_flat(Chart chart, const Eigen::VectorXd& flat);
};

}  // namespace vbody
