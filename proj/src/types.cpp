#include "vbody/types.hpp"

#include <cmath>
#include <sstream>

namespace vbody {

double VortexSet::total_strength() const {
  double total = 0.0;
  for (double g : strengths) total += g;
  return total;
}

void VortexSet::validate(const FluidParams& params) const {
  if (strengths.size() != positions.size()) {
    throw DomainError("vortex set: strengths and positions differ in length");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    std::ostringstream msg;
    msg << "vortices[" << i << "]: ";
    if (!std::isfinite(strengths[i]) || strengths[i] == 0.0) {
      msg << "strength must be finite and nonzero";
      throw DomainError(msg.str());
    }
    if (!positions[i].allFinite()) {
      msg << "position must be finite";
      throw DomainError(msg.str());
    }
    if (positions[i].norm() <= params.radius) {
      msg << "position inside the body (|X| = " << positions[i].norm()
          << ", R = " << params.radius << ")";
      throw DomainError(msg.str());
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (positions[i] == positions[j]) {
        msg << "position coincides with vortices[" << j << "]";
        throw DomainError(msg.str());
      }
    }
  }
}

const char* to_string(Chart chart) {
  return chart == Chart::smbk ? "smbk" : "bmr";
}

Eigen::VectorXd ChartState::flat() const {
  Eigen::VectorXd out(dim());
  out.head<3>() = body;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    out.segment<2>(3 + 2 * i) = positions[i];
  }
  return out;
}

ChartState ChartState::from_flat(Chart chart, const Eigen::VectorXd& flat) {
  if (flat.size() < 3 || (flat.size() - 3) % 2 != 0) {
    throw DomainError("flat state must have length 3 + 2N");
  }
  ChartState s;
  s.chart = chart;
  s.body = flat.head<3>();
  const std::size_t n = (flat.size() - 3) / 2;
  s.positions.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.positions[i] = flat.segment<2>(3 + 2 * i);
  return s;
}

}  // namespace vbody
