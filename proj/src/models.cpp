#include "kgb/models.hpp"

#include <string>

#include "kgb/error.hpp"

namespace kgb {

NonlinearityModel NonlinearityModel::graphene_sl(double b) {
  if (!std::isfinite(b) || b < 0.0) {
    throw Error(ErrorCode::InvalidParam, "graphene_sl requires b >= 0, got " + std::to_string(b));
  }
  return NonlinearityModel(GrapheneSL{b});
}

NonlinearityModel NonlinearityModel::cubic_kg(double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw Error(ErrorCode::InvalidParam, "cubic_kg requires beta >= 0, got " + std::to_string(beta));
  }
  return NonlinearityModel(CubicKG{beta});
}

std::string_view NonlinearityModel::tag() const noexcept {
  struct Visitor {
    std::string_view operator()(SineGordon) const { return "sine_gordon"; }
    std::string_view operator()(GrapheneSL) const { return "graphene_sl"; }
    std::string_view operator()(CubicKG) const { return "cubic_kg"; }
  };
  return std::visit(Visitor{}, model_);
}

double beta_for(const NonlinearityModel& model) noexcept {
  struct Visitor {
    double operator()(SineGordon) const { return 1.0 / 6.0; }
    double operator()(GrapheneSL m) const { return m.b * m.b / 4.0 + 1.0 / 6.0; }
    double operator()(CubicKG m) const { return m.beta; }
  };
  return std::visit(Visitor{}, model.variant());
}

void PhysicalScales::validate() const {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw Error(ErrorCode::InvalidParam, "omega0 must be positive");
  }
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidParam, "b must be positive");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::InvalidParam, "c must be positive");
  }
}

SpaceTime rescale_to_dimensionless(SpaceTime physical, const PhysicalScales& scales) {
  scales.validate();
  const double rate = scales.omega0 * scales.b;
  return {physical.x * rate / scales.c, physical.t * rate};
}

SpaceTime rescale_to_physical(SpaceTime dimensionless, const PhysicalScales& scales) {
  scales.validate();
  const double rate = scales.omega0 * scales.b;
  return {dimensionless.x * scales.c / rate, dimensionless.t / rate};
}

}  // namespace kgb
