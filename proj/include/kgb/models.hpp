#ifndef KGB_MODELS_HPP
#define KGB_MODELS_HPP

#include <cmath>
#include <string_view>
#include <variant>

namespace kgb {

// Nonlinearities F(u) of u_tt - u_xx + F(u) = 0, in rescaled units.

struct SineGordon {
  bool operator==(const SineGordon&) const = default;
};

// Graphene superlattice: F(u) = sin u / sqrt(1 + b^2 (1 - cos u)), b = Delta_1 / Delta.
struct GrapheneSL {
  double b = 0.0;
  bool operator==(const GrapheneSL&) const = default;
};

// Small-amplitude truncation: F(u) = u - beta u^3.
struct CubicKG {
  double beta = 0.0;
  bool operator==(const CubicKG&) const = default;
};

class NonlinearityModel {
 public:
  using Variant = std::variant<SineGordon, GrapheneSL, CubicKG>;

  static NonlinearityModel sine_gordon() { return NonlinearityModel(SineGordon{}); }
  // b = 0 is accepted and coincides with sine-Gordon.
  static NonlinearityModel graphene_sl(double b);
  static NonlinearityModel cubic_kg(double beta);

  const Variant& variant() const noexcept { return model_; }
  std::string_view tag() const noexcept;

  bool operator==(const NonlinearityModel&) const = default;

 private:
  explicit NonlinearityModel(Variant m) : model_(m) {}
  Variant model_;
};

// Per-alternative kernels. Kept inline so the solver can resolve the variant
// once per step and run a tight loop.

inline double force(SineGordon, double u) noexcept { return std::sin(u); }

inline double force(GrapheneSL m, double u) noexcept {
  // 1 - cos u written as 2 sin^2(u/2) to avoid cancellation near u = 0.
  const double s = std::sin(0.5 * u);
  return std::sin(u) / std::sqrt(1.0 + 2.0 * m.b * m.b * s * s);
}

inline double force(CubicKG m, double u) noexcept { return u - m.beta * u * u * u; }

inline double potential(SineGordon, double u) noexcept {
  const double s = std::sin(0.5 * u);
  return 2.0 * s * s;
}

inline double potential(GrapheneSL m, double u) noexcept {
  // (2/b^2)(sqrt(1+y) - 1) with y = b^2(1 - cos u), rewritten as
  // 4 sin^2(u/2) / (sqrt(1+y) + 1) so that b -> 0 is regular.
  const double s = std::sin(0.5 * u);
  const double y = 2.0 * m.b * m.b * s * s;
  return 4.0 * s * s / (std::sqrt(1.0 + y) + 1.0);
}

inline double potential(CubicKG m, double u) noexcept {
  const double u2 = u * u;
  return 0.5 * u2 - 0.25 * m.beta * u2 * u2;
}

inline double force(const NonlinearityModel& model, double u) {
  return std::visit([u](auto m) { return force(m, u); }, model.variant());
}

inline double potential(const NonlinearityModel& model, double u) {
  return std::visit([u](auto m) { return potential(m, u); }, model.variant());
}

// Coefficient of the cubic term in F(u) = u - beta u^3 + O(u^5).
double beta_for(const NonlinearityModel& model) noexcept;

// Dimensional scales of the graphene superlattice equation.
struct PhysicalScales {
  double omega0 = 1.0;
  double b = 1.0;
  double c = 1.0;

  void validate() const;
};

struct SpaceTime {
  double x = 0.0;
  double t = 0.0;
};

// x omega0 b / c -> x, t omega0 b -> t.
SpaceTime rescale_to_dimensionless(SpaceTime physical, const PhysicalScales& scales);
SpaceTime rescale_to_physical(SpaceTime dimensionless, const PhysicalScales& scales);

}  // namespace kgb

#endif  // KGB_MODELS_HPP
