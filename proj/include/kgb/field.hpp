#ifndef KGB_FIELD_HPP
#define KGB_FIELD_HPP

#include <cstddef>
#include <string_view>
#include <vector>

namespace kgb {

// Uniform 1D grid, nx samples from x_min to x_max inclusive.
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, std::size_t nx);

  // Largest nx whose spacing does not exceed dx.
  static Grid1D with_spacing(double x_min, double x_max, double dx);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t nx() const noexcept { return nx_; }
  double dx() const noexcept { return dx_; }
  double x(std::size_t i) const noexcept { return x_min_ + dx_ * static_cast<double>(i); }

  // Index of the node nearest to x, clamped to the grid.
  std::size_t nearest(double x) const noexcept;
  bool contains(double x) const noexcept { return x >= x_min_ && x <= x_max_; }

  bool operator==(const Grid1D&) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t nx_;
  double dx_;
};

// Dirichlet0 pins both ends to zero, Clamped holds the ends at their initial
// values (needed for kinks, whose right end sits at 2 pi), Periodic wraps
// node nx-1 onto node 0 so the period is nx * dx.
enum class Boundary { Dirichlet0, Clamped, Periodic };

std::string_view to_string(Boundary b) noexcept;
Boundary boundary_from_string(std::string_view s);

// Two time levels of the field: u_prev at t - dt and u_curr at t.
struct FieldState {
  std::vector<double> u_prev;
  std::vector<double> u_curr;
  double t = 0.0;
  double dt = 0.0;
};

}  // namespace kgb

#endif  // KGB_FIELD_HPP
