#ifndef BLOWUP_GRID_HPP
#define BLOWUP_GRID_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace blowup {

// Uniform grid t_i = t0 + i*step, i = 0..count-1.
struct UniformGrid {
  double t0 = 0.0;
  double step = 0.0;
  std::size_t count = 0;

  double t(std::size_t i) const { return t0 + static_cast<double>(i) * step; }
  double back() const { return t(count - 1); }

  static UniformGrid over(double t0, double t1, double step) {
    auto n = static_cast<std::size_t>((t1 - t0) / step + 0.5) + 1;
    return UniformGrid{t0, step, n};
  }
};

// Composite trapezoid of samples on a uniform grid.
inline double trapezoid(std::span<const double> f, double step) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * step;
}

// Cumulative trapezoid: out[i] = integral of f over [x0, x_i], out[0] = 0.
inline void cumulative_trapezoid(std::span<const double> f, double step,
                                 std::vector<double>& out) {
  out.resize(f.size());
  if (f.empty()) return;
  out[0] = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i)
    out[i] = out[i - 1] + 0.5 * step * (f[i - 1] + f[i]);
}

}  // namespace blowup

#endif
