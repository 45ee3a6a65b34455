#ifndef BLOWUP_RK4_HPP
#define BLOWUP_RK4_HPP

#include <array>
#include <cstddef>

namespace blowup {

// One classical RK4 step for y' = f(t, y); h may be negative.
template <std::size_t N, typename Rhs>
std::array<double, N> rk4_step(double t, double h, const std::array<double, N>& y,
                               Rhs&& f) {
  std::array<double, N> k1 = f(t, y);
  std::array<double, N> ytmp;
  for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + 0.5 * h * k1[i];
  std::array<double, N> k2 = f(t + 0.5 * h, ytmp);
  for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + 0.5 * h * k2[i];
  std::array<double, N> k3 = f(t + 0.5 * h, ytmp);
  for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * k3[i];
  std::array<double, N> k4 = f(t + h, ytmp);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

}  // namespace blowup

#endif
