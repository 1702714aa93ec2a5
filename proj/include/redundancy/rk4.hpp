#pragma once

#include <cmath>
#include <cstddef>

namespace redundancy {

// Classical fixed-step fourth-order Runge-Kutta for autonomous or time-dependent systems.
// State must support State + State and State * double.
template <typename State>
class RungeKutta4 {
 public:
  template <typename System>
  State step(System&& system, const State& y, double t, double dt) const {
    const double half = 0.5 * dt;
    const State k1 = system(t, y);
    const State k2 = system(t + half, y + k1 * half);
    const State k3 = system(t + half, y + k2 * half);
    const State k4 = system(t + dt, y + k3 * dt);
    return y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
  }
};

// Integrates from t0 to t_end with the given step, calling observer(t, state) at t0 and after
// every step. The observer may adjust the state in place (e.g. clamping) and return false to abort.
// Grid times are computed as t0 + i * dt to avoid drift; the last step is shortened to land on t_end.
template <typename State, typename System, typename Observer>
State integrate_fixed(System&& system, State y, double t0, double t_end, double dt, Observer&& observer) {
  RungeKutta4<State> stepper;
  if (!observer(t0, y)) return y;
  const double span = t_end - t0;
  const auto full_steps = static_cast<std::size_t>(std::floor(span / dt + 1e-9));
  double t = t0;
  for (std::size_t i = 1; i <= full_steps; ++i) {
    const double next = t0 + static_cast<double>(i) * dt;
    y = stepper.step(system, y, t, next - t);
    t = next;
    if (!observer(t, y)) return y;
  }
  if (t_end - t > 1e-9 * dt) {
    y = stepper.step(system, y, t, t_end - t);
    t = t_end;
    observer(t, y);
  }
  return y;
}

}  // namespace redundancy
