#pragma once

namespace thermodwell {

// Classic fourth-order Runge-Kutta step. State needs vector-space operators
// (Eigen types qualify); rhs is called as rhs(t, y).
template <class State, class Rhs>
State rk4_step(const State& y, double t, double h, Rhs&& rhs) {
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k1));
    const State k3 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k2));
    const State k4 = rhs(t + h, State(y + h * k3));
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace thermodwell
