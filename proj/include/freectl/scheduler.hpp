#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "freectl/tensor.hpp"

namespace freectl {

// Flow-matching noise schedule: sigma_of(t) maps the integer timestep to the
// noise scale, linear by default. The optional shift reshapes the curve as
// sigma' = shift*s / (1 + (shift-1)*s) and is off (1.0) unless asked for.
struct NoiseSchedule {
    int T = 1000;
    double shift = 1.0;

    double sigma_of(int t) const {
        if (t < 0 || t > T) throw std::invalid_argument("sigma_of: t outside [0, T]");
        const double s = static_cast<double>(t) / T;
        if (shift == 1.0) return s;
        return shift * s / (1.0 + (shift - 1.0) * s);
    }
};

// Descending timestep grid for the Euler sampler; steps() transitions.
struct SamplingGrid {
    std::vector<int> timesteps;
    std::vector<double> sigmas;

    int steps() const { return static_cast<int>(timesteps.size()) - 1; }
};

inline SamplingGrid build_grid(const NoiseSchedule& sched, int t_start, int t_end, int steps) {
    if (!(sched.T >= t_start && t_start > t_end && t_end >= 0)) {
        throw std::invalid_argument("build_grid: need T >= t_start > t_end >= 0");
    }
    if (steps < 1) throw std::invalid_argument("build_grid: steps must be >= 1");
    SamplingGrid g;
    g.timesteps.reserve(static_cast<size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        const double t = t_start + (t_end - t_start) * (static_cast<double>(i) / steps);
        g.timesteps.push_back(static_cast<int>(std::lround(t)));
    }
    for (size_t i = 1; i < g.timesteps.size(); ++i) {
        if (g.timesteps[i] >= g.timesteps[i - 1]) {
            throw std::invalid_argument("build_grid: grid not strictly descending (too many steps?)");
        }
    }
    g.sigmas.reserve(g.timesteps.size());
    for (int t : g.timesteps) g.sigmas.push_back(sched.sigma_of(t));
    return g;
}

// x_t = sigma * eps + (1 - sigma) * x0
template <typename T>
TensorT<T> forward_noise(const TensorT<T>& x0, double sigma, const TensorT<T>& eps) {
    if (sigma < 0.0 || sigma > 1.0) throw std::invalid_argument("forward_noise: sigma outside [0,1]");
    check_same_shape(x0, eps, "forward_noise");
    TensorT<T> out = x0;
    const T s = static_cast<T>(sigma);
    const T c = static_cast<T>(1.0 - sigma);
    for (int64_t i = 0; i < out.numel(); ++i) out[i] = s * eps[i] + c * x0[i];
    return out;
}

// One Euler update along the straight-line flow: x' = x + (sigma_to - sigma_from) * v.
template <typename T>
TensorT<T> euler_step(const TensorT<T>& x_t, const TensorT<T>& v, double sigma_from, double sigma_to) {
    if (!(sigma_to < sigma_from)) throw std::invalid_argument("euler_step: sigma_to must be < sigma_from");
    check_same_shape(x_t, v, "euler_step");
    TensorT<T> out = x_t;
    const T d = static_cast<T>(sigma_to - sigma_from);
    for (int64_t i = 0; i < out.numel(); ++i) out[i] += d * v[i];
    return out;
}

}  // namespace freectl
