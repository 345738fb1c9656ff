#pragma once

#include <vector>

namespace cqed {

std::vector<double> linspace(double start, double stop, int points);

// Wrap an angle into (-pi, pi].
double wrap_angle(double angle);

// Least-squares fit of y ~ offset + amplitude * cos(x - phase) with
// amplitude >= 0; linear in (offset, cos, sin) coefficients.
struct CosineFit {
    double offset;
    double amplitude;
    double phase;
};

CosineFit fit_cosine(const std::vector<double>& x, const std::vector<double>& y);

// Phase of the minimum of a sampled sinusoid: evaluates f at
// {0, pi/2, pi, 3*pi/2}, recovers the single-harmonic parameters exactly and
// returns the argument in [0, 2*pi) where the fit is smallest. Used for
// pulse-phase calibrations.
template <typename F>
double sinusoid_minimum(F&& f);

}  // namespace cqed

#include "cqed/numeric_impl.hpp"
