#pragma once

#include <cmath>
#include <numbers>

namespace cqed {

template <typename F>
double sinusoid_minimum(F&& f) {
    constexpr double pi = std::numbers::pi;
    const double f0 = f(0.0);
    const double f1 = f(0.5 * pi);
    const double f2 = f(pi);
    const double f3 = f(1.5 * pi);
    // f(x) = A + B cos(x - theta): B cos(theta) = (f0 - f2)/2, B sin(theta) = (f1 - f3)/2.
    const double theta = std::atan2(0.5 * (f1 - f3), 0.5 * (f0 - f2));
    double minimum = theta + pi;
    if (minimum >= 2.0 * pi) minimum -= 2.0 * pi;
    if (minimum < 0.0) minimum += 2.0 * pi;
    return minimum;
}

}  // namespace cqed
