#include "cqed/numeric.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "cqed/constants.hpp"
#include "cqed/errors.hpp"

namespace cqed {

std::vector<double> linspace(double start, double stop, int points) {
    if (points < 2) throw DomainError("linspace needs at least 2 points");
    std::vector<double> out(points);
    const double step = (stop - start) / (points - 1);
    for (int k = 0; k < points; ++k) out[k] = start + k * step;
    out.back() = stop;
    return out;
}

double wrap_angle(double angle) {
    double wrapped = std::remainder(angle, kTwoPi);  // (-pi, pi] up to the boundary
    if (wrapped <= -kPi) wrapped += kTwoPi;
    return wrapped;
}

CosineFit fit_cosine(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DimensionError("fit_cosine: x and y differ in length");
    if (x.size() < 3) throw DomainError("fit_cosine needs at least 3 samples");
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (int k = 0; k < n; ++k) {
        design(k, 0) = 1.0;
        design(k, 1) = std::cos(x[k]);
        design(k, 2) = std::sin(x[k]);
        rhs[k] = y[k];
    }
    const Eigen::Vector3d beta = design.colPivHouseholderQr().solve(rhs);
    CosineFit fit;
    fit.offset = beta[0];
    fit.amplitude = std::hypot(beta[1], beta[2]);
    fit.phase = std::atan2(beta[2], beta[1]);
    return fit;
}

}  // namespace cqed
