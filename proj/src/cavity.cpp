#include "nvhyper/cavity.hpp"

#include <cmath>

namespace nvh {

void CavityParams::validate() const {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(kappa_s >= 0.0)) throw std::invalid_argument("kappa_s must be non-negative");
    if (!(g >= 0.0)) throw std::invalid_argument("g must be non-negative");
}

ReflectionPair::ReflectionPair(cplx r_, cplx r0_) : r(r_), r0(r0_) {
    constexpr double slack = 1e-12;
    if (std::abs(r) > 1.0 + slack || std::abs(r0) > 1.0 + slack)
        throw std::invalid_argument("reflection amplitudes must satisfy |r|, |r0| <= 1");
}

bool ReflectionPair::is_ideal(double tol) const {
    return std::abs(r - cplx{1.0, 0.0}) <= tol && std::abs(r0 - cplx{-1.0, 0.0}) <= tol;
}

cplx reflection_coupled(const CavityParams& p) {
    p.validate();
    const cplx i{0.0, 1.0};
    const cplx a = i * p.delta_0 + p.gamma / 2.0;
    const cplx den = a * (i * p.delta_c + p.kappa / 2.0 + p.kappa_s / 2.0) + p.g * p.g;
    if (den == cplx{0.0, 0.0}) throw std::domain_error("singular cavity parameters");
    return 1.0 - p.kappa * a / den;
}

cplx reflection_empty(const CavityParams& p) {
    p.validate();
    const cplx i{0.0, 1.0};
    return (i * p.delta_c - p.kappa / 2.0 + p.kappa_s / 2.0) / (i * p.delta_c + p.kappa / 2.0 + p.kappa_s / 2.0);
}

ReflectionPair resonant_pair(double x, double ks) {
    if (!(x >= 0.0) || !(ks >= 0.0)) throw std::invalid_argument("g/sqrt(kappa*gamma) and kappa_s/kappa must be >= 0");
    const double x2 = 4.0 * x * x;
    return {((ks - 1.0) + x2) / ((ks + 1.0) + x2), (ks - 1.0) / (ks + 1.0)};
}

LocalOperator scattering_operator(const ReflectionPair& pair) {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = pair.r;
    m(1, 1) = pair.r0;
    m(2, 2) = pair.r0;
    m(3, 3) = pair.r;
    return LocalOperator(m, is_unitary(m));
}

}  // namespace nvh
