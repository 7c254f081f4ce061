#pragma once

#include "nvhyper/hilbert.hpp"

namespace nvh {

// Rates in rad/s, or in units of sqrt(kappa*gamma) when normalized.
struct CavityParams {
    double g = 0.0;
    double kappa = 1.0;
    double kappa_s = 0.0;
    double gamma = 1.0;
    double delta_c = 0.0;
    double delta_0 = 0.0;

    void validate() const;
    bool resonant() const { return delta_c == 0.0 && delta_0 == 0.0; }
};

struct ReflectionPair {
    cplx r{1.0, 0.0};
    cplx r0{-1.0, 0.0};

    ReflectionPair() = default;
    ReflectionPair(cplx r_, cplx r0_);

    static ReflectionPair ideal() { return {}; }
    bool is_ideal(double tol = 1e-15) const;
};

cplx reflection_coupled(const CavityParams& p);
cplx reflection_empty(const CavityParams& p);

// Resonant amplitudes in normalized coordinates x = g/sqrt(kappa*gamma), ks = kappa_s/kappa.
ReflectionPair resonant_pair(double g_over_sqrt_kg, double ks_over_k);

// Diagonal on (polarization, spin): (R,+)->r, (R,-)->r0, (L,+)->r0, (L,-)->r.
LocalOperator scattering_operator(const ReflectionPair& pair);

}  // namespace nvh
