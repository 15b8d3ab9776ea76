#ifndef ATOMPHASE_ATOM_HPP
#define ATOMPHASE_ATOM_HPP

#include <cmath>
#include <stdexcept>

#include "atomphase/constants.hpp"

namespace atomphase {

// Two-level atom modelled as a harmonic dipole oscillator.
//
// The polarizability is stored as the volume alpha(0)/(4 pi eps0) in m^3, so
// that every phase formula reduces to products of {omega0, volume, c,
// distances, velocities} without carrying eps0 around.
struct Atom {
    double omega0;           // dipole transition angular frequency, rad/s
    double alpha0_volume;    // alpha(0)/(4 pi eps0), m^3
    double mass;             // atomic mass, kg
    double internal_energy;  // constant internal energy E0, J

    Atom(double omega0_, double alpha0_volume_, double mass_, double internal_energy_ = 0.0)
        : omega0(omega0_), alpha0_volume(alpha0_volume_), mass(mass_), internal_energy(internal_energy_) {
        if (!(omega0 > 0.0)) throw std::invalid_argument("Atom: omega0 must be > 0");
        if (!(alpha0_volume > 0.0)) throw std::invalid_argument("Atom: alpha0_volume must be > 0");
        if (!(mass > 0.0)) throw std::invalid_argument("Atom: mass must be > 0");
    }
};

// Near-field dispersion coefficient C3 such that V(z) = -C3 / z^3 in front of
// a perfect mirror: C3 = hbar * omega0 * alpha0_volume / 8.
inline double vdw_c3(const Atom& atom) {
    return 0.125 * si.hbar * atom.omega0 * atom.alpha0_volume;
}

// C3 / hbar in m^3/s. Phases only ever need this combination; forming it
// directly avoids the 1e-34 factor cancelling in and out.
inline double vdw_c3_over_hbar(const Atom& atom) {
    return 0.125 * atom.omega0 * atom.alpha0_volume;
}

inline double vdw_potential(const Atom& atom, double z) {
    if (!(z > 0.0)) throw std::domain_error("vdw_potential: z must be > 0");
    return -vdw_c3(atom) / (z * z * z);
}

// dV/dz = 3 C3 / z^4, positive for all z > 0 (attraction toward the plate).
inline double vdw_gradient(const Atom& atom, double z) {
    if (!(z > 0.0)) throw std::domain_error("vdw_gradient: z must be > 0");
    return 3.0 * vdw_c3(atom) / (z * z * z * z);
}

// Symmetric dipole correlation of the harmonic-oscillator model,
// K(s) = omega0 * alpha(0) * cos(omega0 s), with alpha(0) in SI units.
class DipoleCorrelation {
public:
    explicit DipoleCorrelation(const Atom& atom)
        : omega0_(atom.omega0), alpha0_si_(4.0 * M_PI * si.eps0 * atom.alpha0_volume) {}

    double operator()(double s) const { return omega0_ * alpha0_si_ * std::cos(omega0_ * s); }

    double at_equal_times() const { return omega0_ * alpha0_si_; }

private:
    double omega0_;
    double alpha0_si_;  // alpha(0) = 4 pi eps0 * alpha0_volume
};

}  // namespace atomphase

#endif
