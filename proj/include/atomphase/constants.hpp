#ifndef ATOMPHASE_CONSTANTS_HPP
#define ATOMPHASE_CONSTANTS_HPP

namespace atomphase {

// SI defined values (2019 redefinition); c is exact by definition.
struct PhysicalConstants {
    double c;     // speed of light, m/s
    double hbar;  // reduced Planck constant, J*s
    double eps0;  // vacuum permittivity, F/m
};

inline constexpr PhysicalConstants si{299792458.0, 1.054571817e-34, 8.8541878128e-12};

}  // namespace atomphase

#endif
