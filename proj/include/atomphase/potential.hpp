#ifndef ATOMPHASE_POTENTIAL_HPP
#define ATOMPHASE_POTENTIAL_HPP

#include <array>
#include <stdexcept>

namespace atomphase {

using Vec3 = std::array<double, 3>;

// External trapping/guiding potential, restricted to forms linear or
// quadratic in position so that wave packets stay Gaussian.
struct ExternalPotential {
    enum class Kind { none, linear, harmonic };

    Kind kind = Kind::none;
    Vec3 gradient{0.0, 0.0, 0.0};   // J/m, linear: V = g . r
    Vec3 stiffness{0.0, 0.0, 0.0};  // J/m^2, harmonic: V = 1/2 sum k_i (r_i - c_i)^2
    Vec3 center{0.0, 0.0, 0.0};     // m

    static ExternalPotential none() { return {}; }

    static ExternalPotential linear(const Vec3& g) {
        ExternalPotential p;
        p.kind = Kind::linear;
        p.gradient = g;
        return p;
    }

    static ExternalPotential harmonic(const Vec3& k, const Vec3& c) {
        for (double ki : k)
            if (ki < 0.0) throw std::invalid_argument("ExternalPotential: stiffness entries must be >= 0");
        ExternalPotential p;
        p.kind = Kind::harmonic;
        p.stiffness = k;
        p.center = c;
        return p;
    }

    double value(const Vec3& r) const {
        switch (kind) {
            case Kind::none:
                return 0.0;
            case Kind::linear:
                return gradient[0] * r[0] + gradient[1] * r[1] + gradient[2] * r[2];
            case Kind::harmonic: {
                double v = 0.0;
                for (int i = 0; i < 3; ++i) {
                    const double d = r[i] - center[i];
                    v += 0.5 * stiffness[i] * d * d;
                }
                return v;
            }
        }
        return 0.0;
    }

    // dV/dz, used by the equations-of-motion consistency check.
    double gradient_z(const Vec3& r) const {
        switch (kind) {
            case Kind::none:
                return 0.0;
            case Kind::linear:
                return gradient[2];
            case Kind::harmonic:
                return stiffness[2] * (r[2] - center[2]);
        }
        return 0.0;
    }
};

}  // namespace atomphase

#endif
