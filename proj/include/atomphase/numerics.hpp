#ifndef ATOMPHASE_NUMERICS_HPP
#define ATOMPHASE_NUMERICS_HPP

#include <functional>
#include <stdexcept>
#include <string>

namespace atomphase {

// Tolerances for the adaptive quadrature. abs_tol is in the units of the
// integral (phase computations use radians).
struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-30;
    int max_depth = 40;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureConfig: tolerances must be > 0");
        if (max_depth < 10) throw std::invalid_argument("QuadratureConfig: max_depth must be >= 10");
    }
};

struct RootConfig {
    double rel_tol = 1e-14;
    int max_iter = 60;

    void validate() const {
        if (!(rel_tol > 0.0)) throw std::invalid_argument("RootConfig: rel_tol must be > 0");
        if (max_iter < 1) throw std::invalid_argument("RootConfig: max_iter must be >= 1");
    }
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Thrown when the adaptive subdivision hits max_depth before meeting the
// tolerance; carries the best estimate accumulated so far.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& msg, IntegralResult best)
        : std::runtime_error(msg), best_(best) {}

    const IntegralResult& best_estimate() const { return best_; }

private:
    IntegralResult best_;
};

class RootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive Gauss-Kronrod (G7,K15) quadrature over [a, b]. Deterministic,
// single-threaded; stops when the accumulated error estimate satisfies
// |error| <= max(rel_tol * |value|, abs_tol).
IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureConfig& cfg = {});

// Brent's method on a bracketing interval [lo, hi] with g(lo)*g(hi) <= 0.
double find_root(const std::function<double(double)>& g, double lo, double hi,
                 const RootConfig& cfg = {});

}  // namespace atomphase

#endif
