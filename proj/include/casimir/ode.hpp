#pragma once

// Adaptive Dormand-Prince 5(4) (Boost.Odeint) on complex state vectors, with
// the step budget, underflow and NaN checks the oracle needs.

#include <complex>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

namespace casimir::oracle {

using cplx = std::complex<double>;
using State = Eigen::VectorXcd;
/// dydt arrives sized like y.
using Rhs = std::function<void(double t, Eigen::Ref<const State> y, Eigen::Ref<State> dydt)>;

class IntegrationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct StepControl {
    double rtol = 1e-10;
    double atol = 1e-10;
    double initial_step = 1e-3;
    double max_step = 0.0;  ///< 0: unbounded
    long max_steps = 50'000'000;
};

struct IntegrationStats {
    long accepted = 0;
    long rejected = 0;
};

/// Advances y from t0 to t1 in place. Throws IntegrationError on step-size
/// underflow, step budget exhaustion or a non-finite state. `last_step`, when
/// given, seeds the first step and receives the last unclamped step size.
IntegrationStats integrate_dopri5(const Rhs& f, double t0, double t1, State& y, const StepControl& ctl,
                                  double* last_step = nullptr);

}  // namespace casimir::oracle
