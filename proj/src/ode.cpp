#include "casimir/ode.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace casimir::oracle {

namespace odeint = boost::numeric::odeint;

IntegrationStats integrate_dopri5(const Rhs& f, double t0, double t1, State& y, const StepControl& ctl,
                                  double* last_step) {
    IntegrationStats stats;
    if (t1 == t0) return stats;
    if (t1 < t0) throw std::invalid_argument("integrate_dopri5 only integrates forward in time");

    using Buffer = std::vector<cplx>;
    using Stepper = odeint::runge_kutta_dopri5<Buffer>;
    const Eigen::Index n = y.size();
    auto system = [&](const Buffer& in, Buffer& out, double t) {
        const Eigen::Map<const State> yin(in.data(), n);
        Eigen::Map<State> yout(out.data(), n);
        f(t, yin, yout);
    };
    auto stepper = ctl.max_step > 0.0 ? odeint::make_controlled(ctl.atol, ctl.rtol, ctl.max_step, Stepper())
                                      : odeint::make_controlled(ctl.atol, ctl.rtol, Stepper());

    Buffer x(y.data(), y.data() + n);
    double t = t0;
    double h = last_step && *last_step > 0.0 ? *last_step : ctl.initial_step;
    if (ctl.max_step > 0.0) h = std::min(h, ctl.max_step);

    while (t < t1) {
        if (stats.accepted + stats.rejected >= ctl.max_steps) throw IntegrationError("step budget exhausted");
        const bool last = t + h >= t1;
        const double suggested = h;
        if (last) h = t1 - t;
        if (h <= 1e-14 * std::max(1.0, std::abs(t))) throw IntegrationError("step size underflow");

        if (stepper.try_step(system, x, t, h) == odeint::success) {
            ++stats.accepted;
            if (std::any_of(x.begin(), x.end(), [](cplx z) { return !std::isfinite(z.real()) || !std::isfinite(z.imag()); }))
                throw IntegrationError("non-finite state during integration");
            if (last) {
                t = t1;
                // keep the controller's step rather than the clamped remainder
                h = std::max(h, suggested);
            }
            if (last_step) *last_step = h;
        } else {
            ++stats.rejected;
        }
    }
    std::copy(x.begin(), x.end(), y.data());
    return stats;
}

}  // namespace casimir::oracle
