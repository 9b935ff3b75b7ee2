// integrator.hpp — Explicit Runge-Kutta steppers for the master and rate equations.
//
// rk45-adaptive is Dormand-Prince 5(4) with a Hairer-style RMS error norm.
// rk4-fixed takes steps of exactly max_step (the last one shortened to land on
// the requested time) and is bit-reproducible for a given output grid.

#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

namespace dqd {

enum class Method { Rk4Fixed, Rk45Adaptive };

struct IntegratorConfig {
    double rel_tol{1e-8};
    double abs_tol{1e-10};
    double max_step{1e-3}; // cap for rk45, step size for rk4
    Method method{Method::Rk45Adaptive};
};

std::vector<std::string> check(const IntegratorConfig& cfg);

using State = Eigen::VectorXd;
using Rhs = std::function<void(double t, const State& y, State& dydt)>;

class Integrator {
public:
    explicit Integrator(IntegratorConfig cfg);

    // Advances y from t to t_end in place; t ends equal to t_end. The adaptive
    // step size is carried between calls. Throws StepFailure when the step
    // size collapses.
    void advance(const Rhs& f, double& t, State& y, double t_end);

    // Forget the carried step size (e.g. after the right-hand side jumped).
    void reset() noexcept { h_ = 0.0; }

    const IntegratorConfig& config() const noexcept { return cfg_; }
    long accepted() const noexcept { return accepted_; }
    long rejected() const noexcept { return rejected_; }

private:
    void advance_rk4(const Rhs& f, double& t, State& y, double t_end);
    void advance_rk45(const Rhs& f, double& t, State& y, double t_end);
    double error_norm(const State& y, const State& y_new, const State& err) const;

    IntegratorConfig cfg_;
    double h_{0.0};
    long accepted_{0};
    long rejected_{0};
    State k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, y_new_, err_;
};

} // namespace dqd
