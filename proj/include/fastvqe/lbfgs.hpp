// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>

namespace fastvqe {

/// Raised when the objective returns a non-finite value.
class NonFiniteObjective : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LbfgsOptions {
    int history = 10;
    int max_iterations = 500;
    double gradient_tolerance = 1e-9;  ///< on the infinity norm
    double c1 = 1e-4;                  ///< sufficient decrease
    double c2 = 0.9;                   ///< curvature
    int max_linesearch = 40;
};

struct LbfgsResult {
    Eigen::VectorXd x;
    double f = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string message;
};

/// f(x, grad) -> value; must fill grad.
using Objective = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Limited-memory BFGS with a strong-Wolfe line search (bracket + zoom).
[[nodiscard]] LbfgsResult lbfgs_minimize(const Objective& f, Eigen::VectorXd x0, const LbfgsOptions& opt = {});

}  // namespace fastvqe
