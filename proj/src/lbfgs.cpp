// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastvqe/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>

namespace fastvqe {

namespace {

struct Probe {
    double alpha;
    double f;
    double slope;
    Eigen::VectorXd g;
};

class LineSearch {
public:
    LineSearch(const Objective& f, const Eigen::VectorXd& x, const Eigen::VectorXd& d, double f0, double slope0,
               const LbfgsOptions& opt)
        : f_(f), x_(x), d_(d), f0_(f0), slope0_(slope0), opt_(opt) {}

    std::optional<Probe> run(double alpha) {
        Probe prev{0.0, f0_, slope0_, {}};
        for (int i = 0; i < opt_.max_linesearch; ++i) {
            Probe cur = eval(alpha);
            if (cur.f > f0_ + opt_.c1 * alpha * slope0_ || (i > 0 && cur.f >= prev.f)) return zoom(prev, cur);
            if (std::abs(cur.slope) <= -opt_.c2 * slope0_) return cur;
            if (cur.slope >= 0) return zoom(cur, prev);
            prev = std::move(cur);
            alpha *= 2.0;
        }
        return std::nullopt;
    }

private:
    Probe eval(double alpha) {
        Probe p;
        p.alpha = alpha;
        p.g.resize(x_.size());
        p.f = f_(x_ + alpha * d_, p.g);
        if (!std::isfinite(p.f)) throw NonFiniteObjective("objective is not finite during line search");
        p.slope = p.g.dot(d_);
        return p;
    }

    // Minimizer of the cubic through (a, fa, da) and (b, fb, db), safeguarded.
    static double interpolate(const Probe& lo, const Probe& hi) {
        const double a = lo.alpha, b = hi.alpha;
        const double d1 = lo.slope + hi.slope - 3.0 * (lo.f - hi.f) / (a - b);
        const double disc = d1 * d1 - lo.slope * hi.slope;
        double t = 0.5 * (a + b);
        if (disc >= 0.0) {
            const double d2 = std::copysign(std::sqrt(disc), b - a);
            const double denom = hi.slope - lo.slope + 2.0 * d2;
            if (denom != 0.0) t = b - (b - a) * (hi.slope + d2 - d1) / denom;
        }
        const double left = std::min(a, b), right = std::max(a, b), w = right - left;
        if (!std::isfinite(t) || t < left + 0.1 * w || t > right - 0.1 * w) t = 0.5 * (a + b);
        return t;
    }

    std::optional<Probe> zoom(Probe lo, Probe hi) {
        for (int i = 0; i < opt_.max_linesearch; ++i) {
            if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, std::abs(lo.alpha))) break;
            Probe cur = eval(interpolate(lo, hi));
            if (cur.f > f0_ + opt_.c1 * cur.alpha * slope0_ || cur.f >= lo.f) {
                hi = std::move(cur);
            } else {
                if (std::abs(cur.slope) <= -opt_.c2 * slope0_) return cur;
                if (cur.slope * (hi.alpha - lo.alpha) >= 0) hi = lo;
                lo = std::move(cur);
            }
        }
        // Accept any decrease found so far.
        if (lo.alpha > 0.0 && lo.f < f0_) return lo;
        return std::nullopt;
    }

    const Objective& f_;
    const Eigen::VectorXd& x_;
    const Eigen::VectorXd& d_;
    double f0_;
    double slope0_;
    const LbfgsOptions& opt_;
};

}  // namespace

LbfgsResult lbfgs_minimize(const Objective& f, Eigen::VectorXd x0, const LbfgsOptions& opt) {
    LbfgsResult res;
    res.x = std::move(x0);
    const auto n = res.x.size();
    Eigen::VectorXd g(n);
    res.f = f(res.x, g);
    if (!std::isfinite(res.f)) throw NonFiniteObjective("objective is not finite at the starting point");
    res.gradient_norm = n > 0 ? g.lpNorm<Eigen::Infinity>() : 0.0;

    std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> history;  // (s, y)
    while (true) {
        if (res.gradient_norm < opt.gradient_tolerance) {
            res.converged = true;
            res.message = "gradient tolerance reached";
            return res;
        }
        if (res.iterations >= opt.max_iterations) {
            res.message = "iteration limit reached";
            return res;
        }

        // Two-loop recursion for d = -H g.
        Eigen::VectorXd q = g;
        std::vector<double> alphas(history.size());
        for (std::size_t k = history.size(); k-- > 0;) {
            const auto& [s, y] = history[k];
            alphas[k] = s.dot(q) / y.dot(s);
            q -= alphas[k] * y;
        }
        if (!history.empty()) {
            const auto& [s, y] = history.back();
            q *= s.dot(y) / y.dot(y);
        }
        for (std::size_t k = 0; k < history.size(); ++k) {
            const auto& [s, y] = history[k];
            const double beta = y.dot(q) / y.dot(s);
            q += (alphas[k] - beta) * s;
        }
        Eigen::VectorXd d = -q;
        double slope = g.dot(d);
        if (slope >= 0.0) {
            history.clear();
            d = -g;
            slope = g.dot(d);
        }

        const double alpha0 = history.empty() ? std::min(1.0, 1.0 / res.gradient_norm) : 1.0;
        LineSearch ls(f, res.x, d, res.f, slope, opt);
        auto step = ls.run(alpha0);
        if (!step && !history.empty()) {
            history.clear();
            d = -g;
            slope = g.dot(d);
            LineSearch sd(f, res.x, d, res.f, slope, opt);
            step = sd.run(std::min(1.0, 1.0 / res.gradient_norm));
        }
        if (!step) {
            res.message = "line search could not decrease the objective";
            return res;
        }

        Eigen::VectorXd s = step->alpha * d;
        Eigen::VectorXd y = step->g - g;
        res.x += s;
        res.f = step->f;
        g = std::move(step->g);
        res.gradient_norm = g.lpNorm<Eigen::Infinity>();
        ++res.iterations;

        if (s.dot(y) > 1e-16 * y.squaredNorm()) {
            history.emplace_back(std::move(s), std::move(y));
            if (static_cast<int>(history.size()) > opt.history) history.pop_front();
        }
    }
}

}  // namespace fastvqe
