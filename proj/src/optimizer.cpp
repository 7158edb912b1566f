#include "isomesh/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <ostream>

namespace isomesh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kHistory = 10;
constexpr double kArmijoC1 = 1e-4;
constexpr double kWolfeC2 = 0.9;
constexpr int kMaxLineSearchEvals = 60;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

double next_epsilon(double min_ratio) { return std::min(0.99, 0.99 * min_ratio); }

std::vector<double> pack_coordinates(const SubdividedMesh& mesh) {
    std::vector<double> x(2 * mesh.subvertices.size());
    for (std::size_t i = 0; i < mesh.subvertices.size(); ++i) {
        x[2 * i] = mesh.subvertices[i].x;
        x[2 * i + 1] = mesh.subvertices[i].y;
    }
    return x;
}

void unpack_coordinates(const std::vector<double>& x, SubdividedMesh& mesh) {
    for (std::size_t i = 0; i < mesh.subvertices.size(); ++i)
        mesh.subvertices[i] = {x[2 * i], x[2 * i + 1]};
}

StageStats minimize_stage(std::vector<double>& x, const VectorObjective& objective,
                          const TerminationCriteria& criteria, std::ostream* log) {
    const std::size_t n = x.size();
    StageStats stats;

    std::vector<double> g(n), g_new(n);
    double f = objective.value_and_gradient(x, g);
    stats.cost_initial = f;
    stats.cost_final = f;
    stats.grad_max_final = max_abs(g);
    if (!std::isfinite(f)) {
        stats.termination = "infeasible_start";
        return stats;
    }

    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;

    std::vector<double> d(n), x_new(n), s(n), y(n);
    std::vector<double> alpha(kHistory);
    int slow_iters = 0;

    for (int iter = 0; iter < criteria.max_iters; ++iter) {
        const double gmax = max_abs(g);
        stats.grad_max_final = gmax;
        if (gmax < criteria.grad_maxnorm_tol) {
            stats.termination = "gradient";
            return stats;
        }

        // Initial-step scale for steepest descent: without curvature
        // information a raw -g step can be huge and burns backtracks.
        const double sd_scale = 1.0 / std::max(1.0, gmax);

        // Two-loop recursion.
        d = g;
        const int m = static_cast<int>(s_hist.size());
        for (int i = m - 1; i >= 0; --i) {
            alpha[i] = rho_hist[i] * dot(s_hist[i], d);
            for (std::size_t k = 0; k < n; ++k) d[k] -= alpha[i] * y_hist[i][k];
        }
        if (m > 0) {
            const double gamma =
                dot(s_hist[m - 1], y_hist[m - 1]) / dot(y_hist[m - 1], y_hist[m - 1]);
            for (auto& v : d) v *= gamma;
        } else {
            for (auto& v : d) v *= sd_scale;
        }
        for (int i = 0; i < m; ++i) {
            const double beta = rho_hist[i] * dot(y_hist[i], d);
            for (std::size_t k = 0; k < n; ++k) d[k] += (alpha[i] - beta) * s_hist[i][k];
        }
        for (auto& v : d) v = -v;

        double dg = dot(d, g);
        if (dg >= 0.0) {  // not a descent direction: reset to steepest descent
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            for (std::size_t k = 0; k < n; ++k) d[k] = -sd_scale * g[k];
            dg = dot(d, g);
        }

        // Strong Wolfe line search (bracket + bisection zoom); non-finite
        // trial costs are treated as overshoots and bracketed away.
        double step = 1.0;
        double f_new = kInf;
        bool accepted = false;
        int evals = 0;
        const auto eval = [&](double a) {
            for (std::size_t k = 0; k < n; ++k) x_new[k] = x[k] + a * d[k];
            ++evals;
            return objective.value_and_gradient(x_new, g_new);
        };
        double a_lo = 0.0, f_lo = f, d_lo = dg;
        double a_hi = kInf, f_hi = kInf;
        double a = 1.0, a_prev = 0.0, f_prev = f;
        bool bracketed = false;
        while (evals < kMaxLineSearchEvals) {
            const double fa = eval(a);
            const double da = std::isfinite(fa) ? dot(g_new, d) : kInf;
            if (!std::isfinite(fa) || fa > f + kArmijoC1 * a * dg ||
                (bracketed ? fa >= f_lo : (a_prev > 0.0 && fa >= f_prev))) {
                a_hi = a;
                f_hi = fa;
                bracketed = true;
            } else if (std::fabs(da) <= -kWolfeC2 * dg) {
                step = a;
                f_new = fa;
                accepted = true;
                break;
            } else if (bracketed ? da * (a_hi - a_lo) >= 0.0 : da >= 0.0) {
                a_hi = a_lo;
                f_hi = f_lo;
                a_lo = a;
                f_lo = fa;
                d_lo = da;
                bracketed = true;
            } else {
                a_lo = a;
                f_lo = fa;
                d_lo = da;
            }
            a_prev = a;
            f_prev = std::isfinite(fa) ? fa : f_prev;
            if (bracketed) {
                if (std::fabs(a_hi - a_lo) < 1e-16 * std::max(1.0, std::fabs(a_hi))) break;
                a = 0.5 * (a_lo + a_hi);
            } else {
                a = 2.0 * a;
            }
        }
        if (!accepted) {
            // Fall back to the best Armijo point found, if any.
            if (bracketed && a_lo > 0.0 && std::isfinite(f_lo) &&
                f_lo <= f + kArmijoC1 * a_lo * dg) {
                step = a_lo;
                f_new = eval(a_lo);
                (void)d_lo;
                accepted = true;
            }
        }
        if (!accepted) {
            stats.termination = "line_search_failure";
            stats.iterations = iter;
            stats.cost_final = f;
            return stats;
        }
        for (std::size_t k = 0; k < n; ++k) {
            s[k] = x_new[k] - x[k];
            y[k] = g_new[k] - g[k];
        }
        const double sy = dot(s, y);
        if (sy > 1e-14 * norm2(s) * norm2(y)) {
            s_hist.push_back(s);
            y_hist.push_back(y);
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > kHistory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }

        const double step_norm = step * norm2(d);
        const double rel_decrease = (f - f_new) / std::max(std::fabs(f), 1e-300);
        x.swap(x_new);
        g.swap(g_new);
        stats.iterations = iter + 1;
        stats.cost_final = f_new;
        stats.grad_max_final = max_abs(g);

        if (log)
            *log << "iter " << (iter + 1) << "  E = " << f_new << "  |grad|_inf = "
                 << stats.grad_max_final << "\n";

        f = f_new;
        // A single slow iteration is common far from the optimum; require
        // the stall to persist before declaring convergence on cost.
        slow_iters = (rel_decrease < criteria.rel_cost_decrease_tol) ? slow_iters + 1 : 0;
        if (slow_iters >= 5) {
            stats.termination = "rel_cost";
            return stats;
        }
        if (step_norm < criteria.step_norm_tol) {
            stats.termination = "step";
            return stats;
        }
    }
    stats.termination = "max_iters";
    return stats;
}

RunStats continuation_run(SubdividedMesh& mesh, const MetricField& field,
                          const TargetSpec& targets, const TerminationCriteria& criteria,
                          std::ostream* log) {
    const auto t_start = std::chrono::steady_clock::now();
    RunStats run;

    std::vector<double> x = pack_coordinates(mesh);
    double epsilon = 0.0;  // first barrier guards plain validity

    for (int stage = 0; stage < 6; ++stage) {
        BarrierParams bp{epsilon};
        VectorObjective obj;
        obj.value = [&mesh, &field, &targets, bp](const std::vector<double>& xv) {
            unpack_coordinates(xv, mesh);
            try {
                return cost(mesh, field, targets, bp).total;
            } catch (const std::exception&) {
                return kInf;
            }
        };
        obj.value_and_gradient = [&mesh, &field, &targets, bp](const std::vector<double>& xv,
                                                               std::vector<double>& gv) {
            unpack_coordinates(xv, mesh);
            double f;
            try {
                f = cost(mesh, field, targets, bp).total;
            } catch (const std::exception&) {
                f = kInf;
            }
            if (!std::isfinite(f)) {
                std::fill(gv.begin(), gv.end(), 0.0);
                return f;
            }
            const std::vector<Vec2> grad_vec = gradient(mesh, field, targets, bp);
            for (std::size_t i = 0; i < grad_vec.size(); ++i) {
                gv[2 * i] = grad_vec[i].x;
                gv[2 * i + 1] = grad_vec[i].y;
            }
            return f;
        };

        if (log) *log << "stage " << (stage + 1) << "  epsilon = " << epsilon << "\n";
        StageStats st = minimize_stage(x, obj, criteria, log);
        st.stage = stage + 1;
        st.epsilon = epsilon;

        unpack_coordinates(x, mesh);
        const CostBreakdown cb = cost(mesh, field, targets, bp);
        st.min_area_ratio = cb.min_area_ratio;
        run.stages.push_back(st);
        run.cost_final = cb.total;
        run.min_area_ratio_final = cb.min_area_ratio;

        if (stage < 5) epsilon = next_epsilon(cb.min_area_ratio);
    }

    run.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return run;
}

}  // namespace isomesh
