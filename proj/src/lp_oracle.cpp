#include "rchp/lp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rchp {

namespace {

struct LinearConstraint2 {
    double a1, a2, b; // a1*x + a2*y <= b
};

struct LinearConstraint3 {
    double a1, a2, a3, b;
};

double raw_gross(const MarketParams& params, const Capacities& caps,
                 const IntervalSignal& sig, double p_h, double p_ex, double p_im) {
    return gross_profit_for_hydrogen(params, caps, sig, p_ex, p_im,
                                     params.gamma * p_h * params.interval_hours);
}

// Best vertex of a 2-variable LP: every pairwise intersection of active
// constraints, kept if feasible, scored by the linear objective.
bool best_vertex2(const std::vector<LinearConstraint2>& cons, double c1, double c2,
                  double eps, double& best_val, double& best_x, double& best_y) {
    bool found = false;
    const std::size_t m = cons.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double det = cons[i].a1 * cons[j].a2 - cons[i].a2 * cons[j].a1;
            if (std::abs(det) < 1e-12) continue;
            const double x = (cons[i].b * cons[j].a2 - cons[i].a2 * cons[j].b) / det;
            const double y = (cons[i].a1 * cons[j].b - cons[i].b * cons[j].a1) / det;
            bool feasible = true;
            for (const auto& c : cons) {
                if (c.a1 * x + c.a2 * y > c.b + eps) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            const double val = c1 * x + c2 * y;
            if (!found || val > best_val) {
                best_val = val;
                best_x = x;
                best_y = y;
                found = true;
            }
        }
    }
    return found;
}

// Same for 3 variables via Cramer's rule over constraint triples.
bool best_vertex3(const std::vector<LinearConstraint3>& cons, double c1, double c2, double c3,
                  double eps, double& best_val, double& bx, double& by, double& bz) {
    bool found = false;
    const std::size_t m = cons.size();
    auto det3 = [](double a, double b, double c, double d, double e, double f, double g,
                   double h, double i) {
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                const auto& A = cons[i];
                const auto& B = cons[j];
                const auto& C = cons[k];
                const double d = det3(A.a1, A.a2, A.a3, B.a1, B.a2, B.a3, C.a1, C.a2, C.a3);
                if (std::abs(d) < 1e-12) continue;
                const double x = det3(A.b, A.a2, A.a3, B.b, B.a2, B.a3, C.b, C.a2, C.a3) / d;
                const double y = det3(A.a1, A.b, A.a3, B.a1, B.b, B.a3, C.a1, C.b, C.a3) / d;
                const double z = det3(A.a1, A.a2, A.b, B.a1, B.a2, B.b, C.a1, C.a2, C.b) / d;
                bool feasible = true;
                for (const auto& c : cons) {
                    if (c.a1 * x + c.a2 * y + c.a3 * z > c.b + eps) {
                        feasible = false;
                        break;
                    }
                }
                if (!feasible) continue;
                const double val = c1 * x + c2 * y + c3 * z;
                if (!found || val > best_val) {
                    best_val = val;
                    bx = x;
                    by = y;
                    bz = z;
                    found = true;
                }
            }
        }
    }
    return found;
}

} // namespace

OracleSolution solve_exact(const MarketParams& params, const Capacities& caps,
                           const IntervalSignal& sig, ParticipationModel model,
                           const std::optional<PiecewiseProduction>& pw) {
    params.validate();
    caps.validate();
    sig.validate();
    const double avail = sig.eta * caps.q_r;
    const double q_h = caps.q_h;
    const double dt = params.interval_hours;
    const double im_cap =
        (model == ParticipationModel::M1c || model == ParticipationModel::M2) ? q_h : 0.0;
    const double ex_cap =
        (model == ParticipationModel::M1p || model == ParticipationModel::M2) ? avail : 0.0;
    const double eps = 1e-9 * std::max({1.0, q_h, avail});
    const double credit = params.tau_r * sig.eta * caps.q_r * dt;
    const double import_price = (sig.lmp + params.tau_rec_im) * dt;
    const double export_price = (sig.lmp + params.tau_rec_ex) * dt;

    OracleSolution best;
    bool have = false;
    auto offer = [&](LpCase c, const Dispatch& d, double gross) {
        // NoImport wins ties for determinism.
        if (!have || gross > best.gross ||
            (gross == best.gross && c == LpCase::NoImport && best.winner == LpCase::NoExport)) {
            best.dispatch = d;
            best.gross = gross;
            best.winner = c;
            have = true;
        }
    };

    if (!pw) {
        const double obj_h = params.gamma * params.hydrogen_margin() * dt;
        {
            // No-export LP in (p_h, p_im).
            std::vector<LinearConstraint2> cons{
                {-1.0, 0.0, 0.0}, {1.0, 0.0, q_h},   {0.0, -1.0, 0.0},
                {0.0, 1.0, im_cap}, {1.0, -1.0, avail}, {-1.0, 1.0, 0.0},
            };
            double val, x, y;
            if (best_vertex2(cons, obj_h, -import_price, eps, val, x, y)) {
                Dispatch d;
                d.p_h = x;
                d.p_im = y;
                d.h = params.gamma * x * dt;
                offer(LpCase::NoExport, d, val + credit);
            }
        }
        {
            // No-import LP in (p_h, p_ex).
            std::vector<LinearConstraint2> cons{
                {-1.0, 0.0, 0.0}, {1.0, 0.0, q_h},   {0.0, -1.0, 0.0},
                {0.0, 1.0, ex_cap}, {1.0, 1.0, avail}, {-1.0, -1.0, 0.0},
            };
            double val, x, y;
            if (best_vertex2(cons, obj_h, export_price, eps, val, x, y)) {
                Dispatch d;
                d.p_h = x;
                d.p_ex = y;
                d.h = params.gamma * x * dt;
                offer(LpCase::NoImport, d, val + credit);
            }
        }
        return best;
    }

    // Piecewise production: variables (H kg/h, p_h, p_x).
    const double obj_H = params.hydrogen_margin() * dt;
    std::vector<LinearConstraint3> common{
        {-1.0, 0.0, 0.0, 0.0},  // H >= 0
        {0.0, -1.0, 0.0, 0.0},  // p_h >= 0
        {0.0, 1.0, 0.0, q_h},
    };
    for (const auto& s : pw->segments())
        common.push_back({1.0, -s.alpha, 0.0, s.beta}); // H <= alpha*p_h + beta
    {
        std::vector<LinearConstraint3> cons = common;
        cons.push_back({0.0, 0.0, -1.0, 0.0});
        cons.push_back({0.0, 0.0, 1.0, im_cap});
        cons.push_back({0.0, 1.0, -1.0, avail}); // p_h - p_im <= avail
        cons.push_back({0.0, -1.0, 1.0, 0.0});   // p_h - p_im >= 0
        double val, H, x, y;
        if (best_vertex3(cons, obj_H, 0.0, -import_price, eps, val, H, x, y)) {
            Dispatch d;
            d.p_h = x;
            d.p_im = y;
            d.h = H * dt;
            offer(LpCase::NoExport, d, val + credit);
        }
    }
    {
        std::vector<LinearConstraint3> cons = common;
        cons.push_back({0.0, 0.0, -1.0, 0.0});
        cons.push_back({0.0, 0.0, 1.0, ex_cap});
        cons.push_back({0.0, 1.0, 1.0, avail});  // p_h + p_ex <= avail
        cons.push_back({0.0, -1.0, -1.0, 0.0});
        double val, H, x, y;
        if (best_vertex3(cons, obj_H, 0.0, export_price, eps, val, H, x, y)) {
            Dispatch d;
            d.p_h = x;
            d.p_ex = y;
            d.h = H * dt;
            offer(LpCase::NoImport, d, val + credit);
        }
    }
    return best;
}

double grid_oracle(const MarketParams& params, const Capacities& caps,
                   const IntervalSignal& sig, ParticipationModel model, int steps) {
    if (steps < 100) throw input_error("grid_oracle needs steps >= 100");
    params.validate();
    caps.validate();
    sig.validate();
    const double avail = sig.eta * caps.q_r;
    const double q_h = caps.q_h;
    const bool can_import = model == ParticipationModel::M1c || model == ParticipationModel::M2;
    const bool can_export = model == ParticipationModel::M1p || model == ParticipationModel::M2;

    double best = raw_gross(params, caps, sig, 0.0, 0.0, 0.0);
    auto linspace_at = [](double lo, double hi, int i, int n) {
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    };

    // No-import side: p_h + p_ex <= avail.
    {
        const double ph_hi = std::min(q_h, avail);
        for (int i = 0; i <= steps; ++i) {
            const double p_h = linspace_at(0.0, ph_hi, i, steps);
            if (can_export) {
                for (int j = 0; j <= steps; ++j) {
                    const double p_ex = linspace_at(0.0, avail - p_h, j, steps);
                    best = std::max(best, raw_gross(params, caps, sig, p_h, p_ex, 0.0));
                }
            } else {
                best = std::max(best, raw_gross(params, caps, sig, p_h, 0.0, 0.0));
            }
        }
    }
    // No-export side: import covers at least the shortfall.
    if (can_import) {
        for (int i = 0; i <= steps; ++i) {
            const double p_h = linspace_at(0.0, q_h, i, steps);
            const double im_lo = std::max(0.0, p_h - avail);
            const double im_hi = std::min(q_h, p_h);
            for (int j = 0; j <= steps; ++j) {
                const double p_im = linspace_at(im_lo, im_hi, j, steps);
                best = std::max(best, raw_gross(params, caps, sig, p_h, 0.0, p_im));
            }
        }
    }
    return best;
}

} // namespace rchp
