#pragma once

#include <optional>

#include "rchp/market.hpp"
#include "rchp/piecewise.hpp"

namespace rchp {

// The two sub-LPs of the complementarity split.
enum class LpCase { NoExport, NoImport };

struct OracleSolution {
    Dispatch dispatch;
    double gross = 0.0;
    LpCase winner = LpCase::NoImport; // ties break toward NoImport
};

// Exact reference solver for the single-interval problem, independent of the
// closed form: the bilinear complementarity constraint is split into the
// no-export and no-import LPs and each is solved by enumerating every
// pairwise (triple-wise with piecewise production) intersection of active
// constraints. Valid for any threshold ordering.
OracleSolution solve_exact(const MarketParams& params, const Capacities& caps,
                           const IntervalSignal& sig, ParticipationModel model,
                           const std::optional<PiecewiseProduction>& pw = std::nullopt);

// Brute-force grid search with complementarity respected; lower bound on the
// optimum, within (Lipschitz bound of the objective) * (grid pitch) of it.
// steps must be >= 100.
double grid_oracle(const MarketParams& params, const Capacities& caps,
                   const IntervalSignal& sig, ParticipationModel model, int steps);

} // namespace rchp
