#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rchp/dispatch.hpp"
#include "rchp/ingest.hpp"
#include "rchp/lp_oracle.hpp"
#include "rchp/profitability.hpp"
#include "rchp/simulate.hpp"

namespace py = pybind11;
using namespace rchp;

PYBIND11_MODULE(_rchp, m) {
    m.doc() = "Dispatch and profitability analysis for renewable-colocated hydrogen";

    py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<computation_error>(m, "ComputationError", PyExc_RuntimeError);

    py::enum_<ParticipationModel>(m, "ParticipationModel")
        .value("M0", ParticipationModel::M0)
        .value("M1p", ParticipationModel::M1p)
        .value("M1c", ParticipationModel::M1c)
        .value("M2", ParticipationModel::M2);

    py::enum_<RegionLabel>(m, "RegionLabel")
        .value("R1", RegionLabel::R1)
        .value("R2", RegionLabel::R2)
        .value("R2p", RegionLabel::R2p)
        .value("R3", RegionLabel::R3)
        .value("R4", RegionLabel::R4)
        .value("R5_neg", RegionLabel::R5_neg)
        .value("R6_neg", RegionLabel::R6_neg);

    py::class_<MarketParams>(m, "MarketParams")
        .def(py::init<>())
        .def_readwrite("pi_h", &MarketParams::pi_h)
        .def_readwrite("tau_h", &MarketParams::tau_h)
        .def_readwrite("tau_r", &MarketParams::tau_r)
        .def_readwrite("tau_rec_ex", &MarketParams::tau_rec_ex)
        .def_readwrite("tau_rec_im", &MarketParams::tau_rec_im)
        .def_readwrite("gamma", &MarketParams::gamma)
        .def_readwrite("c_w", &MarketParams::c_w)
        .def_readwrite("alpha_r", &MarketParams::alpha_r)
        .def_readwrite("alpha_h", &MarketParams::alpha_h)
        .def_readwrite("intervals_per_year", &MarketParams::intervals_per_year)
        .def_readwrite("interval_hours", &MarketParams::interval_hours)
        .def("validate", &MarketParams::validate);

    py::class_<Capacities>(m, "Capacities")
        .def(py::init<double, double>(), py::arg("q_r"), py::arg("q_h"))
        .def_readwrite("q_r", &Capacities::q_r)
        .def_readwrite("q_h", &Capacities::q_h);

    py::class_<IntervalSignal>(m, "IntervalSignal")
        .def(py::init<double, double>(), py::arg("lmp"), py::arg("eta"))
        .def_readwrite("lmp", &IntervalSignal::lmp)
        .def_readwrite("eta", &IntervalSignal::eta);

    py::class_<Thresholds>(m, "Thresholds")
        .def_readonly("pi_lo", &Thresholds::pi_lo)
        .def_readonly("pi_hi", &Thresholds::pi_hi)
        .def_readonly("neg_im", &Thresholds::neg_im)
        .def_readonly("neg_ex", &Thresholds::neg_ex)
        .def_readonly("standard_ordering", &Thresholds::standard_ordering);

    py::class_<Dispatch>(m, "Dispatch")
        .def_readonly("p_h", &Dispatch::p_h)
        .def_readonly("p_ex", &Dispatch::p_ex)
        .def_readonly("p_im", &Dispatch::p_im)
        .def_readonly("h", &Dispatch::h);

    py::class_<PiecewiseProduction>(m, "PiecewiseProduction")
        .def(py::init([](const std::vector<std::pair<double, double>>& segments) {
                 std::vector<ProductionSegment> segs;
                 for (const auto& [alpha, beta] : segments) segs.push_back({alpha, beta});
                 return PiecewiseProduction(std::move(segs));
             }),
             py::arg("segments"))
        .def_static("linear", &PiecewiseProduction::linear, py::arg("gamma"))
        .def("envelope", &PiecewiseProduction::envelope, py::arg("p"));

    py::class_<SignalSeries>(m, "SignalSeries")
        .def(py::init([](const std::vector<std::pair<double, double>>& rows,
                         double interval_hours) {
                 SignalSeries s;
                 s.interval_hours = interval_hours;
                 s.source_label = "python";
                 for (const auto& [lmp, eta] : rows) s.intervals.push_back({lmp, eta});
                 return s;
             }),
             py::arg("rows"), py::arg("interval_hours") = 1.0)
        .def("__len__", &SignalSeries::size);

    py::class_<ProfitCoefficients>(m, "ProfitCoefficients")
        .def_readonly("sum_a_r", &ProfitCoefficients::sum_a_r)
        .def_readonly("sum_a_h", &ProfitCoefficients::sum_a_h)
        .def_readonly("kappa", &ProfitCoefficients::kappa)
        .def_readonly("alpha_r_n", &ProfitCoefficients::alpha_r_n)
        .def_readonly("alpha_h_n", &ProfitCoefficients::alpha_h_n);

    py::class_<RevenueBreakdown>(m, "RevenueBreakdown")
        .def_readonly("total_renewable_kwh", &RevenueBreakdown::total_renewable_kwh)
        .def_readonly("pct_renewable_to_hydrogen", &RevenueBreakdown::pct_renewable_to_hydrogen)
        .def_readonly("pct_renewable_sold", &RevenueBreakdown::pct_renewable_sold)
        .def_readonly("pct_curtailed", &RevenueBreakdown::pct_curtailed)
        .def_readonly("hydrogen_kg", &RevenueBreakdown::hydrogen_kg)
        .def_readonly("gross_profit", &RevenueBreakdown::gross_profit)
        .def_readonly("operating_profit", &RevenueBreakdown::operating_profit);

    py::class_<MatchingResult>(m, "MatchingResult")
        .def_readonly("kappa_star", &MatchingResult::kappa_star)
        .def_readonly("q_h_star", &MatchingResult::q_h_star)
        .def_readonly("open_ended", &MatchingResult::open_ended);

    py::class_<SizingResult>(m, "SizingResult")
        .def_readonly("caps", &SizingResult::caps)
        .def_readonly("kappa_star", &SizingResult::kappa_star)
        .def_readonly("op_profit", &SizingResult::op_profit);

    m.def("compute_thresholds", &compute_thresholds, py::arg("params"));
    m.def(
        "optimal_dispatch",
        [](const MarketParams& p, const Capacities& c, const IntervalSignal& s,
           ParticipationModel model) {
            const DispatchResult r = optimal_dispatch(p, c, s, model);
            return py::make_tuple(r.dispatch, r.region);
        },
        py::arg("params"), py::arg("caps"), py::arg("signal"), py::arg("model"));
    m.def(
        "solve_exact",
        [](const MarketParams& p, const Capacities& c, const IntervalSignal& s,
           ParticipationModel model) {
            const OracleSolution r = solve_exact(p, c, s, model);
            return py::make_tuple(r.dispatch, r.gross);
        },
        py::arg("params"), py::arg("caps"), py::arg("signal"), py::arg("model"));
    m.def("gross_profit", &gross_profit, py::arg("params"), py::arg("caps"), py::arg("signal"),
          py::arg("dispatch"));
    m.def(
        "optimal_dispatch_piecewise",
        [](const MarketParams& p, const Capacities& c, const IntervalSignal& s,
           ParticipationModel model, const PiecewiseProduction& pw) {
            const PiecewiseDispatchResult r = optimal_dispatch_piecewise(p, c, s, model, pw);
            return py::make_tuple(r.dispatch, r.gross, r.segment);
        },
        py::arg("params"), py::arg("caps"), py::arg("signal"), py::arg("model"), py::arg("pw"));
    m.def("estimate_coefficients", &estimate_coefficients, py::arg("series"), py::arg("kappa"),
          py::arg("params"), py::arg("model") = ParticipationModel::M2);
    m.def("operating_profit", &operating_profit, py::arg("coeffs"), py::arg("caps"));
    m.def(
        "run_simulation",
        [](const SignalSeries& s, const MarketParams& p, const Capacities& c,
           ParticipationModel model) { return run_simulation(s, p, c, model).breakdown; },
        py::arg("series"), py::arg("params"), py::arg("caps"), py::arg("model"));
    m.def("forecast_profit", &forecast_profit, py::arg("train"), py::arg("caps"),
          py::arg("params"), py::arg("horizon_n"), py::arg("model") = ParticipationModel::M2);
    m.def("breakeven_rays", &breakeven_rays, py::arg("series"), py::arg("params"),
          py::arg("n_horizon"), py::arg("model") = ParticipationModel::M2,
          py::arg("kappa_max") = 3.0, py::arg("d_kappa") = 1e-3);
    m.def("matching_capacity", &matching_capacity, py::arg("series"), py::arg("params"),
          py::arg("n_horizon"), py::arg("q_r"), py::arg("model") = ParticipationModel::M2);
    m.def("optimal_nameplate", &optimal_nameplate, py::arg("series"), py::arg("params"),
          py::arg("n_horizon"), py::arg("budget"), py::arg("model") = ParticipationModel::M2,
          py::arg("kappa_max") = 3.0);
    m.def(
        "load_series",
        [](const std::string& path, SeriesUnits units, double interval_hours, GapPolicy policy) {
            return load_series(path, units, interval_hours, policy, nullptr);
        },
        py::arg("path"), py::arg("units"), py::arg("interval_hours"), py::arg("policy"));

    py::enum_<SeriesUnits>(m, "SeriesUnits")
        .value("UsdPerKwh", SeriesUnits::UsdPerKwh)
        .value("UsdPerMwh", SeriesUnits::UsdPerMwh);
    py::enum_<GapPolicy>(m, "GapPolicy")
        .value("Error", GapPolicy::Error)
        .value("Drop", GapPolicy::Drop)
        .value("FillPrevious", GapPolicy::FillPrevious);
}
