#pragma once

#include "pwl/coefficients.hpp"
#include "pwl/model.hpp"

#include <json.hpp>

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace pwl {

enum class TerminalEvent { section_return, switch_crossing, step_limit, time_limit };
const char* to_string(TerminalEvent e);

struct TrajectorySegment {
    Zone piece = Zone::minus;
    std::vector<double> times;
    std::vector<std::array<double, 2>> states;
    TerminalEvent terminal_event = TerminalEvent::step_limit;
};

enum class Formulation {
    cartesian,    // state (x, y) itself
    co_rotating,  // deviation u from the unperturbed rotation: z = R(t)(z0 + u)
};

struct FlowOptions {
    double rtol = 1e-12;
    double atol = 1e-12;       // Cartesian only; co-rotating scales it by |eps|(1 + |z0|)
    double grazing_tol = 1e-8;
    double h_max = 0.5;
    long max_steps = 2'000'000;
    Formulation formulation = Formulation::cartesian;
    bool backward = false;     // integrate in negative time (Cartesian only)
};

/// Co-rotating formulation with rtol = atol = 1e-16.
FlowOptions default_map_options();

/// Integrates the eps-perturbed system from `start` with event detection on
/// y = x^3, swapping pieces at each crossing. Stops after `max_events`
/// crossings, or after |t| reaches t_end (times are negative when
/// integrating backward). GrazingDetected when |d(y - x^3)/dt| is below
/// grazing_tol for either adjacent piece or the two disagree in sign;
/// StepLimitExceeded past max_steps.
std::vector<TrajectorySegment> integrate_piecewise(const PWLCoefficients& c, double eps, std::array<double, 2> start,
                                                   int max_events, const FlowOptions& opt = {},
                                                   double t_end = std::numeric_limits<double>::infinity());

struct PoincareResult {
    double r1 = 0.0;
    double return_time = 0.0;
    double displacement = 0.0;   // r1 - r0, computed without cancellation
    int switch_events = 0;
    std::vector<TrajectorySegment> segments;  // filled when requested
};

/// Return map on the half-line {y = 0, x > 0} after one clockwise revolution.
/// Defaults to the co-rotating formulation. NoReturn if the step budget runs out.
PoincareResult poincare_map(const PWLCoefficients& c, double eps, double r0, const FlowOptions& opt = default_map_options(),
                            bool keep_trajectory = false);

enum class Stability { stable, unstable, neutral };
const char* to_string(Stability s);

struct CycleRecord {
    double eps = 0.0;
    double r_fixed = 0.0;
    std::optional<double> r_predicted;
    double residual = 0.0;
    Stability stability = Stability::neutral;
    double return_time = 0.0;
    friend bool operator==(const CycleRecord&, const CycleRecord&) = default;
};

nlohmann::json to_json(const CycleRecord& r);
CycleRecord cycle_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<CycleRecord>& rs);
std::vector<CycleRecord> cycles_from_json(const nlohmann::json& j);

/// Radii r_of_x(x*) of the positive roots x* of p1 (when the first-order
/// conditions fail) or of p2 (when they hold), ascending.
std::vector<double> predicted_radii(const PWLCoefficients& c);

struct CycleSearch {
    std::vector<CycleRecord> cycles;
    bool degenerate = false;  // displacement identically zero on the grid
    std::vector<double> grid, displacement;
};

/// Sign scan of d(r) on grid_n log-spaced radii in [r_lo, r_hi], bisection
/// of every bracket to relative width 1e-12 and residual <= 1e-10 (1 + r).
CycleSearch find_cycles(const PWLCoefficients& c, double eps, double r_lo, double r_hi, int grid_n,
                        const FlowOptions& opt = default_map_options());

struct ConvergenceRow {
    double eps = 0.0;
    double r_fixed = 0.0;
    double error = 0.0;
};
struct ConvergenceTable {
    double r_predicted = 0.0;
    std::vector<ConvergenceRow> rows;
    double slope = std::numeric_limits<double>::quiet_NaN();  // least-squares fit of log error vs log eps
};

/// Follows the cycle bifurcating from the root_index-th predicted radius
/// (1-based) over eps_list (positive, decreasing).
ConvergenceTable convergence_study(const PWLCoefficients& c, const std::vector<double>& eps_list, int root_index,
                                   const FlowOptions& opt = default_map_options());

}  // namespace pwl
