#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltswave/integrators.hpp"

namespace ltswave {

// Transition policy: abrupt keeps the sharp fine/coarse split (s = 1);
// weighted spreads it over a fixed physical width c_s, s = round(c_s / h_c).
struct WeightingPolicy {
    bool weighted = false;
    double c_s = 0.1;
};
int transition_layers_for(const WeightingPolicy& policy, double h_coarse);

// Baseline used when a scenario has no exact solution: a plain leapfrog run
// on a spatially refined uniform mesh (approximates the true solution, so
// measured errors include the spatial discretization error), or a plain
// leapfrog run on the row's own mesh with the step cut by the same factor
// (cancels the spatial error, so measured errors isolate the time-stepping
// scheme).
enum class BaselineKind { uniform_fine_mesh, matched_mesh_fine_dt };

struct Scenario {
    std::string name;
    double a = 0.0, b = 1.0;
    BoundaryKind boundary = BoundaryKind::dirichlet;
    SourceFunction f;
    SpaceFunction u0, v0;
    bool has_exact = false;
    std::function<double(double, double)> exact;     // (x, t)
    std::function<double(double, double)> exact_dx;  // (x, t)
    std::optional<std::pair<double, double>> fine_interval;
    int degree = 1;
    int ratio = 1;  // substeps p, matching h_c/h_f
    double nu = 0.01;
    WeightingPolicy weighting;
    double T = 0.0;
    double courant = 1.0;
    BaselineKind baseline = BaselineKind::uniform_fine_mesh;
};

// Narrow space-time Gaussian pulse on (0,4), Dirichlet, P1, fine [1.6, 2.4],
// p = 2: the quantitative second-order benchmark.
Scenario scenario_gaussian_pulse();

// Same pulse, P2 with p = 5 and a fine region placed relative to the source
// support: fully containing it, cutting through its maximum, or mostly
// outside it.
enum class FinePlacement { inside, across, outside };
Scenario scenario_shifted_fine(FinePlacement which);

// Spatially constant exact solution ramping 0 -> 1 through a smoothed step;
// Neumann on (0,1), P2, fine [0.5, 1], p = 2.
Scenario scenario_constant_solution();

// Time profile of the constant-solution scenario and its second derivative
// (the source), exposed for direct checks.
double constant_solution_value(double t);
double constant_solution_accel(double t);

// Lookup by CLI name: gaussian-pulse, shifted-inside, shifted-across,
// shifted-outside, constant-solution.  Throws std::invalid_argument on
// unknown names (message lists the valid ones).
Scenario scenario_by_name(const std::string& name);

// Four-level mesh ladder commensurate with the scenario's fine interval.
std::vector<double> default_h_list(const Scenario& scen);

// Baseline field at time T, sampled by local FE interpolation.
struct ReferenceSolution {
    FeSpace space;
    DiscreteField u;
    double T = 0.0;
    double value(double x) const;
    double deriv(double x) const;
};

// uniform_fine_mesh baseline: plain leapfrog on a uniform mesh of spacing
// h_ref run to exactly T (dt divides T).
ReferenceSolution reference_solution(const Scenario& scen, double h_ref,
                                     double T);

// matched_mesh_fine_dt baseline: plain leapfrog on the scenario's locally
// refined mesh at coarse spacing h_row, with the step of the h_row study row
// divided by time_refinement.
ReferenceSolution matched_reference_solution(const Scenario& scen,
                                             double h_row, double T,
                                             int time_refinement);

// Memoizes baseline runs so rows of different studies at the same mesh level
// share one.  The h argument is the baseline's own spacing for the uniform
// kind and the row's coarse spacing for the matched kind; uniform baselines
// of the shifted placements are interchangeable and share entries.  Keys
// assume a scenario name always denotes the same definition, so reuse one
// cache only across studies of unmodified catalog scenarios.
class ReferenceCache {
  public:
    std::shared_ptr<const ReferenceSolution> get(const Scenario& scen,
                                                 double h, double T,
                                                 int time_refinement = 16);

  private:
    using Key = std::tuple<std::string, int, long long, long long, int>;
    std::map<Key, std::shared_ptr<const ReferenceSolution>> cache_;
};

struct ErrorRow {
    double h = 0.0;
    int dofs = 0;
    double err_l2_rel = 0.0;
    double err_h1_rel = 0.0;
    double snapped_T = 0.0;
    double runtime_s = 0.0;
    bool blowup = false;
    long blowup_step = -1;
};

struct ErrorReport {
    std::vector<ErrorRow> rows;
    double slope_l2 = 0.0;  // NaN when fewer than two valid rows
    double slope_h1 = 0.0;
    bool any_blowup = false;
};

// Least-squares slope of log(y) against log(x).
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// One mesh level per h: build, assemble with the policy's transition width,
// run the variant to the scenario's T with dt = e^{-nu} h courant, and
// measure relative errors at the snapped final time against the exact
// solution or a factor-reference_factor baseline.
ErrorReport convergence_study(const Scenario& scen,
                              const std::vector<double>& h_list,
                              Variant variant,
                              const WeightingPolicy& weighting,
                              ReferenceCache* cache = nullptr,
                              int reference_factor = 16);

struct CompareRow {
    double h = 0.0;
    int dofs = 0;
    double err_l2_lflts = 0.0;
    double err_l2_splitlfc = 0.0;
    double ratio = 0.0;  // split / lts
    double snapped_T = 0.0;
    double runtime_s = 0.0;
};

struct CompareReport {
    std::vector<CompareRow> rows;
    bool any_blowup = false;
};

// Same rows solved by both source treatments; the ratio column shows how
// much error the split variant gives up.
CompareReport compare_study(const Scenario& scen,
                            const std::vector<double>& h_list,
                            const WeightingPolicy& weighting,
                            ReferenceCache* cache = nullptr,
                            int reference_factor = 16);

}  // namespace ltswave
