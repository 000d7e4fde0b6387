#ifndef SURGERYLAB_GEOMETRY_HPP
#define SURGERYLAB_GEOMETRY_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "surgerylab/rational.hpp"
#include "surgerylab/surgery.hpp"
#include "surgerylab/triangulation.hpp"

namespace surgerylab {

using cdouble = std::complex<double>;

struct SolveConfig {
    double residual_tol = 1e-12;
    double degeneracy_guard = 1e-8;
    double flat_tol = 1e-9;
    int max_iterations = 100;
    int max_halvings = 20;
    int restarts = 5;
};

// One equation: sum of integer multiples of the tracked shape logs plus an
// integer multiple of i*pi, driven to zero.  Complete-cusp equations are
// imposed in exponential form (exp(row) = 1), which frees them from branch
// bookkeeping.
struct EquationRow {
    std::vector<std::array<int, 3>> coeff;  // per tet: log z, log z', log z''
    int ipi = 0;                            // constant term, units of i*pi
    bool exponential = false;
    std::string label;
};

struct ShapeAssignment {
    std::vector<cdouble> z;
    // tracked logs of (z, 1/(1-z), 1-1/z): continuous along the solve path;
    // per tet they sum to i*pi.
    std::vector<std::array<cdouble, 3>> logs;

    static ShapeAssignment regular(int tets);
    void set(int t, cdouble znew);             // updates logs continuously
    std::array<int, 2> flattening(int t) const;
};

class GluingSystem {
  public:
    const IdealTriangulation& triangulation() const { return tri_; }
    const std::vector<Coefficient>& fillings() const { return fillings_; }
    const std::vector<EquationRow>& rows() const { return rows_; }
    int unknowns() const { return tri_.tet_count(); }
    int kept_edge_rows() const { return kept_edge_rows_; }
    int cusp_rows() const { return int(rows_.size()) - kept_edge_rows_; }
    const std::vector<int>& dropped_edge_classes() const { return dropped_; }

    cdouble row_value(const EquationRow& r, const ShapeAssignment& s) const;
    cdouble residual(const EquationRow& r, const ShapeAssignment& s) const;
    double max_residual(const ShapeAssignment& s) const;

  private:
    friend GluingSystem build_system(const IdealTriangulation&, std::vector<Coefficient>,
                                     const std::vector<int>&);
    IdealTriangulation tri_;
    std::vector<Coefficient> fillings_;
    std::vector<EquationRow> rows_;
    std::vector<int> dropped_;
    int kept_edge_rows_ = 0;
};

// Builds the square subsystem: edge rows minus one dropped row per vertex
// class, plus one row per cusp (completeness or p*u + q*v = 2*pi*i).  Filled
// rows need holonomy branch offsets; pass them via `filling_offsets` (even
// integers, units of i*pi, ordered meridian,longitude per cusp), usually
// taken from solve() of the complete system.  Empty means all zero.
GluingSystem build_system(const IdealTriangulation& t, std::vector<Coefficient> fillings,
                          const std::vector<int>& filling_offsets = {});

enum class SolutionClass { GEOMETRIC, NONGEOMETRIC, FLAT, FAILED };
std::string solution_class_str(SolutionClass c);

struct HyperbolicSolution {
    SolutionClass classification = SolutionClass::FAILED;
    ShapeAssignment shapes;
    double residual = 1e99;
    int iterations = 0;
    int restarts_used = 0;
    double volume = 0.0;  // valid when classification != FAILED
    std::vector<cdouble> cusp_shapes;  // per cusp; 0 for filled cusps
    std::vector<std::string> trace;    // iteration log for diagnostics
};

HyperbolicSolution solve(const GluingSystem& sys, const SolveConfig& cfg = {});
HyperbolicSolution solve_from(const GluingSystem& sys, ShapeAssignment initial,
                              const SolveConfig& cfg = {});

// Signed volume sum of Bloch-Wigner values over the tetrahedra.
double solution_volume(const ShapeAssignment& s);

// Cusp modulus (longitude translation / meridian translation) of a complete
// cusp of a solved system.  Throws on filled cusps.
cdouble cusp_shape(const GluingSystem& sys, const HyperbolicSolution& sol, int cusp);

// Log-holonomy rows of the peripheral curves (meridian then longitude with
// the Seifert correction folded in) for each cusp.
std::array<EquationRow, 2> peripheral_rows(const IdealTriangulation& t, int cusp);

// Numeric check helper: develops a peripheral curve at the given shapes and
// returns the similarity (dilation, translation).
std::array<cdouble, 2> develop_curve(const IdealTriangulation& t, const PeripheralCurve& c,
                                     const ShapeAssignment& s);

// ---------------------------------------------------------------------------
// Filling sweeps

struct SweepRow {
    int n = 0;
    Slope slope{1, 0};
    SolutionClass classification = SolutionClass::FAILED;
    double volume = 0.0;
    double residual = 0.0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::optional<double> complete_volume;  // when the complete solve succeeds
    bool tail_monotone = false;
    bool all_below_complete = false;
    int first_good_index = -1;  // first n from which both verdicts hold
};

// Solves the family slope(n) on one cusp for n in [n_from, n_to], holding
// the other cusps at `others` (complete or filled).
SweepReport fill_sweep(const IdealTriangulation& t, int cusp,
                       const std::function<Slope(int)>& family, int n_from, int n_to,
                       std::vector<Coefficient> others, const SolveConfig& cfg = {});

}  // namespace surgerylab

#endif
