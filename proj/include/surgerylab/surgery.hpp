#ifndef SURGERYLAB_SURGERY_HPP
#define SURGERYLAB_SURGERY_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "surgerylab/pd.hpp"
#include "surgerylab/rational.hpp"
#include "surgerylab/snf.hpp"

namespace surgerylab {

// Per-component surgery coefficient: a rational slope or unfilled ("*").
using Coefficient = std::optional<Slope>;
inline constexpr std::nullopt_t UNFILLED = std::nullopt;

std::string coefficient_str(const Coefficient& c);
Coefficient parse_coefficient(const std::string& s);

// A link diagram with a surgery coefficient per component, Seifert framing,
// ambient S^3.
struct FramedLink {
    LinkDiagram diagram;
    std::vector<Coefficient> coefficients;

    FramedLink(LinkDiagram d, std::vector<Coefficient> coeffs);
    int component_count() const { return diagram.component_count(); }
};

// Off-diagonal entries lk(i,j); the diagonal carries the slope symbolically.
struct LinkingMatrix {
    int n = 0;
    std::vector<std::vector<long long>> lk;  // off-diagonal, lk[i][i] unused
    std::vector<Coefficient> diagonal;
};

LinkingMatrix linking_matrix(const FramedLink& fl);

// H1 of the surgered manifold: one relation p_i mu_i + q_i lambda_i per
// filled component, lambda_i = sum_j lk(i,j) mu_j.  Unfilled components
// contribute generators only.
AbelianGroup first_homology(const FramedLink& fl);

// Rolfsen twist on a marked round unknot u (t = +-1).  u's coefficient p/q
// becomes p/(q + t p); component i through u's disk picks up
// t * lk(u,i)^2; the diagram gets one full twist on the piercing strands.
// A coefficient that reaches 1/0 deletes u from the description.
FramedLink rolfsen_twist(const FramedLink& fl, int u, int t);

// Removes a component whose filling is trivial, reconnecting the strands
// that crossed it.  The component must have no self-crossings.  When
// `relabel` is given it receives the arc merges performed by the splice.
LinkDiagram splice_out_component(const LinkDiagram& d, int u,
                                 std::map<int, int>* relabel = nullptr);

struct CoreHomotopyClass {
    long long a = 0;  // lk(core, target)
    long long b = 0;  // lk(meridian_unknot, target)
    bool is_core = false;
};

CoreHomotopyClass core_homotopy_class(const FramedLink& fl, int target, int core,
                                      int meridian_unknot);

// ---------------------------------------------------------------------------
// JSJ assembly bookkeeping

struct JSJPiece {
    std::string label;
    std::optional<double> volume;  // nullopt: Seifert fibered
    int boundary_tori = 0;
};

struct TorusGluing {
    int piece_a = 0, torus_a = 0;
    int piece_b = 0, torus_b = 0;
    std::array<std::array<long long, 2>, 2> h1_map{{{1, 0}, {0, 1}}};
};

struct JSJAssembly {
    std::vector<JSJPiece> pieces;
    std::vector<TorusGluing> gluings;
};

JSJAssembly assemble(std::vector<JSJPiece> pieces, std::vector<TorusGluing> gluings);

enum class Verdict { DISTINCT, INCONCLUSIVE };
std::string verdict_str(Verdict v);

// Compares the multisets of hyperbolic-piece volumes.  Never certifies a
// homeomorphism.
Verdict distinct_by_volume(const JSJAssembly& a1, const JSJAssembly& a2, double tol);

}  // namespace surgerylab

#endif
