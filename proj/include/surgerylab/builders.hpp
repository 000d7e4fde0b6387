#ifndef SURGERYLAB_BUILDERS_HPP
#define SURGERYLAB_BUILDERS_HPP

#include "surgerylab/pd.hpp"

namespace surgerylab {

// One pass of a strand through a round ring that is being inserted.
// `upward` is the strand's direction relative to the ring plane; passages are
// listed left to right as the ring's lower rim meets them.  The ring runs
// counterclockwise, passes in front of the strands at its lower rim and
// behind them at its upper rim.
struct Passage {
    int arc;
    bool upward;
};

// Inserts a round unknot component around the given strands.  Supports one
// or two passages; the two-passage form accepts either two distinct arcs
// side by side or the same arc twice in cup (down,up) / cap (up,down)
// position.
LinkDiagram encircle(const LinkDiagram& d, const std::vector<Passage>& passages);

// Stock diagrams used by tests, the data files and the documentation.
LinkDiagram unknot();           // one crossingless loop
LinkDiagram unknot_kink();      // one positive kink
LinkDiagram hopf_positive();    // lk = +1
LinkDiagram trefoil();          // closure of sigma_1^3, writhe +3
LinkDiagram figure_eight();     // closure of (sigma_1 sigma_2^-1)^2
LinkDiagram borromean();        // closure of (sigma_1 sigma_2^-1)^3
LinkDiagram clasped_unknot();   // unknot with a +2 clasp, 2 crossings
LinkDiagram whitehead();        // ring around the clasp strands, 6 crossings
LinkDiagram whitehead8();       // same link with two extra kinks

// The four-component link: clasped pattern knot, twist-site ring gamma,
// meridian ring mu, and core ring B chained through mu.  Component order
// in the result: 0 = pattern knot (A~), 1 = gamma, 2 = mu, 3 = B.
LinkDiagram lbar();

// lbar with gamma spliced out and replaced by a parametric twist box
// "gamma" on the strands it encircled.  Component order: 0 = A~, 1 = mu,
// 2 = B.
LinkDiagram lbar_twistbox();

}  // namespace surgerylab

#endif
