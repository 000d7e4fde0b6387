#include "surgerylab/builders.hpp"

#include <algorithm>
#include <stdexcept>

#include "surgerylab/surgery.hpp"

namespace surgerylab {

namespace {

int max_label(const LinkDiagram& d) {
    int m = 0;
    for (const Crossing& x : d.crossings())
        for (int s = 0; s < 4; s++) m = std::max(m, x.strands[s]);
    for (int l : d.free_loops()) m = std::max(m, l);
    return m;
}

LinkDiagram add_kink(const LinkDiagram& d, int arc, int sign) {
    int fresh = max_label(d) + 1;
    int m = fresh, f = fresh + 1;
    std::vector<Crossing> cs = d.crossings();
    Crossing k;
    if (sign > 0)
        k.strands = {arc, f, m, m};
    else
        k.strands = {m, arc, f, m};
    cs.push_back(k);
    ArcEnd h = d.arc_head(arc);
    cs[h.crossing].strands[h.slot] = f;
    return LinkDiagram(cs, d.twist_boxes(), d.free_loops(), d.name());
}

}  // namespace

LinkDiagram encircle(const LinkDiagram& d, const std::vector<Passage>& passages) {
    int k = int(passages.size());
    if (k < 1 || k > 2) throw SemanticError("encircle supports one or two passages");
    bool same_arc = (k == 2 && passages[0].arc == passages[1].arc);
    if (same_arc && passages[0].upward == passages[1].upward)
        throw SemanticError("double passage of one arc must be a cup or cap");

    int fresh = max_label(d) + 1;
    std::vector<Crossing> cs = d.crossings();
    std::vector<int> loops = d.free_loops();

    // Ring arcs g[i] enter ring crossing #i in ring travel order:
    // L_0 .. L_{k-1}, U_{k-1} .. U_0.
    std::vector<int> g(2 * k);
    for (int i = 0; i < 2 * k; i++) g[i] = fresh++;
    auto ring_in = [&](bool lower, int j) { return lower ? g[j] : g[2 * k - 1 - j]; };
    auto ring_out = [&](bool lower, int j) { return lower ? g[j + 1] : g[(2 * k - j) % (2 * k)]; };

    // Strand segments: chains of labels per passage, at the lower and upper
    // rim crossings.
    struct RimLabels {
        int in, out;
    };
    std::vector<RimLabels> lower(k), upper(k);
    std::vector<std::pair<int, int>> head_rewrites;  // arc, final label

    if (!same_arc) {
        for (int j = 0; j < k; j++) {
            int arc = passages[j].arc;
            bool loop = std::count(loops.begin(), loops.end(), arc) > 0;
            int mid = fresh++;
            int fin = loop ? arc : fresh++;
            if (passages[j].upward) {
                lower[j] = {arc, mid};
                upper[j] = {mid, fin};
            } else {
                upper[j] = {arc, mid};
                lower[j] = {mid, fin};
            }
            if (!loop)
                head_rewrites.emplace_back(arc, fin);
            else
                loops.erase(std::find(loops.begin(), loops.end(), arc));
        }
    } else {
        int arc = passages[0].arc;
        bool loop = std::count(loops.begin(), loops.end(), arc) > 0;
        int s1 = fresh++, s2 = fresh++, s3 = fresh++;
        int s4 = loop ? arc : fresh++;
        if (!passages[0].upward) {
            // cup: down through passage 0, bottom arc, up through passage 1
            upper[0] = {arc, s1};
            lower[0] = {s1, s2};
            lower[1] = {s2, s3};
            upper[1] = {s3, s4};
        } else {
            // cap
            lower[0] = {arc, s1};
            upper[0] = {s1, s2};
            upper[1] = {s2, s3};
            lower[1] = {s3, s4};
        }
        if (!loop)
            head_rewrites.emplace_back(arc, s4);
        else
            loops.erase(std::find(loops.begin(), loops.end(), arc));
    }

    // Lower rim: ring in front, travelling right.  Upper rim: strand in
    // front, ring travelling left.
    for (int j = 0; j < k; j++) {
        Crossing x;
        if (passages[j].upward)
            x.strands = {lower[j].in, ring_out(true, j), lower[j].out, ring_in(true, j)};
        else
            x.strands = {lower[j].in, ring_in(true, j), lower[j].out, ring_out(true, j)};
        cs.push_back(x);
    }
    for (int j = 0; j < k; j++) {
        Crossing x;
        if (passages[j].upward)
            x.strands = {ring_in(false, j), upper[j].out, ring_out(false, j), upper[j].in};
        else
            x.strands = {ring_in(false, j), upper[j].in, ring_out(false, j), upper[j].out};
        cs.push_back(x);
    }

    for (auto [arc, fin] : head_rewrites) {
        ArcEnd h = d.arc_head(arc);
        cs[h.crossing].strands[h.slot] = fin;
    }
    return LinkDiagram(cs, d.twist_boxes(), loops, d.name());
}

LinkDiagram unknot() { return LinkDiagram({}, {}, {1}, "unknot"); }

LinkDiagram unknot_kink() {
    LinkDiagram d = braid_closure(2, {1});
    return LinkDiagram(d.crossings(), {}, {}, "unknot-kink");
}

LinkDiagram hopf_positive() {
    LinkDiagram d = braid_closure(2, {1, 1});
    return LinkDiagram(d.crossings(), {}, {}, "hopf");
}

LinkDiagram trefoil() {
    LinkDiagram d = braid_closure(2, {1, 1, 1});
    return LinkDiagram(d.crossings(), {}, {}, "trefoil");
}

LinkDiagram figure_eight() {
    LinkDiagram d = braid_closure(3, {1, -2, 1, -2});
    return LinkDiagram(d.crossings(), {}, {}, "figure-eight");
}

LinkDiagram borromean() {
    LinkDiagram d = braid_closure(3, {1, -2, 1, -2, 1, -2});
    return LinkDiagram(d.crossings(), {}, {}, "borromean");
}

LinkDiagram clasped_unknot() {
    std::vector<Crossing> cs(2);
    cs[0].strands = {4, 2, 1, 1};
    cs[1].strands = {2, 4, 3, 3};
    return LinkDiagram(cs, {}, {}, "clasped-unknot");
}

LinkDiagram whitehead() {
    LinkDiagram d = encircle(clasped_unknot(), {{1, false}, {1, true}});
    return LinkDiagram(d.crossings(), {}, {}, "whitehead");
}

LinkDiagram whitehead8() {
    LinkDiagram d = whitehead();
    d = add_kink(d, 3, +1);
    d = add_kink(d, 3, -1);
    return LinkDiagram(d.crossings(), {}, {}, "whitehead8");
}

LinkDiagram lbar() {
    // whitehead(): gamma ring carries arcs 5..8, the cup chain 9..12.
    LinkDiagram d = whitehead();
    d = encircle(d, {{2, true}});  // mu around the ascending middle lane: ring 13,14
    // B rings the lane segment inside mu (15) together with mu's right side
    // (14): two interlocked rings around the same strand.
    d = encircle(d, {{15, true}, {14, true}});
    return LinkDiagram(d.crossings(), {}, {}, "lbar");
}

LinkDiagram lbar_twistbox() {
    LinkDiagram full = lbar();
    int gamma = full.component_of_arc(5);
    std::map<int, int> relabel;
    LinkDiagram spliced = splice_out_component(full, gamma, &relabel);
    auto resolve = [&](int a) {
        while (relabel.count(a)) a = relabel.at(a);
        return a;
    };
    int cup = resolve(10);  // the strands gamma encircled collapse back
    std::vector<TwistBox> boxes{{"gamma", cup, cup, +1}};
    return LinkDiagram(spliced.crossings(), boxes, spliced.free_loops(), "lbar-twistbox");
}

}  // namespace surgerylab
