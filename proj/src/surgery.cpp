#include "surgerylab/surgery.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace surgerylab {

std::string coefficient_str(const Coefficient& c) { return c ? c->str() : "*"; }

Coefficient parse_coefficient(const std::string& s) {
    if (s == "*") return UNFILLED;
    return Slope::parse(s);
}

FramedLink::FramedLink(LinkDiagram d, std::vector<Coefficient> coeffs)
    : diagram(std::move(d)), coefficients(std::move(coeffs)) {
    if (int(coefficients.size()) != diagram.component_count())
        throw SemanticError("coefficient list length " + std::to_string(coefficients.size()) +
                            " does not match component count " +
                            std::to_string(diagram.component_count()));
}

LinkingMatrix linking_matrix(const FramedLink& fl) {
    int n = fl.component_count();
    LinkingMatrix m;
    m.n = n;
    m.lk.assign(n, std::vector<long long>(n, 0));
    m.diagonal = fl.coefficients;
    for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++)
            m.lk[i][j] = m.lk[j][i] = fl.diagram.linking_number(i, j);
    return m;
}

AbelianGroup first_homology(const FramedLink& fl) {
    LinkingMatrix m = linking_matrix(fl);
    int n = m.n;
    std::vector<int> filled;
    for (int i = 0; i < n; i++)
        if (m.diagonal[i]) filled.push_back(i);
    IntMat rel(int(filled.size()), n);
    for (int r = 0; r < int(filled.size()); r++) {
        int i = filled[r];
        const Slope& s = *m.diagonal[i];
        rel.at(r, i) = s.p;
        for (int j = 0; j < n; j++)
            if (j != i) rel.at(r, j) = s.q * m.lk[i][j];
    }
    return cokernel(rel);
}

// ---------------------------------------------------------------------------
// Rolfsen twist

namespace {

// Everything rolfsen_twist needs to know about the marked round unknot.
struct DiskData {
    std::vector<int> chord_arcs;    // one arc per piercing strand, inside the disk
    std::vector<int> chord_orient;  // +-1, the strand's linking contribution with u
    std::vector<int> u_crossings;
};

DiskData analyze_round_unknot(const LinkDiagram& d, int u) {
    const auto& arcs_u = d.components()[u];
    std::set<int> uset(arcs_u.begin(), arcs_u.end());

    DiskData disk;
    for (int c = 0; c < int(d.crossings().size()); c++) {
        const Crossing& x = d.crossings()[c];
        bool under_u = uset.count(x.under_in());
        bool over_u = uset.count(x.over_in());
        if (under_u && over_u)
            throw SemanticError("component has self-crossings; not a marked round unknot");
        if (under_u || over_u) disk.u_crossings.push_back(c);
    }
    if (disk.u_crossings.empty()) return disk;  // crossingless loop, k = 0

    auto faces = d.faces();
    // Faces on each side of u, by the directed-side flag along u's arcs.
    auto side_faces = [&](bool flag) {
        std::set<int> s;
        for (int f = 0; f < int(faces.size()); f++)
            for (const auto& side : faces[f])
                if (uset.count(side.arc) && side.forward == flag) s.insert(f);
        return s;
    };

    auto face_corners = [&](int f) {
        std::set<int> corners;
        for (const auto& side : faces[f]) {
            ArcEnd e = side.forward ? d.arc_head(side.arc) : d.arc_tail(side.arc);
            corners.insert(e.crossing);
        }
        return corners;
    };

    std::set<int> ucross(disk.u_crossings.begin(), disk.u_crossings.end());
    auto side_valid = [&](const std::set<int>& s) {
        for (int f : s)
            for (int c : face_corners(f))
                if (!ucross.count(c)) return false;
        return true;
    };

    // Arc -> faces adjacent.
    std::map<int, std::set<int>> arc_faces;
    for (int f = 0; f < int(faces.size()); f++)
        for (const auto& side : faces[f]) arc_faces[side.arc].insert(f);

    auto chords_of = [&](const std::set<int>& s) {
        std::vector<int> chords;
        std::set<int> seen;
        for (int c : disk.u_crossings) {
            const Crossing& x = d.crossings()[c];
            int pier_in = uset.count(x.under_in()) ? x.over_in() : x.under_in();
            int pier_out = uset.count(x.under_in()) ? x.over_out() : x.under_out();
            for (int arc : {pier_in, pier_out}) {
                if (seen.count(arc)) continue;
                bool inside = true;
                for (int f : arc_faces[arc])
                    if (!s.count(f)) inside = false;
                if (!inside) continue;
                // A chord must run from one u-crossing to another directly.
                ArcEnd h = d.arc_head(arc), t = d.arc_tail(arc);
                if (!ucross.count(h.crossing) || !ucross.count(t.crossing)) return std::vector<int>();
                chords.push_back(arc);
                seen.insert(arc);
            }
        }
        return chords;
    };

    for (bool flag : {true, false}) {
        std::set<int> s = side_faces(flag);
        if (!side_valid(s)) continue;
        auto chords = chords_of(s);
        if (chords.empty() && !disk.u_crossings.empty()) continue;
        if (2 * int(chords.size()) != int(disk.u_crossings.size())) continue;
        disk.chord_arcs = chords;
        for (int arc : chords) {
            ArcEnd h = d.arc_head(arc);
            const Crossing& x = d.crossings()[h.crossing];
            disk.chord_orient.push_back(x.sign());
        }
        return disk;
    }
    throw SemanticError("component does not bound a clean marked disk (not a round unknot)");
}

// Positive or negative kink on one arc: one new crossing of the given sign.
LinkDiagram insert_kink(const LinkDiagram& d, int arc, int sign) {
    int fresh = 1;
    for (const Crossing& x : d.crossings())
        for (int s = 0; s < 4; s++) fresh = std::max(fresh, x.strands[s] + 1);
    for (int l : d.free_loops()) fresh = std::max(fresh, l + 1);
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

FramedLink rolfsen_twist(const FramedLink& fl, int u, int t) {
    if (t != 1 && t != -1) throw SemanticError("twist parameter must be +1 or -1");
    if (u < 0 || u >= fl.component_count()) throw SemanticError("component index out of range");
    if (!fl.diagram.twist_boxes().empty())
        throw SemanticError("instantiate twist boxes before Rolfsen moves");
    if (!fl.coefficients[u]) throw SemanticError("cannot twist along an unfilled component");

    int any_arc_u = fl.diagram.components()[u].front();

    // Trivial 1/0 filling: the component is deleted outright.
    if (fl.coefficients[u]->is_infinity()) {
        std::map<int, int> relabel;
        LinkDiagram spliced = splice_out_component(fl.diagram, u, &relabel);
        auto resolve = [&](int a) {
            while (relabel.count(a)) a = relabel.at(a);
            return a;
        };
        std::vector<Coefficient> coeffs(spliced.component_count());
        for (int i = 0; i < fl.component_count(); i++) {
            if (i == u) continue;
            int rep = resolve(fl.diagram.components()[i].front());
            coeffs[spliced.component_of_arc(rep)] = fl.coefficients[i];
        }
        return FramedLink(spliced, coeffs);
    }

    DiskData disk = analyze_round_unknot(fl.diagram, u);
    int k = int(disk.chord_arcs.size());
    if (k > 2) throw SemanticError("twist through more than two strands is not supported");

    // Coefficients first (they only need linking numbers of the old diagram).
    std::vector<Coefficient> coeffs = fl.coefficients;
    const Slope& su = *coeffs[u];
    Slope new_u(su.p, su.q + t * su.p);
    coeffs[u] = new_u;
    for (int i = 0; i < fl.component_count(); i++) {
        if (i == u || !coeffs[i]) continue;
        long long l = fl.diagram.linking_number(u, i);
        coeffs[i] = Slope(coeffs[i]->p + t * coeffs[i]->q * l * l, coeffs[i]->q);
    }

    // Diagram update: one full twist on the piercing strands.  The twist is
    // inserted on the strand portions just outside the disk so the ring
    // still bounds a clean disk afterwards (iterated twists re-analyze it).
    auto outside_arcs = [&](int chord) {
        std::vector<int> out;
        for (ArcEnd e : {fl.diagram.arc_tail(chord), fl.diagram.arc_head(chord)}) {
            const Crossing& x = fl.diagram.crossings()[e.crossing];
            bool chord_under = (x.under_in() == chord || x.under_out() == chord);
            int in = chord_under ? x.under_in() : x.over_in();
            int outa = chord_under ? x.under_out() : x.over_out();
            out.push_back(in == chord ? outa : in);
        }
        return out;
    };

    LinkDiagram d = fl.diagram;
    if (k == 2) {
        int h = disk.chord_orient[0] * disk.chord_orient[1];
        const auto& arcs_u = fl.diagram.components()[u];
        std::set<int> uset(arcs_u.begin(), arcs_u.end());
        auto faces = fl.diagram.faces();

        // Ring crossings per chord.
        auto chord_crossings = [&](int chord) {
            std::set<int> s;
            s.insert(fl.diagram.arc_head(chord).crossing);
            s.insert(fl.diagram.arc_tail(chord).crossing);
            return s;
        };
        std::set<int> cx1 = chord_crossings(disk.chord_arcs[0]);
        std::set<int> cx2 = chord_crossings(disk.chord_arcs[1]);

        // The twisted pair must cobound a face right next to the ring: a
        // stretch of face boundary between the two strand sides consisting
        // of ring arcs only, running from a ring crossing of one chord to a
        // ring crossing of the other.
        auto adjacent_across_ring = [&](int o1, int o2) {
            for (const auto& face : faces) {
                int n = int(face.size());
                auto corner_after = [&](int j) {
                    ArcEnd e = face[j].forward ? fl.diagram.arc_head(face[j].arc)
                                               : fl.diagram.arc_tail(face[j].arc);
                    return e.crossing;
                };
                auto corner_before = [&](int j) {
                    ArcEnd e = face[j].forward ? fl.diagram.arc_tail(face[j].arc)
                                               : fl.diagram.arc_head(face[j].arc);
                    return e.crossing;
                };
                for (int i = 0; i < n; i++) {
                    if (face[i].arc != o1) continue;
                    for (int fwd : {0, 1}) {
                        int first = fwd ? corner_after(i) : corner_before(i);
                        int steps = 0;
                        int j = (i + (fwd ? 1 : n - 1)) % n;
                        while (steps < n && uset.count(face[j].arc)) {
                            j = (j + (fwd ? 1 : n - 1)) % n;
                            steps++;
                        }
                        if (steps == 0) continue;  // must hug the ring
                        if (face[j].arc != o2) continue;
                        if (o1 == o2 && j == i && steps != n - 1) continue;
                        int last = fwd ? corner_before(j) : corner_after(j);
                        if ((cx1.count(first) && cx2.count(last)) ||
                            (cx2.count(first) && cx1.count(last)))
                            return true;
                    }
                }
            }
            return false;
        };

        bool done = false;
        for (int o1 : outside_arcs(disk.chord_arcs[0])) {
            for (int o2 : outside_arcs(disk.chord_arcs[1])) {
                if (!adjacent_across_ring(o1, o2)) continue;
                try {
                    std::vector<TwistBox> boxes = fl.diagram.twist_boxes();
                    boxes.push_back({"rolfsen_tmp", o1, o2, h});
                    LinkDiagram cand(fl.diagram.crossings(), boxes, fl.diagram.free_loops(),
                                     fl.diagram.name());
                    cand = cand.instantiate_twists("rolfsen_tmp", t);
                    if (!cand.validate().warnings.empty()) continue;
                    analyze_round_unknot(cand, cand.component_of_arc(any_arc_u));
                    d = cand;
                    done = true;
                } catch (const std::exception&) {
                    continue;
                }
                if (done) break;
            }
            if (done) break;
        }
        if (!done) throw SemanticError("could not place the twist region next to the disk");
    } else if (k == 1) {
        d = insert_kink(d, outside_arcs(disk.chord_arcs[0])[0], t);
    }

    int u_new = d.component_of_arc(any_arc_u);
    // Components can re-index after the twist; realign coefficients.
    {
        std::vector<Coefficient> realigned(d.component_count());
        for (int i = 0; i < fl.component_count(); i++) {
            int arc = fl.diagram.components()[i].front();
            realigned[d.component_of_arc(arc)] = coeffs[i];
        }
        coeffs = realigned;
    }

    if (new_u.is_infinity()) {
        std::map<int, int> relabel;
        LinkDiagram spliced = splice_out_component(d, u_new, &relabel);
        auto resolve = [&](int a) {
            while (relabel.count(a)) a = relabel.at(a);
            return a;
        };
        std::vector<Coefficient> reduced(spliced.component_count());
        for (int i = 0; i < int(coeffs.size()); i++) {
            if (i == u_new) continue;
            int rep = resolve(d.components()[i].front());
            reduced[spliced.component_of_arc(rep)] = coeffs[i];
        }
        return FramedLink(spliced, reduced);
    }
    return FramedLink(d, coeffs);
}

// Removes component u from the diagram, splicing every strand that crosses it.
LinkDiagram splice_out_component(const LinkDiagram& d, int u, std::map<int, int>* relabel) {
    const auto& arcs_u = d.components()[u];
    std::set<int> uset(arcs_u.begin(), arcs_u.end());

    // Arc relabeling: at each crossing with u, the piercer's out-arc becomes
    // its in-arc.
    std::map<int, int> rename;
    auto resolve = [&](int a) {
        while (rename.count(a)) a = rename[a];
        return a;
    };
    std::vector<Crossing> kept;
    std::vector<std::pair<int, int>> merges;
    for (const Crossing& x : d.crossings()) {
        bool under_u = uset.count(x.under_in());
        bool over_u = uset.count(x.over_in());
        if (under_u && over_u) throw SemanticError("cannot splice a self-crossing component");
        if (!under_u && !over_u) {
            kept.push_back(x);
            continue;
        }
        int in = under_u ? x.over_in() : x.under_in();
        int out = under_u ? x.over_out() : x.under_out();
        merges.emplace_back(out, in);
    }
    for (auto [out, in] : merges) {
        int a = resolve(in), b = resolve(out);
        if (a != b) rename[b] = a;
    }
    std::set<int> remaining_labels;
    for (Crossing& x : kept)
        for (int s = 0; s < 4; s++) {
            x.strands[s] = resolve(x.strands[s]);
            remaining_labels.insert(x.strands[s]);
        }

    std::vector<int> loops;
    for (int l : d.free_loops())
        if (!uset.count(l)) loops.push_back(l);
    // Components that crossed only u collapse to crossingless loops.
    for (int i = 0; i < d.component_count(); i++) {
        if (i == u) continue;
        int rep = resolve(d.components()[i].front());
        bool appears = remaining_labels.count(rep) > 0;
        if (!appears && !std::count(loops.begin(), loops.end(), rep)) {
            bool was_loop = std::count(d.free_loops().begin(), d.free_loops().end(),
                                       d.components()[i].front()) > 0;
            if (!was_loop) loops.push_back(rep);
        }
    }

    std::vector<TwistBox> boxes;
    for (TwistBox b : d.twist_boxes()) {
        b.arc_p = resolve(b.arc_p);
        b.arc_q = resolve(b.arc_q);
        boxes.push_back(b);
    }
    if (relabel) *relabel = rename;
    return LinkDiagram(kept, boxes, loops, d.name());
}

CoreHomotopyClass core_homotopy_class(const FramedLink& fl, int target, int core,
                                      int meridian_unknot) {
    if (target == core || target == meridian_unknot || core == meridian_unknot)
        throw SemanticError("target, core and meridian components must be distinct");
    CoreHomotopyClass r;
    r.a = fl.diagram.linking_number(core, target);
    r.b = fl.diagram.linking_number(meridian_unknot, target);
    // Zero-filling the core attaches a disk to its longitude; the class that
    // survives is a times the new core generator.
    r.is_core = (r.a == 1 || r.a == -1);
    return r;
}

// ---------------------------------------------------------------------------
// JSJ assemblies

JSJAssembly assemble(std::vector<JSJPiece> pieces, std::vector<TorusGluing> gluings) {
    std::set<std::pair<int, int>> used;
    for (const TorusGluing& g : gluings) {
        for (auto [p, t] : {std::pair(g.piece_a, g.torus_a), std::pair(g.piece_b, g.torus_b)}) {
            if (p < 0 || p >= int(pieces.size())) throw SemanticError("gluing references missing piece");
            if (t < 0 || t >= pieces[p].boundary_tori)
                throw SemanticError("gluing references missing boundary torus");
            if (!used.insert({p, t}).second)
                throw SemanticError("boundary torus used by two gluings");
        }
        long long det = g.h1_map[0][0] * g.h1_map[1][1] - g.h1_map[0][1] * g.h1_map[1][0];
        if (det != 1 && det != -1)
            throw SemanticError("torus gluing matrix must be unimodular (det " +
                                std::to_string(det) + ")");
    }
    return JSJAssembly{std::move(pieces), std::move(gluings)};
}

std::string verdict_str(Verdict v) { return v == Verdict::DISTINCT ? "DISTINCT" : "INCONCLUSIVE"; }

Verdict distinct_by_volume(const JSJAssembly& a1, const JSJAssembly& a2, double tol) {
    auto volumes = [](const JSJAssembly& a) {
        std::vector<double> v;
        for (const JSJPiece& p : a.pieces)
            if (p.volume) v.push_back(*p.volume);
        std::sort(v.begin(), v.end());
        return v;
    };
    std::vector<double> v1 = volumes(a1), v2 = volumes(a2);
    if (v1.size() != v2.size()) return Verdict::DISTINCT;
    for (size_t i = 0; i < v1.size(); i++) {
        double d = v1[i] - v2[i];
        if (d < 0) d = -d;
        if (d > tol) return Verdict::DISTINCT;
    }
    return Verdict::INCONCLUSIVE;
}

}  // namespace surgerylab
