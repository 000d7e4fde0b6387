#include "surgerylab/triangulation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace surgerylab {

int edge_slot(int v, int w) {
    if (v > w) std::swap(v, w);
    static const int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[v][w];
}

std::array<int, 2> edge_vertices(int e) {
    static const std::array<int, 2> table[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    return table[e];
}

int edge_param_index(int e) {
    static const int table[6] = {0, 1, 2, 2, 1, 0};
    return table[e];
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<int> compress(UnionFind& uf, int n, int* count) {
    std::map<int, int> remap;
    std::vector<int> out(n);
    for (int i = 0; i < n; i++) {
        int r = uf.find(i);
        auto [it, fresh] = remap.try_emplace(r, int(remap.size()));
        out[i] = it->second;
    }
    *count = int(remap.size());
    return out;
}

}  // namespace

IdealTriangulation::IdealTriangulation(std::vector<Tetrahedron> tets, int cusp_count_hint)
    : tets_(std::move(tets)) {
    rebuild_classes(cusp_count_hint);
}

void IdealTriangulation::rebuild_classes(int cusp_count_hint) {
    int T = tet_count();
    UnionFind vuf(T * 4), euf(T * 6);
    for (int t = 0; t < T; t++)
        for (int f = 0; f < 4; f++) {
            const Tetrahedron& tt = tets_[t];
            if (tt.neighbor[f] < 0) continue;
            int t2 = tt.neighbor[f];
            for (int v = 0; v < 4; v++) {
                if (v == f) continue;
                vuf.unite(t * 4 + v, t2 * 4 + tt.perm[f][v]);
                for (int w = v + 1; w < 4; w++) {
                    if (w == f) continue;
                    euf.unite(t * 6 + edge_slot(v, w),
                              t2 * 6 + edge_slot(tt.perm[f][v], tt.perm[f][w]));
                }
            }
        }
    vertex_class_ = compress(vuf, T * 4, &vertex_class_count_);
    edge_class_ = compress(euf, T * 6, &edge_class_count_);

    // Vertex link Euler characteristics.  Faces of the link surface are the
    // truncation triangles (t, v); sides pair off through the face gluings;
    // corners group around edge ends.
    struct CornerKey {
        int t, v, e;
    };
    UnionFind cuf(T * 4 * 6);
    auto cidx = [](int t, int v, int e) { return (t * 4 + v) * 6 + e; };
    for (int t = 0; t < T; t++)
        for (int f = 0; f < 4; f++) {
            const Tetrahedron& tt = tets_[t];
            if (tt.neighbor[f] < 0) continue;
            int t2 = tt.neighbor[f];
            for (int v = 0; v < 4; v++) {
                if (v == f) continue;
                for (int w = 0; w < 4; w++) {
                    if (w == f || w == v) continue;
                    cuf.unite(cidx(t, v, edge_slot(v, w)),
                              cidx(t2, tt.perm[f][v], edge_slot(tt.perm[f][v], tt.perm[f][w])));
                }
            }
        }
    std::set<int> corner_roots;
    std::map<int, int> corner_class_of_root;
    std::vector<std::set<int>> class_corners(vertex_class_count_);
    for (int t = 0; t < T; t++)
        for (int v = 0; v < 4; v++)
            for (int w = 0; w < 4; w++) {
                if (w == v) continue;
                int root = cuf.find(cidx(t, v, edge_slot(v, w)));
                class_corners[vertex_class_[t * 4 + v]].insert(root);
            }
    class_euler_.assign(vertex_class_count_, 0);
    std::vector<int> class_faces(vertex_class_count_, 0);
    for (int t = 0; t < T; t++)
        for (int v = 0; v < 4; v++) class_faces[vertex_class_[t * 4 + v]]++;
    for (int c = 0; c < vertex_class_count_; c++) {
        int F = class_faces[c];
        int E = 3 * F / 2;
        int V = int(class_corners[c].size());
        class_euler_[c] = V - E + F;
    }

    class_cusp_.assign(vertex_class_count_, -1);
    cusp_class_.clear();
    (void)cusp_count_hint;
}

int IdealTriangulation::cusp_of_class(int vc) const { return class_cusp_[vc]; }

void IdealTriangulation::set_peripheral(std::vector<PeripheralCurve> meridians,
                                        std::vector<PeripheralCurve> longitudes,
                                        std::vector<int> corrections) {
    meridians_ = std::move(meridians);
    longitudes_ = std::move(longitudes);
    longitude_correction_ = std::move(corrections);
}

// ---------------------------------------------------------------------------
// Construction

IdealTriangulation octahedral_triangulation(const LinkDiagram& d) {
    if (d.has_twist_boxes())
        throw SemanticError("instantiate twist boxes before triangulating");
    if (d.crossings().empty())
        throw SemanticError("diagram has no crossings; add a kink to triangulate an unknot");
    if (!d.free_loops().empty())
        throw SemanticError("split crossingless components cannot be triangulated; add a kink");
    {
        ValidationReport rep = d.validate();
        if (!rep.warnings.empty())
            throw SemanticError("diagram rejected: " + rep.warnings.front());
        // connectivity: every crossing reachable from crossing 0 through arcs
        int nc = int(d.crossings().size());
        std::vector<char> seen(nc, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int s = 0; s < 4; s++) {
                int arc = d.crossings()[c].strands[s];
                for (ArcEnd e : {d.arc_head(arc), d.arc_tail(arc)}) {
                    if (e.crossing >= 0 && !seen[e.crossing]) {
                        seen[e.crossing] = 1;
                        reached++;
                        stack.push_back(e.crossing);
                    }
                }
            }
        }
        if (reached != nc)
            throw SemanticError("split diagram: triangulate each piece separately");
    }

    int nc = int(d.crossings().size());
    std::vector<Tetrahedron> tets(4 * nc);
    auto tet_of = [&](int c, int i) { return 4 * c + ((i % 4) + 4) % 4; };
    const std::array<int, 4> swap23{0, 1, 3, 2};

    auto glue = [&](int t1, int f1, int t2, int f2) {
        tets[t1].neighbor[f1] = t2;
        tets[t1].glued_face[f1] = f2;
        tets[t1].perm[f1] = swap23;
        tets[t2].neighbor[f2] = t1;
        tets[t2].glued_face[f2] = f1;
        tets[t2].perm[f2] = swap23;
    };

    // Tent folds across each strand end: upper faces across the over-strand
    // ends (odd rotational positions), lower faces across the under ends.
    for (int c = 0; c < nc; c++)
        for (int k = 0; k < 4; k++) {
            int face = (k % 2 == 1) ? 1 : 0;
            glue(tet_of(c, k - 1), face, tet_of(c, k), face);
        }

    // Wall gluings along each arc: the left strip joins the ccw flank at the
    // tail to the cw flank at the head, the right strip the other pair.
    std::set<int> done;
    for (int c = 0; c < nc; c++)
        for (int s = 0; s < 4; s++) {
            int arc = d.crossings()[c].strands[s];
            if (done.count(arc)) continue;
            done.insert(arc);
            ArcEnd tail = d.arc_tail(arc), head = d.arc_head(arc);
            int x = tail.crossing, i = tail.slot;
            int y = head.crossing, j = head.slot;
            glue(tet_of(x, i), 3, tet_of(y, j - 1), 2);
            glue(tet_of(x, i - 1), 2, tet_of(y, j), 3);
        }

    IdealTriangulation tri(std::move(tets), d.component_count());

    // Identify the cusp classes with link components via the strand slots.
    tri.class_cusp_.assign(tri.vertex_class_count_, -1);
    tri.cusp_class_.assign(d.component_count(), -1);
    for (int c = 0; c < nc; c++)
        for (int i = 0; i < 4; i++) {
            int arc = d.crossings()[c].strands[i];
            int comp = d.component_of_arc(arc);
            for (auto [t, v] : {std::pair(tet_of(c, i), 2), std::pair(tet_of(c, i - 1), 3)}) {
                int vc = tri.vertex_class_[t * 4 + v];
                if (tri.class_cusp_[vc] != -1 && tri.class_cusp_[vc] != comp)
                    throw SemanticError("internal error: strand vertex classes mix components");
                tri.class_cusp_[vc] = comp;
                tri.cusp_class_[comp] = vc;
            }
        }
    for (int comp = 0; comp < d.component_count(); comp++)
        if (tri.cusp_class_[comp] < 0)
            throw SemanticError("internal error: component without cusp class");
    return tri;
}

IdealTriangulation peripheral_curves(IdealTriangulation t, const LinkDiagram& d) {
    int n = d.component_count();
    std::vector<PeripheralCurve> meridians(n), longitudes(n);
    std::vector<int> corrections(n, 0);
    auto tet_of = [&](int c, int i) { return 4 * c + ((i % 4) + 4) % 4; };
    auto fold_face = [](int k) { return (((k % 4) + 4) % 4 % 2 == 1) ? 1 : 0; };

    for (int comp = 0; comp < n; comp++) {
        int arc = d.components()[comp].front();
        ArcEnd tail = d.arc_tail(arc), head = d.arc_head(arc);
        int x = tail.crossing, i = tail.slot;
        int y = head.crossing, j = head.slot;
        PeripheralCurve m;
        m.push_back({tet_of(x, i), 2, fold_face(i), 3});
        m.push_back({tet_of(y, j - 1), 3, 2, fold_face(j)});
        m.push_back({tet_of(y, j), 2, fold_face(j), 3});
        m.push_back({tet_of(x, i - 1), 3, 2, fold_face(i)});
        meridians[comp] = m;

        PeripheralCurve l;
        for (int a : d.components()[comp]) {
            ArcEnd h = d.arc_head(a);
            int c = h.crossing, pos = h.slot;
            l.push_back({tet_of(c, pos), 2, 3, fold_face(pos + 1)});
            l.push_back({tet_of(c, pos + 1), 3, fold_face(pos + 1), 2});
        }
        longitudes[comp] = l;
        corrections[comp] = -d.writhe(comp);
    }

    // Sanity: the walks must close up through the gluings.
    auto check_closed = [&](const PeripheralCurve& curve) {
        for (size_t k = 0; k < curve.size(); k++) {
            const CurveStep& a = curve[k];
            const CurveStep& b = curve[(k + 1) % curve.size()];
            const Tetrahedron& tt = t.tet(a.tet);
            if (tt.neighbor[a.face_out] != b.tet) return false;
            if (tt.perm[a.face_out][a.vertex] != b.vertex) return false;
            if (tt.glued_face[a.face_out] != b.face_in) return false;
        }
        return true;
    };
    for (int comp = 0; comp < n; comp++) {
        if (!check_closed(meridians[comp]) || !check_closed(longitudes[comp]))
            throw SemanticError("internal error: peripheral walk does not close");
        int inter = intersection_number(t, meridians[comp], longitudes[comp]);
        if (inter == -1) {
            std::reverse(meridians[comp].begin(), meridians[comp].end());
            for (CurveStep& s : meridians[comp]) std::swap(s.face_in, s.face_out);
            inter = intersection_number(t, meridians[comp], longitudes[comp]);
        }
        if (inter != 1)
            throw SemanticError("peripheral correction failed the intersection check");
    }
    t.set_peripheral(std::move(meridians), std::move(longitudes), std::move(corrections));
    return t;
}

// ---------------------------------------------------------------------------
// Intersection numbers on cusp tori

namespace {

// ccw corner order (a, b, c) at vertex v: (v, a, b, c) an even permutation.
std::array<int, 3> ccw_corners(int v) {
    static const std::array<int, 3> table[4] = {
        {1, 2, 3},  // v = 0: (0,1,2,3) even
        {0, 3, 2},  // v = 1: (1,0,3,2) even
        {0, 1, 3},  // v = 2: (2,0,1,3) even
        {0, 2, 1},  // v = 3: (3,0,2,1) even
    };
    return table[v];
}

struct SidePoint {
    int curve, step;
    int key;  // order along the side from end0 to end1
};

}  // namespace

int intersection_number(const IdealTriangulation& t, const PeripheralCurve& a,
                        const PeripheralCurve& b) {
    // Points crossing each side, ordered along the side; then chord
    // crossings per triangle.  A side is (tet, vertex, face); the designated
    // representative is the lexicographically smaller of the two glued
    // copies, and point order is stored in the representative's frame.
    using Side = std::array<int, 3>;

    // end corners of side (tet, v, f) in ascending slot order
    auto side_ends = [&](int v, int f) {
        std::array<int, 2> ends{};
        int k = 0;
        for (int w = 0; w < 4; w++)
            if (w != v && w != f) ends[k++] = w;
        return ends;
    };

    struct SideFrame {
        Side rep;
        bool same_order;  // local ascending-end order matches rep's
    };
    auto frame_of = [&](int tet, int v, int f) {
        const Tetrahedron& tt = t.tet(tet);
        Side here{tet, v, f};
        Side there{tt.neighbor[f], tt.perm[f][v], tt.glued_face[f]};
        if (here <= there) return SideFrame{here, true};
        auto ends_here = side_ends(v, f);
        auto ends_rep = side_ends(there[1], there[2]);
        bool same = (tt.perm[f][ends_here[0]] == ends_rep[0]);
        return SideFrame{there, same};
    };

    const PeripheralCurve* curves[2] = {&a, &b};
    std::map<Side, std::vector<SidePoint>> side_points;
    for (int ci = 0; ci < 2; ci++) {
        const PeripheralCurve& c = *curves[ci];
        int n = int(c.size());
        for (int k = 0; k < n; k++) {
            const CurveStep& s = c[k];
            const CurveStep& nx = c[(k + 1) % n];
            int hug_here = 6 - s.vertex - s.face_in - s.face_out;
            int hug_there = 6 - nx.vertex - nx.face_in - nx.face_out;
            SideFrame fr = frame_of(s.tet, s.vertex, s.face_out);
            int local, far;
            if (fr.rep == Side{s.tet, s.vertex, s.face_out}) {
                local = hug_here;
                far = t.tet(nx.tet).perm[nx.face_in][hug_there];
            } else {
                local = t.tet(s.tet).perm[s.face_out][hug_here];
                far = hug_there;
            }
            auto ends = side_ends(fr.rep[1], fr.rep[2]);
            int key = 2 * (local == ends[1] ? 1 : 0) + (far == ends[1] ? 1 : 0);
            side_points[fr.rep].push_back({ci, k, key});
        }
    }
    for (auto& [side, pts] : side_points)
        std::stable_sort(pts.begin(), pts.end(),
                         [](const SidePoint& p, const SidePoint& q) { return p.key < q.key; });

    // rank of the point generated by step `step_out` of curve ci, along the
    // given triangle-side's ascending-end order
    auto local_rank = [&](int ci, int step_out, int tet, int v, int f) {
        SideFrame fr = frame_of(tet, v, f);
        const auto& pts = side_points.at(fr.rep);
        for (int r = 0; r < int(pts.size()); r++)
            if (pts[r].curve == ci && pts[r].step == step_out)
                return std::pair(fr.same_order ? r : int(pts.size()) - 1 - r,
                                 int(pts.size()));
        throw SemanticError("internal error: side point not found");
    };

    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> tri_chords;
    for (int ci = 0; ci < 2; ci++)
        for (int k = 0; k < int(curves[ci]->size()); k++) {
            const CurveStep& s = (*curves[ci])[k];
            tri_chords[{s.tet, s.vertex}].push_back({ci, k});
        }

    long long total = 0;
    for (auto& [tv, chords] : tri_chords) {
        auto [tet, v] = tv;
        auto corners = ccw_corners(v);
        // ccw boundary: corner a -> side_c -> corner b -> side_a -> corner c
        // -> side_b -> corner a
        std::array<std::array<int, 3>, 3> side_seq;  // {face, from_corner, to_corner}
        side_seq[0] = {corners[2], corners[0], corners[1]};
        side_seq[1] = {corners[0], corners[1], corners[2]};
        side_seq[2] = {corners[1], corners[2], corners[0]};

        auto boundary_pos = [&](int ci, int step, bool leaving) {
            const PeripheralCurve& c = *curves[ci];
            int n = int(c.size());
            const CurveStep& here = c[step];
            int face = leaving ? here.face_out : here.face_in;
            int step_out = leaving ? step : (step - 1 + n) % n;
            // the crossing point lives on the side the generating step exits
            const CurveStep& gen = c[step_out];
            auto [r, count] = local_rank(ci, step_out, tet, v, face);
            (void)gen;
            int side_idx = -1;
            for (int si = 0; si < 3; si++)
                if (side_seq[si][0] == face) side_idx = si;
            bool travel_matches = (side_seq[side_idx][1] == side_ends(v, face)[0]);
            if (!travel_matches) r = count - 1 - r;
            return (long long)side_idx * 1000 + r;
        };

        for (size_t p = 0; p < chords.size(); p++)
            for (size_t q = p + 1; q < chords.size(); q++) {
                auto [c1, k1] = chords[p];
                auto [c2, k2] = chords[q];
                if (c1 == c2) continue;
                long long a_in = boundary_pos(c1, k1, false);
                long long a_out = boundary_pos(c1, k1, true);
                long long b_in = boundary_pos(c2, k2, false);
                long long b_out = boundary_pos(c2, k2, true);
                auto between = [](long long lo, long long hi, long long x) {
                    if (lo < hi) return lo < x && x < hi;
                    return x > lo || x < hi;
                };
                bool in_between = between(a_in, a_out, b_in);
                bool out_between = between(a_in, a_out, b_out);
                if (in_between == out_between) continue;  // no crossing
                int sgn = in_between ? +1 : -1;
                if (c1 == 1) sgn = -sgn;  // report as a x b
                total += sgn;
            }
    }
    return int(total);
}

// ---------------------------------------------------------------------------

CombinatoricsReport IdealTriangulation::check_combinatorics() const {
    CombinatoricsReport rep;
    auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
        rep.entries.push_back({name, pass, detail});
    };

    bool involutive = true, complete = true, oriented = true;
    std::string where;
    for (int t = 0; t < tet_count() && involutive; t++)
        for (int f = 0; f < 4; f++) {
            const Tetrahedron& tt = tets_[t];
            if (tt.neighbor[f] < 0) {
                complete = false;
                continue;
            }
            const Tetrahedron& uu = tets_[tt.neighbor[f]];
            int f2 = tt.glued_face[f];
            if (uu.neighbor[f2] != t || uu.glued_face[f2] != f) {
                involutive = false;
                where = "tet " + std::to_string(t) + " face " + std::to_string(f);
                break;
            }
            for (int v = 0; v < 4; v++)
                if (uu.perm[f2][tt.perm[f][v]] != v) {
                    involutive = false;
                    where = "tet " + std::to_string(t) + " face " + std::to_string(f);
                    break;
                }
            // permutation parity must be odd for orientability
            int inv = 0;
            for (int x = 0; x < 4; x++)
                for (int y = x + 1; y < 4; y++)
                    if (tt.perm[f][x] > tt.perm[f][y]) inv++;
            if (inv % 2 == 0) oriented = false;
        }
    add("face gluings form a fixed-point-free involution", involutive && complete, where);
    add("gluing permutations orientation-compatible", oriented);

    int material = 0, tori = 0;
    bool torus_ok = true;
    for (int c = 0; c < vertex_class_count_; c++) {
        if (!class_cusp_.empty() && class_cusp_[c] >= 0) {
            tori++;
            if (class_euler_[c] != 0) torus_ok = false;
        } else {
            material++;
        }
    }
    add("each cusp link is a torus (Euler characteristic 0)", torus_ok);
    add("edge classes = tetrahedra + material classes",
        edge_class_count_ == tet_count() + material,
        std::to_string(edge_class_count_) + " vs " + std::to_string(tet_count()) + " + " +
            std::to_string(material));

    if (has_peripheral_curves()) {
        bool inter_ok = true;
        for (int cu = 0; cu < cusp_count(); cu++)
            if (intersection_number(*this, meridians_[cu], longitudes_[cu]) != 1)
                inter_ok = false;
        add("meridian-longitude intersection number 1 on each cusp", inter_ok);
    }
    return rep;
}

std::string IdealTriangulation::to_json() const {
    nlohmann::json j;
    j["tetrahedra"] = nlohmann::json::array();
    for (const Tetrahedron& t : tets_) {
        nlohmann::json tj;
        tj["neighbors"] = t.neighbor;
        tj["faces"] = t.glued_face;
        nlohmann::json perms = nlohmann::json::array();
        for (int f = 0; f < 4; f++) {
            std::string p;
            for (int v = 0; v < 4; v++) p += char('0' + t.perm[f][v]);
            perms.push_back(p);
        }
        tj["perms"] = perms;
        j["tetrahedra"].push_back(tj);
    }
    j["edge_classes"] = edge_class_;
    j["vertex_classes"] = vertex_class_;
    j["cusps"] = cusp_class_;
    if (has_peripheral_curves()) {
        auto dump_curve = [](const PeripheralCurve& c) {
            nlohmann::json out = nlohmann::json::array();
            for (const CurveStep& s : c) out.push_back({s.tet, s.vertex, s.face_in, s.face_out});
            return out;
        };
        j["meridians"] = nlohmann::json::array();
        j["longitudes"] = nlohmann::json::array();
        j["longitude_corrections"] = longitude_correction_;
        for (int c = 0; c < cusp_count(); c++) {
            j["meridians"].push_back(dump_curve(meridians_[c]));
            j["longitudes"].push_back(dump_curve(longitudes_[c]));
        }
    }
    return j.dump(2);
}

}  // namespace surgerylab
