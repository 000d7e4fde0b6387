#include "surgerylab/pd.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"

namespace surgerylab {

using nlohmann::json;

LinkDiagram::LinkDiagram(std::vector<Crossing> crossings, std::vector<TwistBox> boxes,
                         std::vector<int> free_loops, std::string name)
    : crossings_(std::move(crossings)),
      twist_boxes_(std::move(boxes)),
      free_loops_(std::move(free_loops)),
      name_(std::move(name)) {
    derive_structure();
}

namespace {

struct Occurrence {
    int crossing;
    int slot;
};

}  // namespace

// Orientation derivation.  Under-strand slots (0 incoming, 2 outgoing) anchor
// the orientations; over-strand directions propagate along arcs.  Crossings
// whose over direction stays free (components that are everywhere an
// over-strand) get a deterministic choice, unless the crossing carried an
// explicit sign mark from the input (over_in_d as parsed).
void LinkDiagram::derive_structure() {
    int nc = int(crossings_.size());
    std::map<int, std::vector<Occurrence>> occ;
    for (int c = 0; c < nc; c++)
        for (int s = 0; s < 4; s++) {
            int arc = crossings_[c].strands[s];
            if (arc <= 0) throw ParseError("arc labels must be positive integers");
            occ[arc].push_back({c, s});
        }
    for (int a : free_loops_) {
        if (a <= 0) throw ParseError("arc labels must be positive integers");
        if (occ.count(a)) throw ParseError("arc " + std::to_string(a) +
                                           " is both a free loop and a crossing strand");
    }
    {
        std::set<int> loop_set(free_loops_.begin(), free_loops_.end());
        if (loop_set.size() != free_loops_.size())
            throw ParseError("duplicate free loop label");
    }
    for (auto& [arc, v] : occ)
        if (v.size() != 2)
            throw ParseError("arc label " + std::to_string(arc) + " used " +
                             std::to_string(v.size()) + " times (expected 2)");
    for (const TwistBox& b : twist_boxes_) {
        for (int a : {b.arc_p, b.arc_q})
            if (!occ.count(a) && !std::count(free_loops_.begin(), free_loops_.end(), a))
                throw ParseError("twist box " + b.id + " references unknown arc " +
                                 std::to_string(a));
        if (b.handedness != 1 && b.handedness != -1)
            throw ParseError("twist box " + b.id + " handedness must be +1 or -1");
    }
    {
        // An arc may thread one box twice (a clasp cup), but not two boxes.
        std::map<int, std::string> box_of_arc;
        for (const TwistBox& b : twist_boxes_)
            for (int a : {b.arc_p, b.arc_q}) {
                auto [it, fresh_arc] = box_of_arc.try_emplace(a, b.id);
                if (!fresh_arc && it->second != b.id)
                    throw ParseError("arc " + std::to_string(a) + " used by two twist boxes");
            }
    }

    // head(c, slot) as a function of b = over_in_d(c):
    //   slot 0: head, slot 2: tail, slot 1: head iff !b, slot 3: head iff b.
    auto head_is = [](int slot, bool b) {
        switch (slot) {
            case 0: return true;
            case 2: return false;
            case 1: return !b;
            default: return b;
        }
    };

    std::vector<std::optional<bool>> b(nc);
    // Propagation: forced values from arcs with an under occurrence, then
    // parity constraints between over-over arcs.
    struct Constraint {
        int other;
        bool parity;  // b(this) XOR b(other) == parity
    };
    std::vector<std::vector<Constraint>> graph(nc);
    std::queue<int> work;

    auto force = [&](int c, bool val) {
        if (b[c].has_value()) {
            if (*b[c] != val)
                throw ParseError("inconsistent strand orientations around crossing " +
                                 std::to_string(c) + " (non-closed component cycle)");
            return;
        }
        b[c] = val;
        work.push(c);
    };

    for (auto& [arc, v] : occ) {
        auto [c1, s1] = std::pair(v[0].crossing, v[0].slot);
        auto [c2, s2] = std::pair(v[1].crossing, v[1].slot);
        bool over1 = (s1 == 1 || s1 == 3), over2 = (s2 == 1 || s2 == 3);
        if (!over1 && !over2) {
            if (head_is(s1, false) == head_is(s2, false))
                throw ParseError("arc " + std::to_string(arc) +
                                 " has two heads or two tails (non-closed component cycle)");
        } else if (over1 != over2) {
            int co = over1 ? c1 : c2;
            int so = over1 ? s1 : s2;
            int su = over1 ? s2 : s1;
            bool need_head = !head_is(su, false);
            // head(so, b) = b XOR (so == 1)
            force(co, need_head != (so == 1));
        } else {
            if (c1 == c2) continue;  // slots 1 and 3 of one crossing: always consistent
            bool parity = true != (s1 == 1) != (s2 == 1);
            graph[c1].push_back({c2, parity});
            graph[c2].push_back({c1, parity});
        }
    }

    auto propagate = [&]() {
        while (!work.empty()) {
            int c = work.front();
            work.pop();
            for (const Constraint& e : graph[c]) force(e.other, *b[c] != e.parity);
        }
    };
    propagate();
    for (int c = 0; c < nc; c++)
        if (!b[c].has_value()) {
            // Free orientation: keep the parsed flag so explicit sign marks
            // and programmatic values survive.
            force(c, crossings_[c].over_in_d);
            propagate();
        }
    for (int c = 0; c < nc; c++) crossings_[c].over_in_d = *b[c];

    // Successor map arc -> arc through the head crossing, then components.
    std::map<int, int> next;
    std::map<int, ArcEnd> head, tail;
    for (int c = 0; c < nc; c++) {
        const Crossing& x = crossings_[c];
        next[x.under_in()] = x.under_out();
        next[x.over_in()] = x.over_out();
        for (int s = 0; s < 4; s++) {
            if (head_is(s, x.over_in_d))
                head[x.strands[s]] = {c, s};
            else
                tail[x.strands[s]] = {c, s};
        }
    }
    for (int a : free_loops_) {
        next[a] = a;
        head[a] = tail[a] = {-1, -1};
    }

    components_.clear();
    std::set<int> seen;
    std::vector<std::vector<int>> comps;
    for (auto& [arc, _] : next) {
        if (seen.count(arc)) continue;
        std::vector<int> cyc;
        int a = arc;
        while (!seen.count(a)) {
            seen.insert(a);
            cyc.push_back(a);
            a = next.at(a);
        }
        if (a != arc) throw ParseError("non-closed component cycle at arc " + std::to_string(a));
        // rotate so the smallest arc starts the cycle
        auto it = std::min_element(cyc.begin(), cyc.end());
        std::rotate(cyc.begin(), it, cyc.end());
        comps.push_back(std::move(cyc));
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    components_ = std::move(comps);

    arc_component_.assign(1, -1);
    arc_heads_.clear();
    arc_tails_.clear();
    for (int i = 0; i < int(components_.size()); i++)
        for (int a : components_[i]) {
            arc_heads_.emplace_back(a, head.at(a));
            arc_tails_.emplace_back(a, tail.at(a));
            if (int(arc_component_.size()) <= a) arc_component_.resize(a + 1, -1);
            arc_component_[a] = i;
        }
}

int LinkDiagram::component_of_arc(int arc) const {
    if (arc < 0 || arc >= int(arc_component_.size()) || arc_component_[arc] < 0)
        throw SemanticError("unknown arc " + std::to_string(arc));
    return arc_component_[arc];
}

ArcEnd LinkDiagram::arc_head(int arc) const {
    for (auto& [a, e] : arc_heads_)
        if (a == arc) return e;
    throw SemanticError("unknown arc " + std::to_string(arc));
}

ArcEnd LinkDiagram::arc_tail(int arc) const {
    for (auto& [a, e] : arc_tails_)
        if (a == arc) return e;
    throw SemanticError("unknown arc " + std::to_string(arc));
}

ValidationReport LinkDiagram::validate() const {
    ValidationReport r;
    r.crossing_count = int(crossings_.size());
    r.arc_count = arc_count();
    r.component_count = component_count();
    // Construction already enforces the hard invariants; re-check signs and
    // planarity as report entries.
    for (int c = 0; c < int(crossings_.size()); c++) {
        const Crossing& x = crossings_[c];
        if (x.sign() != (x.over_in_d ? 1 : -1)) {
            r.ok = false;
            r.errors.push_back("crossing " + std::to_string(c) + ": sign inconsistent");
        }
    }
    if (!crossings_.empty()) {
        int f = int(faces().size());
        int v = int(crossings_.size());
        // Euler check per connected diagram: V - E + F = 2 - 2g, E = 2V.
        // Count connected pieces of the crossing graph through arcs.
        std::vector<int> piece(crossings_.size(), -1);
        int npieces = 0;
        for (int c0 = 0; c0 < int(crossings_.size()); c0++) {
            if (piece[c0] >= 0) continue;
            std::queue<int> q;
            q.push(c0);
            piece[c0] = npieces;
            while (!q.empty()) {
                int c = q.front();
                q.pop();
                for (int s = 0; s < 4; s++) {
                    int arc = crossings_[c].strands[s];
                    for (auto& [a, e] : arc_heads_)
                        if (a == arc && e.crossing >= 0 && piece[e.crossing] < 0) {
                            piece[e.crossing] = piece[c];
                            q.push(e.crossing);
                        }
                    for (auto& [a, e] : arc_tails_)
                        if (a == arc && e.crossing >= 0 && piece[e.crossing] < 0) {
                            piece[e.crossing] = piece[c];
                            q.push(e.crossing);
                        }
                }
            }
            npieces++;
        }
        if (v - 2 * v + f != 2 * npieces) {
            r.warnings.push_back("rotation system is not planar (V-E+F = " +
                                 std::to_string(v - 2 * v + f) + ", expected " +
                                 std::to_string(2 * npieces) + ")");
        }
    }
    return r;
}

int LinkDiagram::linking_number(int comp_i, int comp_j) const {
    if (comp_i == comp_j)
        throw SemanticError("self-linking is a framing notion; components must differ");
    if (comp_i < 0 || comp_i >= component_count() || comp_j < 0 || comp_j >= component_count())
        throw SemanticError("component index out of range");
    if (!twist_boxes_.empty())
        throw SemanticError("twist boxes must be instantiated before computing linking numbers");
    int sum = 0;
    for (const Crossing& x : crossings_) {
        int cu = arc_component_[x.under_in()];
        int co = arc_component_[x.over_in()];
        if ((cu == comp_i && co == comp_j) || (cu == comp_j && co == comp_i)) sum += x.sign();
    }
    return sum / 2;
}

int LinkDiagram::writhe(int comp_i) const {
    if (comp_i < 0 || comp_i >= component_count())
        throw SemanticError("component index out of range");
    if (!twist_boxes_.empty())
        throw SemanticError("twist boxes must be instantiated before computing writhe");
    int sum = 0;
    for (const Crossing& x : crossings_) {
        if (arc_component_[x.under_in()] == comp_i && arc_component_[x.over_in()] == comp_i)
            sum += x.sign();
    }
    return sum;
}

LinkDiagram LinkDiagram::reverse_component(int comp_i) const {
    if (comp_i < 0 || comp_i >= component_count())
        throw SemanticError("component index out of range");
    std::vector<Crossing> cs = crossings_;
    for (Crossing& x : cs) {
        bool u_in = arc_component_[x.under_in()] == comp_i;
        bool o_in = arc_component_[x.over_in()] == comp_i;
        if (u_in) {
            std::rotate(x.strands.begin(), x.strands.begin() + 2, x.strands.end());
            if (!o_in) x.over_in_d = !x.over_in_d;
        } else if (o_in) {
            x.over_in_d = !x.over_in_d;
        }
    }
    return LinkDiagram(cs, twist_boxes_, free_loops_, name_);
}

std::vector<std::vector<LinkDiagram::FaceSide>> LinkDiagram::faces() const {
    // Face tracing on the rotation system: arriving into slot s, the face on
    // the walker's left continues out of slot (s + 3) mod 4.
    std::vector<std::vector<FaceSide>> result;
    std::set<std::pair<int, bool>> used;  // directed sides
    auto slot_arc = [&](int c, int s) { return crossings_[c].strands[s]; };

    std::map<int, ArcEnd> head, tail;
    for (auto& [a, e] : arc_heads_) head[a] = e;
    for (auto& [a, e] : arc_tails_) tail[a] = e;

    for (auto& [a0, _] : head) {
        if (head[a0].crossing < 0) continue;  // free loops excluded
        for (bool fwd0 : {true, false}) {
            if (used.count({a0, fwd0})) continue;
            std::vector<FaceSide> face;
            int a = a0;
            bool fwd = fwd0;
            while (!used.count({a, fwd})) {
                used.insert({a, fwd});
                face.push_back({a, fwd});
                ArcEnd arrive = fwd ? head[a] : tail[a];
                int s_next = (arrive.slot + 3) % 4;
                int a_next = slot_arc(arrive.crossing, s_next);
                // leaving through s_next: forward iff that slot is a_next's tail
                ArcEnd t = tail[a_next];
                bool leaving_fwd = (t.crossing == arrive.crossing && t.slot == s_next);
                a = a_next;
                fwd = leaving_fwd;
            }
            result.push_back(std::move(face));
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Twist instantiation

namespace {

// Generic crossing tuple from local geometry.  Ends are the four corners in
// counterclockwise order BL, BR, TR, TL; each strand enters at one corner and
// leaves at the opposite one.
struct ChainCrossing {
    int label[4];  // by corner: 0=BL 1=BR 2=TR 3=TL
    int in_corner_u, in_corner_o;
};

Crossing make_crossing(const std::array<int, 4>& corner_label, int under_in_corner) {
    Crossing x;
    for (int k = 0; k < 4; k++) x.strands[k] = corner_label[(under_in_corner + k) % 4];
    // over_in_d derived later by the diagram constructor; seed consistently:
    // over incoming sits 3 corners ccw of under-in iff it lands in slot 3.
    return x;
}

int cross_z(std::pair<int, int> a, std::pair<int, int> b) {
    return a.first * b.second - a.second * b.first;
}

}  // namespace

LinkDiagram LinkDiagram::instantiate_twists(const std::string& box_id, int n) const {
    auto it = std::find_if(twist_boxes_.begin(), twist_boxes_.end(),
                           [&](const TwistBox& b) { return b.id == box_id; });
    if (it == twist_boxes_.end()) throw SemanticError("unknown twist box: " + box_id);
    TwistBox box = *it;

    std::vector<TwistBox> boxes;
    for (const TwistBox& b : twist_boxes_)
        if (b.id != box_id) boxes.push_back(b);

    if (n == 0) return LinkDiagram(crossings_, boxes, free_loops_, name_);

    // Relative orientation of the two strands from a shared face.
    bool parallel = false, found = false;
    for (const auto& face : faces()) {
        std::optional<bool> fp, fq;
        for (const FaceSide& s : face) {
            if (s.arc == box.arc_p) fp = s.forward;
            if (s.arc == box.arc_q) fq = s.forward;
        }
        if (fp && fq) {
            parallel = (*fp != *fq);
            found = true;
            break;
        }
    }
    if (!found) {
        bool p_loop = std::count(free_loops_.begin(), free_loops_.end(), box.arc_p);
        bool q_loop = std::count(free_loops_.begin(), free_loops_.end(), box.arc_q);
        if (p_loop || q_loop)
            parallel = true;  // loops carry no rotation data; lanes run parallel
        else
            throw SemanticError("twist box " + box_id + " strands do not cobound a region");
    }

    int sign = box.handedness * (n > 0 ? 1 : -1);
    int count = 2 * (n > 0 ? n : -n);
    bool same_arc = (box.arc_p == box.arc_q);
    if (same_arc && parallel)
        throw SemanticError("twist box " + box_id + " threads one arc twice but not as a clasp");

    int fresh = 1;
    for (const Crossing& x : crossings_)
        for (int s = 0; s < 4; s++) fresh = std::max(fresh, x.strands[s] + 1);
    for (int a : free_loops_) fresh = std::max(fresh, a + 1);
    for (const TwistBox& b : boxes) fresh = std::max({fresh, b.arc_p + 1, b.arc_q + 1});

    bool p_is_loop = std::count(free_loops_.begin(), free_loops_.end(), box.arc_p) > 0;
    bool q_is_loop = std::count(free_loops_.begin(), free_loops_.end(), box.arc_q) > 0;

    // Segment labels.  Up-traveler (arc_p): a[0] = arc_p, ..., a[count].
    // Down-traveler or parallel partner (arc_q): parallel: b[0] = arc_q ...;
    // antiparallel: b[count] = arc_q entering at the top, b[0] leaves at the
    // bottom.  Closed loops reuse their own label as the final segment.  A
    // clasp (same arc twice) descends as the b-chain, turns around at the
    // bottom (a[0] = b[0]) and ascends as the a-chain.
    std::vector<int> a(count + 1), bseg(count + 1);
    if (same_arc) {
        bseg[count] = box.arc_q;
        for (int k = count - 1; k >= 0; k--) bseg[k] = fresh++;
        a[0] = bseg[0];
        for (int k = 1; k <= count; k++) a[k] = (k == count && p_is_loop) ? box.arc_p : fresh++;
    } else {
        a[0] = box.arc_p;
        for (int k = 1; k <= count; k++) a[k] = (k == count && p_is_loop) ? box.arc_p : fresh++;
        if (parallel) {
            bseg[0] = box.arc_q;
            for (int k = 1; k <= count; k++)
                bseg[k] = (k == count && q_is_loop) ? box.arc_q : fresh++;
        } else {
            bseg[count] = box.arc_q;
            for (int k = count - 1; k >= 0; k--)
                bseg[k] = (k == 0 && q_is_loop) ? box.arc_q : fresh++;
        }
    }

    std::vector<Crossing> cs = crossings_;
    for (int k = 0; k < count; k++) {
        bool p_in_left = (k % 2 == 0);
        // Corners ccw: 0=BL 1=BR 2=TR 3=TL.  Up-traveler p: below-lane to
        // opposite above-lane.
        int p_in = p_in_left ? 0 : 1, p_out = p_in_left ? 2 : 3;
        std::pair<int, int> p_dir = p_in_left ? std::pair(1, 1) : std::pair(-1, 1);
        int q_in, q_out;
        std::pair<int, int> q_dir;
        if (parallel) {
            q_in = p_in_left ? 1 : 0;
            q_out = p_in_left ? 3 : 2;
            q_dir = p_in_left ? std::pair(-1, 1) : std::pair(1, 1);
        } else {
            q_in = p_in_left ? 3 : 2;  // above, same lane as p entry
            q_out = p_in_left ? 1 : 0;
            q_dir = p_in_left ? std::pair(1, -1) : std::pair(-1, -1);
        }
        std::array<int, 4> corner{};
        corner[p_in] = a[k];
        corner[p_out] = a[k + 1];
        corner[q_in] = parallel ? bseg[k] : bseg[k + 1];
        corner[q_out] = parallel ? bseg[k + 1] : bseg[k];

        bool p_over = cross_z(p_dir, q_dir) == 2 * sign;
        int under_in_corner = p_over ? q_in : p_in;
        cs.push_back(make_crossing(corner, under_in_corner));
    }

    // Reconnect the chain exits to the original head slots.
    auto rewrite_head = [&](int arc, int final_label) {
        if (arc == final_label) return;  // closed loop case
        ArcEnd h = arc_head(arc);
        cs[h.crossing].strands[h.slot] = final_label;
    };
    if (same_arc) {
        if (!p_is_loop) rewrite_head(box.arc_p, a[count]);
    } else {
        if (!p_is_loop) rewrite_head(box.arc_p, a[count]);
        if (!q_is_loop) rewrite_head(box.arc_q, parallel ? bseg[count] : bseg[0]);
    }

    std::vector<int> loops;
    for (int l : free_loops_)
        if (l != box.arc_p && l != box.arc_q) loops.push_back(l);
    if (p_is_loop && q_is_loop) {
        // both strands were loops: nothing outside the chain refers to them
    }
    return LinkDiagram(cs, boxes, loops, name_);
}

// ---------------------------------------------------------------------------
// Parsing and serialization

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            i++;
            return true;
        }
        return false;
    }
    void expect(char c) {
        skip_ws();
        if (i >= s.size() || s[i] != c)
            throw ParseError(std::string("expected '") + c + "'", int(i));
        i++;
    }
    long long integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) i++;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) i++;
        if (i == start || (i == start + 1 && !std::isdigit((unsigned char)s[start])))
            throw ParseError("expected integer", int(start));
        return std::stoll(s.substr(start, i - start));
    }
    std::string word() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) i++;
        if (i == start) throw ParseError("expected identifier", int(start));
        return s.substr(start, i - start);
    }
    bool at_end() {
        skip_ws();
        return i >= s.size();
    }
};

}  // namespace

LinkDiagram LinkDiagram::parse(const std::string& text) {
    Lexer lx{text};
    std::string head = lx.word();
    if (head != "PD") throw ParseError("expected PD[...]", 0);
    lx.expect('[');
    std::vector<Crossing> crossings;
    std::vector<TwistBox> boxes;
    std::vector<int> loops;
    std::vector<std::pair<int, bool>> marks;  // crossing index, demanded sign
    if (!lx.eat(']')) {
        do {
            size_t tok_pos = lx.i;
            std::string kind = lx.word();
            if (kind == "X" || kind == "Xp" || kind == "Xm") {
                lx.expect('[');
                Crossing x;
                for (int s = 0; s < 4; s++) {
                    long long v = lx.integer();
                    if (v <= 0) throw ParseError("arc labels must be positive", int(lx.i));
                    x.strands[s] = int(v);
                    if (s < 3) lx.expect(',');
                }
                lx.expect(']');
                x.over_in_d = (kind != "Xm");
                if (kind != "X") marks.emplace_back(int(crossings.size()), x.over_in_d);
                crossings.push_back(x);
            } else if (kind == "T") {
                lx.expect('[');
                TwistBox b;
                b.id = lx.word();
                lx.expect(',');
                b.arc_p = int(lx.integer());
                lx.expect(',');
                b.arc_q = int(lx.integer());
                lx.expect(',');
                long long h = lx.integer();
                lx.expect(']');
                if (h != 1 && h != -1)
                    throw ParseError("twist box handedness must be +1 or -1", int(tok_pos));
                b.handedness = int(h);
                boxes.push_back(b);
            } else if (kind == "O") {
                lx.expect('[');
                loops.push_back(int(lx.integer()));
                lx.expect(']');
            } else {
                throw ParseError("unknown clause '" + kind + "'", int(tok_pos));
            }
        } while (lx.eat(','));
        lx.expect(']');
    }
    if (!lx.at_end()) throw ParseError("trailing input", int(lx.i));

    LinkDiagram d(crossings, boxes, loops);
    for (auto [c, want] : marks)
        if (d.crossings()[c].over_in_d != want)
            throw ParseError("sign mark on crossing " + std::to_string(c) +
                             " conflicts with the strand orientations");
    return d;
}

LinkDiagram LinkDiagram::parse_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    std::vector<Crossing> crossings;
    std::vector<TwistBox> boxes;
    std::vector<int> loops;
    std::string name;
    try {
        for (const auto& t : j.value("crossings", json::array())) {
            Crossing x;
            if (t.is_array()) {
                if (t.size() != 4) throw ParseError("crossing tuple must have 4 entries");
                for (int s = 0; s < 4; s++) x.strands[s] = t[s].get<int>();
            } else {
                auto arr = t.at("strands");
                for (int s = 0; s < 4; s++) x.strands[s] = arr.at(s).get<int>();
                if (t.contains("sign")) x.over_in_d = t["sign"].get<int>() > 0;
            }
            crossings.push_back(x);
        }
        for (const auto& t : j.value("twist_boxes", json::array())) {
            TwistBox b;
            b.id = t.at("id").get<std::string>();
            b.arc_p = t.at("arcs").at(0).get<int>();
            b.arc_q = t.at("arcs").at(1).get<int>();
            b.handedness = t.at("hand").get<int>();
            boxes.push_back(b);
        }
        for (const auto& t : j.value("loops", json::array())) loops.push_back(t.get<int>());
        name = j.value("name", std::string());
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad diagram JSON: ") + e.what());
    }
    return LinkDiagram(crossings, boxes, loops, name);
}

std::string LinkDiagram::to_text() const {
    std::ostringstream os;
    os << "PD[";
    bool first = true;
    for (const Crossing& x : crossings_) {
        if (!first) os << ",";
        first = false;
        os << (x.over_in_d ? "Xp[" : "Xm[") << x.strands[0] << "," << x.strands[1] << ","
           << x.strands[2] << "," << x.strands[3] << "]";
    }
    for (const TwistBox& b : twist_boxes_) {
        if (!first) os << ",";
        first = false;
        os << "T[" << b.id << "," << b.arc_p << "," << b.arc_q << "," << b.handedness << "]";
    }
    for (int l : free_loops_) {
        if (!first) os << ",";
        first = false;
        os << "O[" << l << "]";
    }
    os << "]";
    return os.str();
}

std::string LinkDiagram::to_json() const {
    json j;
    j["crossings"] = json::array();
    for (const Crossing& x : crossings_) {
        json t;
        t["strands"] = {x.strands[0], x.strands[1], x.strands[2], x.strands[3]};
        t["sign"] = x.sign();
        j["crossings"].push_back(t);
    }
    j["twist_boxes"] = json::array();
    for (const TwistBox& b : twist_boxes_)
        j["twist_boxes"].push_back({{"id", b.id}, {"arcs", {b.arc_p, b.arc_q}},
                                    {"hand", b.handedness}});
    j["loops"] = free_loops_;
    if (!name_.empty()) j["name"] = name_;
    return j.dump();
}

uint64_t LinkDiagram::hash() const {
    uint64_t h = 1469598103934665603ull;
    for (char c : to_text()) {
        h ^= (unsigned char)c;
        h *= 1099511628211ull;
    }
    return h;
}

bool LinkDiagram::structurally_equal(const LinkDiagram& other) const {
    return crossings_ == other.crossings_ && twist_boxes_ == other.twist_boxes_ &&
           free_loops_ == other.free_loops_;
}

LinkDiagram braid_closure(int strands, const std::vector<int>& word) {
    if (strands < 1) throw SemanticError("braid needs at least one strand");
    std::vector<int> lane(strands);
    for (int i = 0; i < strands; i++) lane[i] = i + 1;
    int fresh = strands + 1;
    std::vector<Crossing> cs;
    // Strands travel downward; letter +j crosses lane j-1 over lane j.
    for (int w : word) {
        int j = w > 0 ? w : -w;
        if (j < 1 || j >= strands) throw SemanticError("braid letter out of range");
        int li = j - 1, ri = j;
        int u = lane[li], v = lane[ri];
        int u2 = fresh++, v2 = fresh++;
        // corners ccw 0=BL 1=BR 2=TR 3=TL; both strands move down:
        // left lane strand: TL -> BR, right lane strand: TR -> BL.
        std::array<int, 4> corner{};
        corner[3] = u;   // left in at TL
        corner[1] = u2;  // left out at BR
        corner[2] = v;   // right in at TR
        corner[0] = v2;  // right out at BL
        // With downward strands, the right-over-left crossing is positive.
        bool right_over = (w > 0);
        int under_in_corner = right_over ? 3 : 2;
        cs.push_back(make_crossing(corner, under_in_corner));
        lane[li] = v2;
        lane[ri] = u2;
    }
    // Closure: identify each lane's final label with its initial label.
    std::vector<int> loops;
    for (int i = 0; i < strands; i++) {
        int init = i + 1, fin = lane[i];
        if (fin == init) {
            loops.push_back(init);
            continue;
        }
        for (Crossing& x : cs)
            for (int s = 0; s < 4; s++)
                if (x.strands[s] == fin) x.strands[s] = init;
    }
    return LinkDiagram(cs, {}, loops);
}

}  // namespace surgerylab
