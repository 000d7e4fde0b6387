#include "doctest.h"

#include <random>

#include "surgerylab/builders.hpp"
#include "surgerylab/surgery.hpp"

using namespace surgerylab;

namespace {

FramedLink filled(const LinkDiagram& d, const std::vector<std::string>& coeffs) {
    std::vector<Coefficient> c;
    for (const auto& s : coeffs) c.push_back(parse_coefficient(s));
    return FramedLink(d, c);
}

// A random framed link with a marked round unknot: braid closure plus a ring
// around one or two strands.
struct RandomCase {
    FramedLink fl;
    int ring_comp;
};

RandomCase random_framed_link(std::mt19937& rng) {
    std::uniform_int_distribution<int> nstr(2, 4), len(1, 8), coin(0, 1), slope_p(-6, 6),
        slope_q(0, 3);
    while (true) {
        int k = nstr(rng);
        std::uniform_int_distribution<int> gen(1, k - 1);
        std::vector<int> word(len(rng));
        for (int& w : word) w = gen(rng) * (coin(rng) ? 1 : -1);
        LinkDiagram base = braid_closure(k, word);
        if (base.crossings().empty()) continue;
        if (base.component_count() > 3) continue;

        // ring around one strand, or two strands cobounding a face
        std::vector<Passage> passages;
        if (coin(rng)) {
            passages = {{base.components()[0].front(), true}};
        } else {
            bool found = false;
            for (const auto& face : base.faces()) {
                for (size_t i = 0; i < face.size() && !found; i++)
                    for (size_t j = i + 1; j < face.size() && !found; j++) {
                        if (face[i].arc == face[j].arc) continue;
                        bool parallel = face[i].forward != face[j].forward;
                        passages = {{face[i].arc, true}, {face[j].arc, parallel}};
                        found = true;
                    }
                if (found) break;
            }
            if (!found) continue;
        }
        LinkDiagram d;
        try {
            d = encircle(base, passages);
        } catch (const std::exception&) {
            continue;
        }
        if (!d.validate().warnings.empty()) continue;

        int ring_comp = -1;
        {
            // ring arcs start right after the base's largest label
            int ring_arc = 0;
            for (const Crossing& x : base.crossings())
                for (int s = 0; s < 4; s++) ring_arc = std::max(ring_arc, x.strands[s]);
            ring_comp = d.component_of_arc(ring_arc + 1);
        }
        std::vector<Coefficient> coeffs(d.component_count());
        for (int i = 0; i < d.component_count(); i++) {
            if (coin(rng)) {
                coeffs[i] = UNFILLED;
                continue;
            }
            long long p = slope_p(rng), q = slope_q(rng);
            if (p == 0 && q == 0) p = 1;
            long long g = std::gcd(p < 0 ? -p : p, q);
            if (g > 1) {
                p /= g;
                q /= g;
            }
            coeffs[i] = Slope(p, q);
        }
        if (!coeffs[ring_comp]) coeffs[ring_comp] = Slope(1, 1);  // ring must be filled
        return RandomCase{FramedLink(d, coeffs), ring_comp};
    }
}

}  // namespace

TEST_CASE("linking matrix basics") {
    FramedLink zero_unknot = filled(unknot_kink(), {"0/1"});
    LinkingMatrix m = linking_matrix(zero_unknot);
    CHECK(m.n == 1);

    FramedLink hopf = filled(hopf_positive(), {"0/1", "0/1"});
    LinkingMatrix mh = linking_matrix(hopf);
    CHECK(mh.lk[0][1] == 1);
    CHECK(mh.lk[1][0] == 1);

    FramedLink w = filled(whitehead(), {"*", "*"});
    CHECK(linking_matrix(w).lk[0][1] == 0);
}

TEST_CASE("first homology of basic surgeries") {
    // unknot p/q -> Z/|p|
    for (long long p = -20; p <= 20; p++)
        for (long long q = 0; q <= 5; q++) {
            if (p == 0 && q == 0) continue;
            if (!Slope::coprime(p, q)) continue;
            FramedLink fl = filled(unknot_kink(), {Slope(p, q).str()});
            AbelianGroup g = first_homology(fl);
            if (p == 0) {
                CHECK(g.str() == "Z");
            } else if (p == 1 || p == -1) {
                CHECK(g.is_trivial());
            } else {
                REQUIRE(g.torsion.size() == 1);
                CHECK(g.torsion[0] == (p < 0 ? -p : p));
            }
        }

    CHECK(first_homology(filled(trefoil(), {"1/1"})).is_trivial());
    CHECK(first_homology(filled(hopf_positive(), {"0/1", "0/1"})).is_trivial());
    CHECK(first_homology(filled(unknot(), {"*"})).str() == "Z");
    // empty filling set: free of rank = components
    CHECK(first_homology(filled(whitehead(), {"*", "*"})).free_rank == 2);
}

TEST_CASE("lbar homology fixtures") {
    // (0 on pattern, -1/n on gamma, unfilled mu, 0 on B), n = 0..5.
    LinkDiagram boxed = lbar_twistbox();
    for (int n = 0; n <= 5; n++) {
        FramedLink via_gamma = filled(lbar(), {"0/1", "-1/" + std::to_string(n), "*", "0/1"});
        AbelianGroup g1 = first_homology(via_gamma);
        LinkDiagram inst = boxed.instantiate_twists("gamma", n);
        FramedLink via_box = filled(inst, {"0/1", "*", "0/1"});
        AbelianGroup g2 = first_homology(via_box);
        CHECK(g1 == g2);
        CHECK(g1.str() == "Z");  // regression pin
    }
}

TEST_CASE("rolfsen twist examples") {
    // u = ring with slope -1/1 around two parallel strands of one component,
    // |lk(u,K)| = 2, K filled 0/1: the twist moves K to -4/1 and one positive
    // twist removes u.
    LinkDiagram tref = trefoil();
    LinkDiagram ringed;
    int ring_comp = -1;
    {
        bool built = false;
        for (const auto& face : tref.faces()) {
            for (size_t i = 0; i < face.size() && !built; i++)
                for (size_t j = i + 1; j < face.size() && !built; j++) {
                    if (face[i].arc == face[j].arc) continue;
                    bool parallel = face[i].forward != face[j].forward;
                    if (!parallel) continue;
                    try {
                        LinkDiagram cand =
                            encircle(tref, {{face[i].arc, true}, {face[j].arc, true}});
                        if (!cand.validate().warnings.empty()) continue;
                        int m = 0;
                        for (const Crossing& x : tref.crossings())
                            for (int s = 0; s < 4; s++) m = std::max(m, x.strands[s]);
                        int rc = cand.component_of_arc(m + 1);
                        if (std::abs(cand.linking_number(rc, 1 - rc)) != 2) continue;
                        ringed = cand;
                        ring_comp = rc;
                        built = true;
                    } catch (const std::exception&) {
                    }
                }
            if (built) break;
        }
        REQUIRE(built);
    }
    REQUIRE(ringed.component_count() == 2);
    int kc = 1 - ring_comp;

    std::vector<Coefficient> coeffs(2);
    coeffs[ring_comp] = Slope(-1, 1);
    coeffs[kc] = Slope(0, 1);
    FramedLink fl(ringed, coeffs);
    AbelianGroup before = first_homology(fl);

    // +1 twist kills the -1 coefficient; K picks up t*q*lk^2 = +4.
    FramedLink after = rolfsen_twist(fl, ring_comp, +1);
    CHECK(after.component_count() == 1);
    CHECK(*after.coefficients[0] == Slope(4, 1));
    CHECK(first_homology(after) == before);

    // u at 1/0 is deleted with no other change
    coeffs[ring_comp] = Slope(1, 0);
    FramedLink triv(ringed, coeffs);
    FramedLink gone = rolfsen_twist(triv, ring_comp, +1);
    CHECK(gone.component_count() == 1);
    CHECK(*gone.coefficients[0] == Slope(0, 1));

    // errors
    coeffs[ring_comp] = UNFILLED;
    CHECK_THROWS_AS(rolfsen_twist(FramedLink(ringed, coeffs), ring_comp, 1), SemanticError);
    coeffs[ring_comp] = Slope(-1, 1);
    CHECK_THROWS_AS(rolfsen_twist(FramedLink(ringed, coeffs), kc, 1), SemanticError);
}

TEST_CASE("gamma elimination matches the twist box family") {
    // -1/n on gamma: n positive twists walk the slope to 1/0 and delete it.
    for (int n = 1; n <= 5; n++) {
        FramedLink fl = filled(lbar(), {"0/1", "-1/" + std::to_string(n), "*", "0/1"});
        AbelianGroup g0 = first_homology(fl);
        FramedLink cur = fl;
        for (int step = 0; step < n; step++) cur = rolfsen_twist(cur, 1, +1);
        CHECK(cur.component_count() == 3);
        AbelianGroup g = first_homology(cur);
        CHECK(g == g0);

        LinkDiagram inst = lbar_twistbox().instantiate_twists("gamma", n);
        CHECK(first_homology(filled(inst, {"0/1", "*", "0/1"})) == g);
    }
}

TEST_CASE("homology invariance properties, randomized") {
    std::mt19937 rng(20250809);
    int cases = 0;
    while (cases < 220) {
        RandomCase rc = random_framed_link(rng);
        AbelianGroup g = first_homology(rc.fl);

        // orientation reversal of a random component
        int comp = int(rng() % rc.fl.component_count());
        FramedLink rev(rc.fl.diagram.reverse_component(comp), rc.fl.coefficients);
        CHECK(first_homology(rev) == g);

        // rolfsen twist on the marked ring
        int t = (rng() % 2) ? 1 : -1;
        try {
            FramedLink tw = rolfsen_twist(rc.fl, rc.ring_comp, t);
            CHECK(first_homology(tw) == g);
        } catch (const SemanticError&) {
            continue;  // ring pattern unsuitable - draw another case
        }
        cases++;
    }
}

TEST_CASE("core homotopy certificate") {
    FramedLink fl = filled(lbar(), {"*", "*", "*", "0/1"});
    // target = pattern knot (0), core = B (3), meridian = mu (2)
    CoreHomotopyClass c = core_homotopy_class(fl, 0, 3, 2);
    CHECK(c.a == 1);
    CHECK(c.b == 1);
    CHECK(c.is_core);

    // split unknot target: (0, 0, false)
    LinkDiagram with_split(lbar().crossings(), {}, {100}, "");
    REQUIRE(with_split.component_count() == 5);
    int split_comp = with_split.component_of_arc(100);
    std::vector<Coefficient> coeffs(5);
    FramedLink fs(with_split, coeffs);
    CoreHomotopyClass c2 = core_homotopy_class(fs, split_comp, 3, 2);
    CHECK(c2.a == 0);
    CHECK(c2.b == 0);
    CHECK(!c2.is_core);

    CHECK_THROWS_AS(core_homotopy_class(fl, 0, 0, 2), SemanticError);
}

TEST_CASE("jsj assembly validation") {
    JSJPiece hyp{"piece", 2.0299, 1};
    JSJPiece sf{"seifert", std::nullopt, 2};
    CHECK_NOTHROW(assemble({hyp}, {}));
    TorusGluing g;
    g.piece_a = 0;
    g.torus_a = 0;
    g.piece_b = 1;
    g.torus_b = 0;
    CHECK_NOTHROW(assemble({hyp, sf}, {g}));
    TorusGluing bad = g;
    bad.h1_map = {{{2, 0}, {0, 1}}};
    CHECK_THROWS_AS(assemble({hyp, sf}, {bad}), SemanticError);
    CHECK_THROWS_AS(assemble({hyp, sf}, {g, g}), SemanticError);
    TorusGluing missing = g;
    missing.piece_b = 7;
    CHECK_THROWS_AS(assemble({hyp, sf}, {missing}), SemanticError);
}

TEST_CASE("distinct by volume") {
    auto asm1 = assemble({{"a", 2.0299, 1}}, {});
    auto asm2 = assemble({{"a", 2.0299, 1}}, {});
    CHECK(distinct_by_volume(asm1, asm2, 1e-6) == Verdict::INCONCLUSIVE);

    auto asm3 = assemble({{"mk", 5.0, 1}, {"x", 29.6209311377130, 2}}, {});
    auto asm4 = assemble({{"mk", 5.0, 1}, {"y", 30.3314052251137, 2}}, {});
    CHECK(distinct_by_volume(asm3, asm4, 1e-6) == Verdict::DISTINCT);
    CHECK(distinct_by_volume(asm4, asm3, 1e-6) == Verdict::DISTINCT);

    auto asm5 = assemble({{"a", 2.0299, 1}, {"b", 3.6639, 1}}, {});
    CHECK(distinct_by_volume(asm1, asm5, 1e-6) == Verdict::DISTINCT);

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> vol(1.0, 30.0);
    for (int i = 0; i < 100; i++) {
        int n = 1 + int(rng() % 4);
        std::vector<JSJPiece> p1, p2;
        for (int j = 0; j < n; j++) {
            double v = vol(rng);
            p1.push_back({"p", v, 1});
            p2.push_back({"p", v, 1});
        }
        auto a1 = assemble(p1, {});
        std::shuffle(p2.begin(), p2.end(), rng);
        auto a2 = assemble(p2, {});
        CHECK(distinct_by_volume(a1, a2, 1e-9) == Verdict::INCONCLUSIVE);
        p2[0].volume = *p2[0].volume + 1e-3;
        auto a3 = assemble(p2, {});
        CHECK(distinct_by_volume(a1, a3, 1e-6) == Verdict::DISTINCT);
    }
}
