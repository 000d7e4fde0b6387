#include "doctest.h"

#include <random>
#include <set>

#include "surgerylab/builders.hpp"
#include "surgerylab/pd.hpp"

using namespace surgerylab;

TEST_CASE("parse hopf link") {
    LinkDiagram d = LinkDiagram::parse("PD[X[1,4,2,3],X[3,2,4,1]]");
    CHECK(d.component_count() == 2);
    CHECK(d.crossings().size() == 2);
    CHECK(d.arc_count() == 4);
}

TEST_CASE("parse crossingless loop") {
    LinkDiagram d = LinkDiagram::parse("PD[O[1]]");
    CHECK(d.component_count() == 1);
    CHECK(d.crossings().empty());
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(LinkDiagram::parse("PD[X[1,2,3]]"), ParseError);
    CHECK_THROWS_AS(LinkDiagram::parse("PD[Y[1,2,3,4]]"), ParseError);
    CHECK_THROWS_AS(LinkDiagram::parse("PD[X[1,4,2,3],X[3,2,4,2]]"), ParseError);  // arc 2 thrice
    CHECK_THROWS_AS(LinkDiagram::parse("PD[X[1,3,2,4],X[1,4,2,3]]"), ParseError);  // arc 1: two heads
    CHECK_THROWS_AS(LinkDiagram::parse("garbage"), ParseError);
}

TEST_CASE("linking numbers") {
    LinkDiagram hopf = hopf_positive();
    CHECK(hopf.component_count() == 2);
    CHECK(hopf.linking_number(0, 1) == 1);
    CHECK(hopf.linking_number(1, 0) == 1);
    CHECK_THROWS_AS(hopf.linking_number(0, 0), SemanticError);

    LinkDiagram unlink = LinkDiagram::parse("PD[O[1],O[2]]");
    CHECK(unlink.linking_number(0, 1) == 0);

    LinkDiagram w = whitehead();
    CHECK(w.component_count() == 2);
    CHECK(w.linking_number(0, 1) == 0);
    CHECK(w.crossings().size() == 6);
}

TEST_CASE("writhe") {
    CHECK(unknot().component_count() == 1);
    CHECK(trefoil().writhe(0) == 3);
    CHECK(figure_eight().writhe(0) == 0);
    CHECK(unknot_kink().writhe(0) == 1);
    CHECK(clasped_unknot().writhe(0) == 2);
}

TEST_CASE("reverse component") {
    LinkDiagram hopf = hopf_positive();
    LinkDiagram r = hopf.reverse_component(0);
    CHECK(r.linking_number(0, 1) == -1);
    LinkDiagram rr = r.reverse_component(0);
    CHECK(rr.structurally_equal(hopf));

    LinkDiagram w = whitehead();
    CHECK(w.reverse_component(0).linking_number(0, 1) == 0);
    CHECK(w.reverse_component(1).linking_number(0, 1) == 0);

    // writhe is orientation independent
    CHECK(trefoil().reverse_component(0).writhe(0) == 3);
}

TEST_CASE("twist box instantiation on the hopf link") {
    LinkDiagram hopf = hopf_positive();
    // find two arcs of distinct components that cobound a face
    int arc_a = hopf.components()[0].front();
    int arc_b = -1;
    for (const auto& face : hopf.faces()) {
        std::set<int> comps;
        int cand = -1;
        bool has_a = false;
        for (const auto& side : face) {
            if (side.arc == arc_a) has_a = true;
            if (hopf.component_of_arc(side.arc) == 1) cand = side.arc;
        }
        if (has_a && cand >= 0) {
            arc_b = cand;
            break;
        }
    }
    REQUIRE(arc_b >= 0);
    LinkDiagram boxed(hopf.crossings(), {{"t", arc_a, arc_b, +1}}, {}, "");
    CHECK_THROWS_AS(boxed.linking_number(0, 1), SemanticError);  // boxes must instantiate first
    CHECK_THROWS_AS(boxed.instantiate_twists("nope", 1), SemanticError);

    LinkDiagram plus = boxed.instantiate_twists("t", 1);
    CHECK(plus.crossings().size() == 4);
    CHECK(plus.linking_number(0, 1) == 2);

    LinkDiagram minus = boxed.instantiate_twists("t", -1);
    CHECK(minus.crossings().size() == 4);
    CHECK(minus.linking_number(0, 1) == 0);

    LinkDiagram zero = boxed.instantiate_twists("t", 0);
    CHECK(zero.structurally_equal(hopf));
}

TEST_CASE("clasp twist box on a single arc") {
    LinkDiagram d = lbar_twistbox();
    CHECK(d.has_twist_boxes());
    CHECK(d.component_count() == 3);
    LinkDiagram d1 = d.instantiate_twists("gamma", 1);
    CHECK(!d1.has_twist_boxes());
    CHECK(d1.crossings().size() == d.crossings().size() + 2);
    CHECK(d1.component_count() == 3);
    LinkDiagram d3 = d.instantiate_twists("gamma", -3);
    CHECK(d3.crossings().size() == d.crossings().size() + 6);
    CHECK(d3.component_count() == 3);
}

TEST_CASE("serialization round trip") {
    for (const LinkDiagram& d :
         {hopf_positive(), whitehead(), figure_eight(), lbar(), lbar_twistbox(),
          LinkDiagram::parse("PD[X[1,4,2,3],X[3,2,4,1],O[9]]")}) {
        LinkDiagram rt = LinkDiagram::parse(d.to_text());
        CHECK(rt.structurally_equal(d));
        CHECK(rt.component_count() == d.component_count());
        LinkDiagram rj = LinkDiagram::parse_json(d.to_json());
        CHECK(rj.structurally_equal(d));
        CHECK(rj.to_text() == d.to_text());
    }
}

TEST_CASE("faces satisfy Euler formula") {
    for (const LinkDiagram& d : {hopf_positive(), whitehead(), figure_eight(), borromean(),
                                 trefoil(), lbar()}) {
        int c = int(d.crossings().size());
        CHECK(int(d.faces().size()) == c + 2);
        CHECK(d.validate().warnings.empty());
    }
}

TEST_CASE("lbar structure") {
    LinkDiagram d = lbar();
    REQUIRE(d.component_count() == 4);
    // 0 = pattern knot, 1 = gamma, 2 = mu, 3 = B
    CHECK(d.linking_number(0, 1) == 0);   // gamma - pattern
    CHECK(d.linking_number(0, 2) == 1);   // mu - pattern
    CHECK(d.linking_number(0, 3) == 1);   // B - pattern
    CHECK(d.linking_number(2, 3) == 1);   // mu - B
    CHECK(d.linking_number(1, 2) == 0);
    CHECK(d.linking_number(1, 3) == 0);
    CHECK(d.validate().warnings.empty());
}

TEST_CASE("random braid closures are consistent") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> nstr(2, 4), len(1, 12), coin(0, 1);
    for (int trial = 0; trial < 100; trial++) {
        int k = nstr(rng);
        std::uniform_int_distribution<int> gen(1, k - 1);
        std::vector<int> word(len(rng));
        for (int& w : word) w = gen(rng) * (coin(rng) ? 1 : -1);
        LinkDiagram d = braid_closure(k, word);
        // lk symmetry and parse round trip
        for (int i = 0; i < d.component_count(); i++)
            for (int j = i + 1; j < d.component_count(); j++)
                CHECK(d.linking_number(i, j) == d.linking_number(j, i));
        CHECK(LinkDiagram::parse(d.to_text()).structurally_equal(d));
        CHECK(d.validate().warnings.empty());  // planar rotation system per piece
    }
}
