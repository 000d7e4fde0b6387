#include "doctest.h"

#include <random>

#include "surgerylab/snf.hpp"

using namespace surgerylab;

TEST_CASE("smith form of small matrices") {
    IntMat a(2, 2);
    a.at(0, 0) = 2;
    a.at(0, 1) = 4;
    a.at(1, 0) = 4;
    a.at(1, 1) = 4;
    SmithResult s = smith_normal_form(a);
    auto f = s.invariant_factors();
    REQUIRE(f.size() == 2);
    CHECK(f[0] == 2);
    CHECK(f[1] == 4);
    CHECK(f[1] % f[0] == 0);
    CHECK(s.u.mul(a).mul(s.v) == s.d);
}

TEST_CASE("U A V = D with unimodular transforms, randomized") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> dim(1, 5), entry(-9, 9);
    for (int trial = 0; trial < 300; trial++) {
        int m = dim(rng), n = dim(rng);
        IntMat a(m, n);
        for (int i = 0; i < m; i++)
            for (int j = 0; j < n; j++) a.at(i, j) = entry(rng);
        SmithResult s = smith_normal_form(a);
        CHECK(s.u.mul(a).mul(s.v) == s.d);
        CHECK(det_abs(s.u) == 1);
        CHECK(det_abs(s.v) == 1);
        auto f = s.invariant_factors();
        for (size_t k = 1; k < f.size(); k++) CHECK(f[k] % f[k - 1] == 0);
        // off-diagonal zero
        for (int i = 0; i < m; i++)
            for (int j = 0; j < n; j++)
                if (i != j) CHECK(s.d.at(i, j) == 0);
    }
}

TEST_CASE("cokernel canonical form") {
    IntMat rel(1, 1);
    rel.at(0, 0) = 5;
    AbelianGroup g = cokernel(rel);
    CHECK(g.free_rank == 0);
    REQUIRE(g.torsion.size() == 1);
    CHECK(g.torsion[0] == 5);
    CHECK(g.str() == "Z/5");

    IntMat zero(1, 1);
    CHECK(cokernel(zero).str() == "Z");

    IntMat hopf(2, 2);
    hopf.at(0, 1) = 1;
    hopf.at(1, 0) = 1;
    CHECK(cokernel(hopf).is_trivial());

    IntMat none(0, 3);
    AbelianGroup free3 = cokernel(none);
    CHECK(free3.free_rank == 3);
    CHECK(free3.torsion.empty());
}
