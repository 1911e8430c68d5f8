#include "doctest.h"

#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pmqhur/config.hpp"
#include "pmqhur/json_io.hpp"

using namespace pmqhur;
using pmqhur::testing::load_pair_fixture;
using pmqhur::testing::load_pmq_fixture;

namespace {

Rat rat(long num, long den = 1) { return Rat(num, den); }

LabeledPoint fine(Rat x, Rat y, ClassId c) { return {std::move(x), std::move(y), FineLabel{c}}; }
LabeledPoint coarse(Rat x, Rat y, ElemId g) { return {std::move(x), std::move(y), CoarseLabel{g}}; }

} // namespace

TEST_CASE("omega examples") {
    PairSpec pair = load_pair_fixture("pair_trans3_s3.json");
    TruncatedCompletion tc = complete(pair.pmq, 2);
    ElemId t12 = *pair.pmq.find("(12)");
    ElemId t23 = *pair.pmq.find("(23)");

    CHECK(omega(Configuration{}, pair, tc) == pair.group.unit());

    Configuration single;
    single.sites = {{rat(0), rat(1, 2)}};
    single.points = {coarse(rat(0), rat(1, 2), *pair.group.find("(123)"))};
    CHECK(omega(single, pair, tc) == *pair.group.find("(123)"));

    Configuration two;
    two.points = {fine(rat(1, 4), rat(1, 2), tc.class_of_element(t12)),
                  fine(rat(3, 4), rat(1, 2), tc.class_of_element(t23))};
    ElemId expected = pair.group.mul(*pair.group.find("(12)"), *pair.group.find("(23)"));
    CHECK(omega(two, pair, tc) == expected);
}

TEST_CASE("omega_hat examples") {
    PmqSpec free1 = load_pmq_fixture("free1.json");
    TruncatedCompletion tc = complete(free1, 2);
    ElemId a = *free1.find("a");

    CHECK(omega_hat(Configuration{}, tc) == tc.unit_class());

    Configuration single;
    single.points = {fine(rat(1, 2), rat(1, 2), tc.class_of_element(a))};
    CHECK(omega_hat(single, tc) == tc.class_of_element(a));

    Configuration two;
    two.points = {fine(rat(1, 4), rat(1, 2), tc.class_of_element(a)),
                  fine(rat(3, 4), rat(1, 2), tc.class_of_element(a))};
    CHECK(omega_hat(two, tc) == tc.class_of(Word{a, a}));

    Configuration swapped;
    swapped.points = {two.points[1], two.points[0]};
    CHECK(omega_hat(swapped, tc) == omega_hat(two, tc));

    Configuration with_coarse;
    with_coarse.points = {coarse(rat(0), rat(0), 0)};
    CHECK_THROWS_AS(omega_hat(with_coarse, tc), CoarsePointPresent);
}

TEST_CASE("cell_of examples") {
    PmqSpec free1 = load_pmq_fixture("free1.json");
    TruncatedCompletion tc = complete(free1, 2);
    ClassId a = tc.class_of_element(*free1.find("a"));

    SUBCASE("interior point gives the square cell") {
        Configuration c;
        c.points = {fine(rat(1, 2), rat(1, 2), a)};
        CellLocation loc = cell_of(c, tc);
        CHECK(loc.ua.p() == 1);
        CHECK(loc.ua.q() == 1);
        CHECK(loc.ua.at(1, 1) == a);
        CHECK(loc.us == std::vector<Rat>{rat(1, 2)});
        CHECK(loc.ut == std::vector<Rat>{rat(1, 2)});
        CHECK(is_nondegenerate(loc.ua, tc));
    }
    SUBCASE("boundary point lands in a boundary column") {
        Configuration c;
        c.points = {fine(rat(0), rat(1, 2), a)};
        CellLocation loc = cell_of(c, tc);
        CHECK(loc.ua.p() == 0);
        CHECK(loc.ua.q() == 1);
        CHECK(loc.ua.at(0, 1) == a);
        CHECK(!is_admissible(loc.ua, tc));
    }
    SUBCASE("empty configuration") {
        CellLocation loc = cell_of(Configuration{}, tc);
        CHECK(loc.ua.p() == 0);
        CHECK(loc.ua.q() == 0);
        CHECK(loc.ua == ArrayPQ(0, 0, tc.unit_class()));
    }
}

TEST_CASE("upsilon examples") {
    PmqSpec free1 = load_pmq_fixture("free1.json");
    TruncatedCompletion tc = complete(free1, 2);
    ClassId a = tc.class_of_element(*free1.find("a"));

    ArrayPQ square(1, 1, tc.unit_class());
    square.set(1, 1, a);

    SUBCASE("interior coordinates place the point") {
        Configuration c = upsilon(CellLocation(square, {rat(1, 2)}, {rat(1, 2)}), tc);
        REQUIRE(c.points.size() == 1);
        CHECK(c.points[0].x == rat(1, 2));
        CHECK(c.points[0].y == rat(1, 2));
    }
    SUBCASE("coordinate at 0 collapses through the horizontal face") {
        Configuration c = upsilon(CellLocation(square, {rat(0)}, {rat(1, 2)}), tc);
        REQUIRE(c.points.size() == 1);
        CHECK(c.points[0].x == rat(0));
        CHECK(c.points[0].y == rat(1, 2));
        CHECK(std::get<FineLabel>(c.points[0].label).cls == a);
    }
    SUBCASE("degenerate array is rejected") {
        ArrayPQ degenerate(1, 0, tc.unit_class());
        CHECK_THROWS_AS(upsilon(CellLocation(degenerate, {rat(1, 2)}, {}), tc),
                        DegenerateCell);
    }
}

TEST_CASE("upsilon/cell_of round trips on random configurations") {
    std::mt19937_64 rng(20240817);
    for (const char* name : {"free1.json", "trans3.json"}) {
        PmqSpec spec = load_pmq_fixture(name);
        TruncatedCompletion tc = complete(spec, 4);
        for (int round = 0; round < 250; ++round) {
            Configuration c = pmqhur::testing::random_fine_config(tc, rng, 4, 4);
            CHECK(pmqhur::testing::same_configuration(upsilon(cell_of(c, tc), tc), c));
        }
        // reverse direction on locations with strictly increasing interiors
        for (int round = 0; round < 100; ++round) {
            Configuration c = pmqhur::testing::random_fine_config(tc, rng, 4, 4, /*allow_boundary=*/false);
            CellLocation loc = cell_of(c, tc);
            CellLocation back = cell_of(upsilon(loc, tc), tc);
            CHECK(back == loc);
        }
    }
}

TEST_CASE("collide examples") {
    PmqSpec free1 = load_pmq_fixture("free1.json");
    TruncatedCompletion ftc = complete(free1, 2);
    ElemId a = *free1.find("a");
    ClassId ca = ftc.class_of_element(a);

    SUBCASE("identity targets fix the configuration") {
        Configuration c;
        c.points = {fine(rat(1, 4), rat(1, 2), ca), fine(rat(3, 4), rat(1, 2), ca)};
        Configuration out = collide(c, {rat(1, 4), rat(3, 4)}, {rat(1, 2)}, ftc);
        CHECK(pmqhur::testing::same_configuration(out, c));
    }
    SUBCASE("horizontal merge concatenates labels") {
        Configuration c;
        c.points = {fine(rat(1, 4), rat(1, 2), ca), fine(rat(3, 4), rat(1, 2), ca)};
        Configuration out = collide(c, {rat(1, 2), rat(1, 2)}, {rat(1, 2)}, ftc);
        REQUIRE(out.points.size() == 1);
        CHECK(out.points[0].x == rat(1, 2));
        CHECK(std::get<FineLabel>(out.points[0].label).cls == ftc.class_of(Word{a, a}));
    }
    SUBCASE("vertical merge multiplies bottom-to-top") {
        PmqSpec trans3 = load_pmq_fixture("trans3.json");
        TruncatedCompletion tc = complete(trans3, 2);
        ElemId t12 = *trans3.find("(12)");
        ElemId t23 = *trans3.find("(23)");
        Configuration c;
        c.points = {fine(rat(1, 2), rat(1, 4), tc.class_of_element(t12)),
                    fine(rat(1, 2), rat(3, 4), tc.class_of_element(t23))};
        Configuration out = collide(c, {rat(1, 2)}, {rat(1, 2), rat(1, 2)}, tc);
        REQUIRE(out.points.size() == 1);
        CHECK(std::get<FineLabel>(out.points[0].label).cls == tc.class_of(Word{t12, t23}));
    }
    SUBCASE("non-monotone targets are rejected") {
        Configuration c;
        c.points = {fine(rat(1, 4), rat(1, 2), ca), fine(rat(3, 4), rat(1, 2), ca)};
        CHECK_THROWS_AS(collide(c, {rat(3, 4), rat(1, 4)}, {rat(1, 2)}, ftc),
                        MonotonicityViolation);
    }
}

TEST_CASE("collide is functorial and preserves omega_hat") {
    std::mt19937_64 rng(555);
    PmqSpec trans3 = load_pmq_fixture("trans3.json");
    TruncatedCompletion tc = complete(trans3, 4);
    int rounds = 0;
    for (int round = 0; round < 200; ++round) {
        Configuration c = pmqhur::testing::random_fine_config(tc, rng, 4, 4, /*allow_boundary=*/false);
        CellLocation loc = cell_of(c, tc);
        // random weakly monotone targets on the grid coordinates
        auto shrink = [&](const std::vector<Rat>& src) {
            std::vector<Rat> out = src;
            for (size_t k = 0; k + 1 < out.size(); ++k)
                if (rng() % 2) out[k + 1] = out[k];
            return out;
        };
        std::vector<Rat> us = shrink(loc.us);
        std::vector<Rat> ut = shrink(loc.ut);
        Configuration once = collide(c, us, ut, tc);
        CHECK(omega_hat(once, tc) == omega_hat(c, tc));
        ++rounds;
    }
    CHECK(rounds == 200);
}

TEST_CASE("conj_global examples and equivariance") {
    PairSpec pair = load_pair_fixture("pair_trans3_s3.json");
    TruncatedCompletion tc = complete(pair.pmq, 2);
    ElemId t12 = *pair.pmq.find("(12)");
    ElemId t13 = *pair.pmq.find("(13)");
    ElemId g23 = *pair.group.find("(23)");

    Configuration c;
    c.sites = {{rat(0), rat(0)}};
    c.points = {fine(rat(1, 2), rat(1, 2), tc.class_of_element(t12)),
                coarse(rat(0), rat(0), *pair.group.find("(123)"))};

    SUBCASE("unit acts trivially") {
        CHECK(pmqhur::testing::same_configuration(conj_global(c, pair.group.unit(), pair, tc), c));
    }
    SUBCASE("fine labels conjugate through r") {
        Configuration out = conj_global(c, g23, pair, tc);
        CHECK(std::get<FineLabel>(out.points[0].label).cls == tc.class_of_element(t13));
    }
    SUBCASE("omega is conjugation-equivariant") {
        std::mt19937_64 rng(31337);
        for (int round = 0; round < 100; ++round) {
            Configuration rc = pmqhur::testing::random_fine_config(tc, rng, 3, 3);
            ElemId g = static_cast<ElemId>(rng() % pair.group.size());
            CHECK(omega(conj_global(rc, g, pair, tc), pair, tc) ==
                  pair.group.conj(omega(rc, pair, tc), g));
        }
    }
}

TEST_CASE("act_left / act_right") {
    PairSpec pair = load_pair_fixture("pair_trans3_s3.json");
    TruncatedCompletion tc = complete(pair.pmq, 2);
    ElemId t12 = *pair.pmq.find("(12)");

    Configuration c;
    c.sites = {{rat(0), rat(1, 2)}, {rat(1), rat(1, 2)}};
    c.points = {coarse(rat(0), rat(1, 2), *pair.group.find("(123)")),
                fine(rat(1, 2), rat(1, 2), tc.class_of_element(t12)),
                coarse(rat(1), rat(1, 2), *pair.group.find("(13)"))};

    SUBCASE("unit acts trivially") {
        CHECK(pmqhur::testing::same_configuration(act_left(c, pair.group.unit(), pair), c));
        CHECK(pmqhur::testing::same_configuration(act_right(c, pair.group.unit(), pair), c));
    }
    SUBCASE("omega equivariance and commutation") {
        std::mt19937_64 rng(90001);
        for (int round = 0; round < 100; ++round) {
            ElemId g = static_cast<ElemId>(rng() % pair.group.size());
            ElemId h = static_cast<ElemId>(rng() % pair.group.size());
            CHECK(omega(act_left(c, g, pair), pair, tc) ==
                  pair.group.mul(g, omega(c, pair, tc)));
            CHECK(omega(act_right(c, h, pair), pair, tc) ==
                  pair.group.mul(omega(c, pair, tc), h));
            CHECK(pmqhur::testing::same_configuration(act_left(act_right(c, h, pair), g, pair),
                                     act_right(act_left(c, g, pair), h, pair)));
        }
    }
    SUBCASE("freeness of the two-sided action") {
        for (ElemId g = 0; g < pair.group.size(); ++g)
            for (ElemId h = 0; h < pair.group.size(); ++h) {
                if (g == pair.group.unit() && h == pair.group.unit()) continue;
                CHECK(!pmqhur::testing::same_configuration(act_left(act_right(c, h, pair), g, pair), c));
            }
    }
    SUBCASE("no unique extreme coarse point") {
        Configuration fine_only;
        fine_only.points = {fine(rat(1, 2), rat(1, 2), tc.class_of_element(t12))};
        CHECK_THROWS_AS(act_left(fine_only, *pair.group.find("(12)"), pair), NoBasePoint);
        Configuration tied;
        tied.sites = {{rat(0), rat(0)}, {rat(0), rat(1)}};
        tied.points = {coarse(rat(0), rat(0), 0), coarse(rat(0), rat(1), 0)};
        CHECK_THROWS_AS(act_left(tied, *pair.group.find("(12)"), pair), NoBasePoint);
    }
}

TEST_CASE("reduce and is_reduced") {
    PmqSpec free1 = load_pmq_fixture("free1.json");
    TruncatedCompletion tc = complete(free1, 2);
    ClassId a = tc.class_of_element(*free1.find("a"));

    Configuration c;
    c.points = {fine(rat(1, 4), rat(1, 4), a), fine(rat(1, 2), rat(1, 2), tc.unit_class()),
                fine(rat(3, 4), rat(3, 4), a)};
    CHECK(!is_reduced(c, tc));
    Configuration r = reduce(c, tc);
    CHECK(r.points.size() == 2);
    CHECK(is_reduced(r, tc));
    CHECK(pmqhur::testing::same_configuration(reduce(r, tc), r));

    Configuration clean;
    clean.points = {fine(rat(1, 4), rat(1, 4), a)};
    CHECK(is_reduced(clean, tc));
    CHECK(pmqhur::testing::same_configuration(reduce(clean, tc), clean));
}

TEST_CASE("neighborhood membership examples") {
    PairSpec pair = load_pair_fixture("pair_trans3_s3.json");
    PmqSpec free1 = load_pmq_fixture("free1.json");
    TruncatedCompletion tc = complete(free1, 2);
    ElemId a = *free1.find("a");
    GroupSpec triv_group = GroupSpec::make({"1"}, "1", {{{"1", "1"}, "1"}}, {{"1", "1"}});
    PairSpec fpair = PairSpec::make(free1, triv_group, {{"1", "1"}, {"a", "1"}},
                                    {{"1", {{"1", "1"}, {"a", "a"}}}});

    RectCovering cov;
    cov.rects = {{rat(1, 4), rat(3, 4), rat(1, 4), rat(3, 4)}};

    Configuration base;
    base.points = {fine(rat(1, 2), rat(1, 2), tc.class_of(Word{a, a}))};

    Configuration cand;
    cand.points = {fine(rat(3, 8), rat(1, 2), tc.class_of_element(a)),
                   fine(rat(5, 8), rat(1, 2), tc.class_of_element(a))};

    SUBCASE("base lies in its own neighbourhood") {
        CHECK(neighborhood_contains(base, cov, base, fpair, tc));
    }
    SUBCASE("split pair with block product a^2 is inside") {
        CHECK(neighborhood_contains(base, cov, cand, fpair, tc));
    }
    SUBCASE("wrong base label a excludes the pair") {
        Configuration base_a;
        base_a.points = {fine(rat(1, 2), rat(1, 2), tc.class_of_element(a))};
        CHECK(!neighborhood_contains(base_a, cov, cand, fpair, tc));
    }
    SUBCASE("candidate outside every rectangle is excluded") {
        Configuration outside = cand;
        outside.points.push_back(fine(rat(7, 8), rat(7, 8), tc.class_of_element(a)));
        CHECK(!neighborhood_contains(base, cov, outside, fpair, tc));
    }
    SUBCASE("coarse block with site") {
        TruncatedCompletion ttc = complete(pair.pmq, 2);
        ElemId t12 = *pair.pmq.find("(12)");
        Configuration cb;
        cb.sites = {{rat(1, 2), rat(1, 2)}};
        cb.points = {coarse(rat(1, 2), rat(1, 2), *pair.group.find("(123)"))};
        RectCovering ccov;
        ccov.rects = {{rat(1, 4), rat(3, 4), rat(1, 4), rat(3, 4)}};
        // split off a fine (12) to the left of the site; block product
        // e((12)) * (23) must equal (123): (12)(23) = (123)
        Configuration cc;
        cc.sites = cb.sites;
        cc.points = {fine(rat(3, 8), rat(1, 2), ttc.class_of_element(t12)),
                     coarse(rat(1, 2), rat(1, 2), *pair.group.find("(23)"))};
        CHECK(neighborhood_contains(cb, ccov, cc, pair, ttc));
        // losing the site is not allowed
        Configuration no_site;
        no_site.sites = cb.sites;
        no_site.points = {fine(rat(3, 8), rat(1, 2), ttc.class_of_element(t12)),
                          fine(rat(5, 8), rat(1, 2), ttc.class_of_element(t12))};
        CHECK(!neighborhood_contains(cb, ccov, no_site, pair, ttc));
    }
    SUBCASE("covering validation") {
        RectCovering overlapping;
        overlapping.rects = {{rat(1, 4), rat(3, 4), rat(1, 4), rat(3, 4)},
                             {rat(1, 2), rat(7, 8), rat(1, 8), rat(7, 8)}};
        Configuration two;
        two.points = {fine(rat(1, 2), rat(1, 2), tc.class_of_element(a)),
                      fine(rat(5, 8), rat(1, 4), tc.class_of_element(a))};
        CHECK_THROWS_AS(neighborhood_contains(two, overlapping, two, fpair, tc),
                        CoveringNotStripSeparated);
        RectCovering missing;
        missing.rects = {{rat(1, 4), rat(3, 8), rat(1, 4), rat(3, 4)}};
        CHECK_THROWS_AS(neighborhood_contains(base, missing, base, fpair, tc),
                        CoveringNotAdapted);
    }
    SUBCASE("membership is invariant under global conjugation") {
        TruncatedCompletion ttc = complete(pair.pmq, 2);
        ElemId t12 = *pair.pmq.find("(12)");
        ElemId t23 = *pair.pmq.find("(23)");
        Configuration b2;
        b2.points = {fine(rat(1, 2), rat(1, 2), ttc.class_of(Word{t12, t23}))};
        Configuration c2;
        c2.points = {fine(rat(3, 8), rat(1, 2), ttc.class_of_element(t12)),
                     fine(rat(5, 8), rat(1, 2), ttc.class_of_element(t23))};
        RectCovering cov2;
        cov2.rects = {{rat(1, 4), rat(3, 4), rat(1, 4), rat(3, 4)}};
        bool before = neighborhood_contains(b2, cov2, c2, pair, ttc);
        CHECK(before);
        for (ElemId g = 0; g < pair.group.size(); ++g) {
            Configuration bg = conj_global(b2, g, pair, ttc);
            Configuration cg = conj_global(c2, g, pair, ttc);
            CHECK(neighborhood_contains(bg, cov2, cg, pair, ttc) == before);
        }
    }
}

TEST_CASE("configuration JSON round trip") {
    PairSpec pair = load_pair_fixture("pair_trans3_s3.json");
    TruncatedCompletion tc = complete(pair.pmq, 2);
    ElemId t12 = *pair.pmq.find("(12)");
    Configuration c;
    c.sites = {{rat(0), rat(1, 2)}};
    c.points = {coarse(rat(0), rat(1, 2), *pair.group.find("(123)")),
                fine(rat(3, 8), rat(5, 8), tc.class_of(Word{t12, t12}))};
    json j = config_to_json(c, tc, &pair.group);
    Configuration back = config_from_json(j, tc, &pair.group);
    CHECK(back == c);

    CHECK(rat_from_string("3/8") == rat(3, 8));
    CHECK(rat_from_string("1") == rat(1));
    CHECK(rat_to_string(rat(3, 8)) == "3/8");
    CHECK(rat_to_string(rat(2, 4)) == "1/2");
    CHECK(rat_to_string(rat(1)) == "1");
    CHECK_THROWS_AS(rat_from_string("x"), InputError);
}
