#include "doctest.h"

#include <algorithm>
#include <set>

#include "frog/lattice.hpp"

using namespace frog;

TEST_CASE("site construction and accessors") {
    Site a{3, -4};
    CHECK(a.dim == 2);
    CHECK(a[0] == 3);
    CHECK(a[1] == -4);
    CHECK(Site::zero(3).dim == 3);
    CHECK(Site::zero(3)[2] == 0);
    CHECK(unit_vector(4, 2)[2] == 1);
    CHECK(unit_vector(4, 2)[0] == 0);
}

TEST_CASE("site arithmetic and scaling") {
    Site a{1, 2}, b{-3, 5};
    Site s = a + b;
    CHECK(s == Site{-2, 7});
    CHECK(a - b == Site{4, -3});
    CHECK(a.scaled(-2) == Site{-2, -4});
    CHECK(a != b);
}

TEST_CASE("lexicographic order is strict and total on fixed dim") {
    Site a{0, 1}, b{1, 0}, c{0, 2};
    CHECK(a < b);
    CHECK(a < c);
    CHECK(!(b < a));
    CHECK(!(a < a));
}

TEST_CASE("norms and distances") {
    Site a{1, -2, 2};
    CHECK(l1_norm(a) == 5);
    CHECK(linf_norm(a) == 2);
    CHECK(l2_norm_sq(a) == 9);
    CHECK(l2_norm(a) == doctest::Approx(3.0));
    Site b{0, 0, 0};
    CHECK(l1_dist(a, b) == 5);
    CHECK(linf_dist(a, b) == 2);
    CHECK(l2_dist_sq(a, b) == 9);
}

TEST_CASE("lattice neighbors: 2d of them, unit L1 distance") {
    Site v{5, -1, 2};
    std::vector<Site> nb = lattice_neighbors(v);
    REQUIRE(nb.size() == 6);
    std::set<Site> uniq(nb.begin(), nb.end());
    CHECK(uniq.size() == 6);
    for (const Site& u : nb) CHECK(l1_dist(u, v) == 1);
}

TEST_CASE("star neighbors: 3^d - 1 of them, LInf distance 1, sorted") {
    Site v{0, 0};
    std::vector<Site> nb = star_neighbors(v);
    REQUIRE(nb.size() == 8);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    for (const Site& u : nb) {
        CHECK(linf_dist(u, v) == 1);
        CHECK(u != v);
    }
    CHECK(star_neighbors(Site::zero(3)).size() == 26);
}

TEST_CASE("box membership per norm") {
    Site c0 = Site::zero(2);
    Box linf{c0, 2, Norm::LInf};
    Box l1{c0, 2, Norm::L1};
    Box l2{c0, 2, Norm::L2};
    Site corner{2, 2};
    CHECK(linf.contains(corner));
    CHECK(!l1.contains(corner));   // l1 norm 4
    CHECK(!l2.contains(corner));   // l2 norm sqrt 8
    Site edge{2, 0};
    CHECK(linf.contains(edge));
    CHECK(l1.contains(edge));
    CHECK(l2.contains(edge));
    Site diag{1, 1};
    CHECK(l2.contains(diag));
}

TEST_CASE("box enumerate: lexicographic, count matches, all inside") {
    Box b{Site{1, -1}, 2, Norm::L1};
    std::vector<Site> sites = b.enumerate();
    CHECK(sites.size() == b.count());
    CHECK(sites.size() == l1_ball_count(2, 2));
    CHECK(std::is_sorted(sites.begin(), sites.end()));
    for (const Site& s : sites) CHECK(b.contains(s));
}

TEST_CASE("ball cardinalities match closed forms") {
    CHECK(linf_ball_count(2, 0) == 1);
    CHECK(linf_ball_count(2, 3) == 49);
    CHECK(linf_ball_count(3, 2) == 125);
    CHECK(l1_ball_count(2, 1) == 5);
    CHECK(l1_ball_count(2, 3) == 25);   // 2r^2 + 2r + 1
    CHECK(l1_ball_count(3, 1) == 7);
    CHECK(l1_ball_count(3, 2) == 25);
}

TEST_CASE("linf hull covers any-norm box") {
    Box l1{Site{3, 3}, 4, Norm::L1};
    Box hull = l1.linf_hull();
    CHECK(hull.norm == Norm::LInf);
    CHECK(hull.radius == 4);
    for (const Site& s : l1.enumerate()) CHECK(hull.contains(s));
}

TEST_CASE("site hash agrees with equality on a dense patch") {
    SiteHash h;
    Box b{Site::zero(2), 4, Norm::LInf};
    std::set<std::size_t> hashes;
    for (const Site& s : b.enumerate()) hashes.insert(h(s));
    // collisions allowed in principle; a dense collision set would signal
    // a broken mix
    CHECK(hashes.size() > 70);
    Site a{1, 2}, c{1, 2};
    CHECK(h(a) == h(c));
}

TEST_CASE("dimension guards") {
    CHECK_THROWS_AS(Site::zero(1), std::invalid_argument);
    CHECK_THROWS_AS(Site::zero(kMaxDim + 1), std::invalid_argument);
    CHECK_THROWS_AS((Site{4}), std::invalid_argument);  // one coordinate is below d = 2
    CHECK_THROWS_AS(unit_vector(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(unit_vector(2, -1), std::invalid_argument);
    CHECK(unit_vector(3, 1) == Site{0, 1, 0});
    // sites of unequal dimension never compare equal
    CHECK(Site::zero(2) != Site::zero(3));
}
