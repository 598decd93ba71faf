#include "doctest.h"

#include "treeflow/pbtree.hpp"
#include "treeflow/dyck.hpp"

using namespace treeflow;

TEST_CASE("pbtree basics") {
    PBTree u;
    CHECK(u.is_unit());
    CHECK(u.degree() == 0);
    CHECK(u.encode() == ".");
    PBTree v = PBTree::vertex();
    CHECK(v.degree() == 1);
    CHECK(v.encode() == "(. .)");
    CHECK(PBTree::parse("((. .) .)") == PBTree(v, u));
    CHECK_THROWS_AS(PBTree::parse("(. ."), ParseError);
}

TEST_CASE("enumeration is Catalan") {
    const std::size_t expected[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
    for (std::size_t n = 0; n <= 10; ++n) CHECK(enumerate_pbtrees(n).size() == expected[n]);
    CHECK(enumerate_pbtrees(0).at(0).is_unit());
    auto deg2 = enumerate_pbtrees(2);
    CHECK(deg2.size() == 2);
    CHECK(deg2[0].canopy() + deg2[1].canopy() == "-+");  // one of each
}

TEST_CASE("canopy variants") {
    PBTree v = PBTree::vertex();
    CHECK(v.canopy() == "");
    CHECK(v.full_canopy() == "-+");
    CHECK(v.left_completed_canopy() == "-");
    CHECK(v.right_completed_canopy() == "+");
    // left comb of degree 2 is a left child's right sibling: canopy "+"
    CHECK(PBTree(v, PBTree()).canopy() == "+");
    CHECK(PBTree(PBTree(), v).canopy() == "-");
    CHECK(left_comb(4).canopy() == "+++");
    CHECK(right_comb(4).canopy() == "---");
    CHECK_THROWS_AS(PBTree().canopy(), UnitTreeError);
    // the paper's 6-vertex example has canopy -++-+ and full canopy --++-++
    PBTree fig(PBTree(PBTree(PBTree(), v), PBTree()), PBTree(v, PBTree()));
    CHECK(fig.degree() == 6);
    CHECK(fig.canopy() == "-++-+");
    CHECK(fig.full_canopy() == "--++-++");
}

TEST_CASE("reversal") {
    for (std::size_t n = 0; n <= 6; ++n)
        for (const auto& t : enumerate_pbtrees(n)) {
            CHECK(t.reversal().reversal() == t);
            if (n >= 1) {
                // reversal flips letters and reverses the canopy
                std::string c = t.canopy(), rc = t.reversal().canopy();
                std::string expect;
                for (auto it = c.rbegin(); it != c.rend(); ++it)
                    expect += *it == '+' ? '-' : '+';
                CHECK(rc == expect);
            }
        }
    CHECK(right_comb(5).reversal() == left_comb(5));
}

TEST_CASE("full canopy caps") {
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& t : enumerate_pbtrees(n)) {
            std::string full = t.full_canopy();
            CHECK(full.size() == n + 1);
            CHECK(full.front() == '-');
            CHECK(full.back() == '+');
            CHECK(full == "-" + t.canopy() + "+");
        }
}

TEST_CASE("dyck validation and structure") {
    DyckPath p("UURR");
    CHECK(p.indecomposable_factors().size() == 1);
    CHECK(p.peaks() == 1);
    CHECK(p.matched_nonpeak_pairs() == 1);
    DyckPath q("URUR");
    CHECK(q.indecomposable_factors().size() == 2);
    CHECK(q.peaks() == 2);
    CHECK(q.matched_nonpeak_pairs() == 0);
    CHECK_THROWS_AS(DyckPath("UUR"), NotDyckError);
    CHECK_THROWS_AS(DyckPath("RU"), NotDyckError);
    CHECK_THROWS_AS(DyckPath("UX"), NotDyckError);
}

TEST_CASE("dyck enumeration") {
    for (std::size_t n = 0; n <= 8; ++n)
        CHECK(enumerate_dyck_paths(n).size() == static_cast<std::size_t>(catalan(n)));
    for (const auto& p : enumerate_dyck_paths(5)) {
        std::size_t total = 0;
        for (const auto& f : p.indecomposable_factors()) total += f.word().size();
        CHECK(total == 10);
        CHECK(p.peaks() + p.matched_nonpeak_pairs() == 5);
    }
}
