#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wbe/diagram.hpp"

using namespace wbe;

TEST_CASE("diagram invariants and parsing") {
    YoungDiagram d = YoungDiagram::parse("8,6,2,2");
    CHECK(d.box_count() == 18);
    CHECK(d.height() == 4);
    CHECK(d.width() == 8);
    CHECK(d.transpose().transpose() == d);
    CHECK(d.transpose().box_count() == 18);
    CHECK_THROWS_AS(YoungDiagram({1, 2}), std::domain_error);
    CHECK_THROWS_AS(YoungDiagram({2, 0}), std::domain_error);
}

TEST_CASE("hook lengths") {
    YoungDiagram d21({2, 1});
    CHECK(d21.hook_length(1, 1) == 3);
    CHECK(d21.hook_length(1, 2) == 1);
    CHECK(d21.hook_length(2, 1) == 1);
    CHECK_THROWS_AS(d21.hook_length(2, 2), std::domain_error);

    // arm 7 + leg 3 + 1 (consistent with the 2148120 tableau count below)
    YoungDiagram big({8, 6, 2, 2});
    CHECK(big.hook_length(1, 1) == 11);
}

TEST_CASE("syt counts") {
    CHECK(syt_count(YoungDiagram({2, 1})) == 2);
    CHECK(syt_count(YoungDiagram({7})) == 1);
    CHECK(syt_count(YoungDiagram({8, 6, 2, 2})) == 2148120);
    CHECK(syt_count(YoungDiagram({2, 2})) == 2);
}

TEST_CASE("syt enumeration order and completeness") {
    auto ts = all_syt(YoungDiagram({1, 1}));
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].str() == "1;2");

    ts = all_syt(YoungDiagram({2, 1}));
    REQUIRE(ts.size() == 2);
    CHECK(ts[0].str() == "1,2;3");
    CHECK(ts[1].str() == "1,3;2");

    CHECK(all_syt(YoungDiagram({2, 2})).size() == 2);

    // count == stream length, lexicographic row words, all distinct
    for (const auto& shape : all_shapes(6)) {
        auto all = all_syt(shape);
        CHECK(mpz_class(static_cast<long>(all.size())) == syt_count(shape));
        for (size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].row_word() < all[i].row_word());
    }
}

TEST_CASE("tableau parse, remove largest") {
    StandardTableau t = StandardTableau::parse("1,2,4;3,6;5");
    CHECK(t.shape() == YoungDiagram({3, 2, 1}));
    CHECK(t.entry(2, 2) == 6);
    StandardTableau r = t.remove_largest();
    CHECK(r.shape() == YoungDiagram({3, 1, 1}));
    CHECK_THROWS_AS(StandardTableau::parse("1,3;2,2"), std::domain_error);
    CHECK_THROWS_AS(StandardTableau::parse("2,1;3"), std::domain_error);

    // removal chain stays valid all the way down for every SYT of a shape
    for (const auto& tab : all_syt(YoungDiagram({3, 2, 2}))) {
        StandardTableau cur = tab;
        while (cur.shape().box_count() > 1) cur = cur.remove_largest();
    }
}

TEST_CASE("node degrees") {
    YoungDiagram d({8, 6, 2, 2});
    CHECK(d.node_degree(1, 0) == 10);
    CHECK(d.node_degree(0, 1) == 14);
    CHECK(d.node_degree(0, 0) == 18);
    CHECK(d.node_degree(2, 0) == 4);
    CHECK(d.node_degree(3, 0) == 2);
    CHECK(d.node_degree(1, 1) == 7);
    CHECK(d.node_degree(1, 2) == 4);
    CHECK(d.node_degree(9, 3) == 0);

    // degree-difference/hook relation on every inner node
    for (const auto& shape : all_shapes(7)) {
        for (long a = 0; a < shape.height(); ++a)
            for (long s = 0; s < shape.width(); ++s)
                if (shape.contains_box(a + 1, s + 1))
                    CHECK(shape.node_degree(a, s) - shape.node_degree(a + 1, s + 1) ==
                          shape.hook_length(a + 1, s + 1));
    }
}

TEST_CASE("transpose symmetry of counts") {
    for (const auto& shape : all_shapes(8))
        CHECK(syt_count(shape) == syt_count(shape.transpose()));
}

TEST_CASE("hook degree ladder") {
    HookDegreeLadder lad = hook_degree_ladder(YoungDiagram({2, 1}), 2);
    CHECK(lad.deg_b == std::vector<long>{3, 1});
    CHECK(lad.d == std::vector<long>{0, 2});

    lad = hook_degree_ladder(YoungDiagram({1}), 1);
    CHECK(lad.deg_b == std::vector<long>{1});
    CHECK(lad.d == std::vector<long>{0});

    // single column of height m: deg B_a = m - a + 1, d = (0)
    lad = hook_degree_ladder(YoungDiagram({1, 1, 1, 1}), 4);
    CHECK(lad.deg_b == std::vector<long>{4, 3, 2, 1});
    CHECK(lad.d == std::vector<long>{0});

    // padding above the diagram height is allowed
    lad = hook_degree_ladder(YoungDiagram({2, 1}), 3);
    CHECK(lad.deg_b == std::vector<long>{4, 2, 0});
    CHECK(lad.d == std::vector<long>{1, 3});
    CHECK_THROWS_AS(hook_degree_ladder(YoungDiagram({2, 1}), 1), std::domain_error);

    // all m+n degrees pairwise distinct, for many shapes
    for (const auto& shape : all_shapes(8)) {
        auto l = hook_degree_ladder(shape, shape.height());
        std::vector<long> all = l.deg_b;
        all.insert(all.end(), l.d.begin(), l.d.end());
        std::sort(all.begin(), all.end());
        for (size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
        CHECK(all.back() == l.m + l.n - 1);
        CHECK(all.front() == 0);
    }
}

TEST_CASE("weight dimensions") {
    CHECK(weight_dimension(FundamentalWeight::parse("2,1,0")) == 3);
    CHECK(weight_dimension(FundamentalWeight::parse("2|1")) == 3);
    CHECK(shape_dimension(YoungDiagram({2, 1})) == 2);
    CHECK(weight_dimension(FundamentalWeight::parse("1,1")) == 2);
}

TEST_CASE("shifted weights") {
    auto sw = shifted_weights(YoungDiagram({2, 1}), MarkedPoint{3, 0});
    CHECK(sw.lambda_hat == std::vector<long>{4, 2, 0});
    CHECK(sw.nu_hat.empty());

    sw = shifted_weights(YoungDiagram({2, 1}), MarkedPoint{1, 1});
    CHECK(sw.lambda_hat == std::vector<long>{1});
    CHECK(sw.nu_hat == std::vector<long>{1});

    sw = shifted_weights(YoungDiagram(), MarkedPoint{0, 0});
    CHECK(sw.lambda_hat.empty());
    CHECK(sw.nu_hat.empty());

    // diagonal reduction: (2,1) inside gl(2|2) reduces to gl(1|1)
    sw = shifted_weights(YoungDiagram({2, 1}), MarkedPoint{2, 2});
    CHECK(sw.r == 1);
    CHECK(sw.lambda_hat == std::vector<long>{1});
    CHECK(sw.nu_hat == std::vector<long>{1});
}

TEST_CASE("highest weight of shape") {
    FundamentalWeight w = highest_weight_of_shape(YoungDiagram({2, 1}), 2, 0);
    CHECK(w.lambdas == std::vector<long>{2, 1});
    w = highest_weight_of_shape(YoungDiagram({2, 1}), 1, 1);
    CHECK(w.lambdas == std::vector<long>{2});
    CHECK(w.nus == std::vector<long>{1});
    CHECK_THROWS_AS(highest_weight_of_shape(YoungDiagram({2, 2}), 1, 1), std::domain_error);
}

TEST_CASE("weight and shape generators") {
    auto ws = all_weights(2, 0, 3);
    CHECK(ws.size() == 4);
    mpz_class total = 0;
    for (const auto& w : ws) total += weight_dimension(w);
    CHECK(total == 8);  // 2^3

    auto shapes = all_shapes(4, 2);
    CHECK(shapes.size() == 3);  // (4), (3,1), (2,2)
}
