#include <gtest/gtest.h>

#include <random>

#include "../oracles.hpp"
#include "../random_instances.hpp"
#include "limsketch/builders.hpp"
#include "limsketch/error.hpp"
#include "limsketch/setops.hpp"

using namespace limsketch;

namespace {

CategoryPtr span() { return free_category({"u", "v", "w"}, {{"i", "u", "w"}, {"j", "v", "w"}}); }

}  // namespace

TEST(SetPresentation, MakeFillsIdentitiesAndLooksUpNames) {
    auto c = free_category({"a", "b"}, {{"f", "a", "b"}});
    auto x = make_presentation(c, {{"a", {"1", "2"}}, {"b", {"z"}}}, {{"f", {{"1", "z"}, {"2", "z"}}}});
    EXPECT_TRUE(validate_presentation(x).ok());
    EXPECT_EQ(x.size(0), 2u);
    EXPECT_EQ(x.index_of(1, "z"), 0u);
    EXPECT_FALSE(x.find(0, "q").has_value());
    EXPECT_EQ(x.apply(c->identity(0), 1), 1u);
}

TEST(SetPresentation, BadInputsThrow) {
    auto c = free_category({"a", "b"}, {{"f", "a", "b"}});
    EXPECT_THROW(make_presentation(c, {{"a", {"1", "1"}}, {"b", {"z"}}}, {{"f", {{"1", "z"}}}}),
                 InputError);
    EXPECT_THROW(make_presentation(c, {{"a", {"1"}}, {"b", {"z"}}}, {}), InputError);
    EXPECT_THROW(make_presentation(c, {{"a", {"1"}}, {"b", {"z"}}}, {{"f", {{"1", "q"}}}}),
                 InputError);
}

TEST(SetPresentation, ValidatorCatchesBrokenComposition) {
    auto c = free_category({"x", "y", "z"}, {{"f", "x", "y"}, {"g", "y", "z"}});
    // g.f should be g after f; here it is not.
    std::vector<std::vector<std::string>> carriers{{"a"}, {"b1", "b2"}, {"c1", "c2"}};
    std::vector<std::vector<Elem>> actions(c->arrow_count());
    for (ArrowIx a = 0; a < c->arrow_count(); ++a) {
        actions[a].assign(carriers[c->dom(a)].size(), 0);
    }
    actions[c->arrow_index("g")] = {0, 0};
    actions[c->arrow_index("g.f")] = {1};
    for (ObjectIx o = 0; o < 3; ++o) {
        for (Elem e = 0; e < carriers[o].size(); ++e) actions[c->identity(o)][e] = e;
    }
    SetPresentation x(c, carriers, actions);
    EXPECT_FALSE(validate_presentation(x).ok());
}

TEST(Limits, PullbackOverSpan) {
    auto c = span();
    auto x = make_presentation(c, {{"u", {"0", "1", "2"}}, {"v", {"a", "b"}}, {"w", {"p", "q"}}},
                               {{"i", {{"0", "p"}, {"1", "q"}, {"2", "p"}}},
                                {"j", {{"a", "p"}, {"b", "q"}}}});
    const auto l = limit_of_diagram(x);
    // Components ordered by object index u, v, w.
    const std::vector<LimitTuple> expected{{0, 0, 0}, {1, 1, 1}, {2, 0, 0}};
    EXPECT_EQ(l.tuples, expected);
    ASSERT_TRUE(l.find({1, 1, 1}).has_value());
    EXPECT_FALSE(l.find({0, 1, 1}).has_value());
}

TEST(Limits, EmptyShapeHasOneTupleAndEmptyCarrierHasNone) {
    auto point = discrete_category({});
    auto x = make_presentation(point, {}, {});
    EXPECT_EQ(limit_of_diagram(x).size(), 1u);
    auto two = discrete_category({"1", "2"});
    auto y = make_presentation(two, {{"1", {"a"}}, {"2", {}}}, {});
    EXPECT_EQ(limit_of_diagram(y).size(), 0u);
}

TEST(Limits, TupleBudgetIsEnforced) {
    auto two = discrete_category({"1", "2"});
    std::vector<std::string> many;
    for (int i = 0; i < 50; ++i) many.push_back(std::to_string(i));
    auto x = make_presentation(two, {{"1", many}, {"2", many}}, {});
    LimitOptions opts;
    opts.max_product = 100;
    opts.context = "test";
    EXPECT_THROW(limit_of_diagram(x, opts), BudgetExceeded);
}

TEST(Limits, RandomInstancesMatchBruteForce) {
    std::mt19937 rng(7);
    for (int n = 0; n < 60; ++n) {
        auto c = randinst::random_dag_category(rng);
        auto x = randinst::random_presentation(rng, c, 8);
        ASSERT_TRUE(validate_presentation(x).ok());
        EXPECT_EQ(limit_of_diagram(x).tuples, oracle::limit_tuples(x)) << "instance " << n;
    }
}

TEST(Quotient, FunctorialClosurePropagatesAlongArrows) {
    auto c = free_category({"a", "b"}, {{"f", "a", "b"}});
    auto x = make_presentation(c, {{"a", {"1", "2", "3"}}, {"b", {"p", "q", "r"}}},
                               {{"f", {{"1", "p"}, {"2", "q"}, {"3", "r"}}}});
    PairList pairs(2);
    pairs[0].emplace_back(0, 1);
    const auto q = functorial_quotient(x, pairs);
    EXPECT_EQ(q.target.size(0), 2u);
    EXPECT_EQ(q.target.size(1), 2u);
    EXPECT_EQ(q.projection(1, 0), q.projection(1, 1));
    EXPECT_TRUE(validate_nat_trans(x, q.target, q.projection).ok());
    // Classes are named by their first member.
    EXPECT_EQ(q.target.name(1, 0), "p");
    EXPECT_EQ(q.classes[1][0], (std::vector<Elem>{0, 1}));
}

TEST(Quotient, RandomInstancesMatchMergePushOracle) {
    std::mt19937 rng(11);
    for (int n = 0; n < 60; ++n) {
        auto c = randinst::random_dag_category(rng);
        auto x = randinst::random_presentation(rng, c, 10);
        const auto pairs = randinst::random_pairs(rng, x);
        const auto q = functorial_quotient(x, pairs);
        EXPECT_EQ(oracle::partition_of(q), oracle::merge_push_quotient(x, pairs)) << "instance " << n;
        EXPECT_TRUE(validate_presentation(q.target).ok());
        EXPECT_TRUE(validate_nat_trans(x, q.target, q.projection).ok());
    }
}

TEST(Quotient, EmptyPairListIsIdentity) {
    std::mt19937 rng(3);
    auto c = randinst::random_dag_category(rng);
    auto x = randinst::random_presentation(rng, c, 6);
    const auto q = functorial_quotient(x, PairList(c->object_count()));
    EXPECT_TRUE(q.target == x);
    EXPECT_TRUE(q.projection == identity_nat(x));
}

TEST(Pushout, ClassesOfSimpleSpan) {
    // A = {0,1,2}; f into B = {0,1}, g into C = {0,1,2}.
    const auto p = pushout_classes({0, 0, 1}, 2, {0, 1, 2}, 3);
    EXPECT_EQ(p.class_count, 2u);
    EXPECT_EQ(p.class_of[0], p.class_of[2]);
    EXPECT_EQ(p.class_of[2], p.class_of[3]);
    EXPECT_EQ(p.class_of[1], p.class_of[4]);
    EXPECT_THROW(pushout_classes({0}, 1, {0, 1}, 2), InputError);
}

TEST(DisjointSum, LeftFirstWithPrefixes) {
    auto c = free_category({"a", "b"}, {{"f", "a", "b"}});
    auto x = make_presentation(c, {{"a", {"1"}}, {"b", {"z"}}}, {{"f", {{"1", "z"}}}});
    auto y = make_presentation(c, {{"a", {"1", "2"}}, {"b", {"z"}}}, {{"f", {{"1", "z"}, {"2", "z"}}}});
    const auto s = disjoint_sum(x, y);
    EXPECT_EQ(s.sum.size(0), 3u);
    EXPECT_EQ(s.sum.name(0, 0), "inl:1");
    EXPECT_EQ(s.sum.name(0, 2), "inr:2");
    EXPECT_EQ(s.sum.apply(c->arrow_index("f"), 2), 1u);
    EXPECT_TRUE(validate_nat_trans(x, s.sum, s.left).ok());
    EXPECT_TRUE(validate_nat_trans(y, s.sum, s.right).ok());
    EXPECT_THROW(disjoint_sum(x, y, {"", ""}), InputError);
}

TEST(NatTrans, CompositionAndBijectivity) {
    auto c = free_category({"a"}, {});
    auto x = make_presentation(c, {{"a", {"1", "2"}}}, {});
    NatTrans swap{{{1, 0}}};
    EXPECT_TRUE(compose_nat(swap, swap) == identity_nat(x));
    EXPECT_TRUE(is_bijective(swap, x));
    EXPECT_FALSE(is_bijective(NatTrans{{{0, 0}}}, x));
}

TEST(NatTrans, ValidatorReportsNaturalityFailure) {
    auto c = free_category({"a", "b"}, {{"f", "a", "b"}});
    auto x = make_presentation(c, {{"a", {"1"}}, {"b", {"z"}}}, {{"f", {{"1", "z"}}}});
    auto y = make_presentation(c, {{"a", {"1"}}, {"b", {"z", "w"}}}, {{"f", {{"1", "z"}}}});
    EXPECT_TRUE(validate_nat_trans(x, y, NatTrans{{{0}, {0}}}).ok());
    EXPECT_FALSE(validate_nat_trans(x, y, NatTrans{{{0}, {1}}}).ok());
}

TEST(Subpresentation, ClosedSubsetAndRejection) {
    auto c = free_category({"a", "b"}, {{"f", "a", "b"}});
    auto x = make_presentation(c, {{"a", {"1", "2"}}, {"b", {"p", "q"}}},
                               {{"f", {{"1", "p"}, {"2", "q"}}}});
    const auto s = subpresentation(x, {{0}, {0}});
    EXPECT_EQ(s.size(0), 1u);
    EXPECT_EQ(s.name(1, 0), "p");
    EXPECT_THROW(subpresentation(x, {{0}, {1}}), ConstructionError);
}

TEST(GapMap, ProductCone) {
    auto k = sketch_binary_product();
    auto x = make_presentation(k.base, {{"a", {"u", "v"}}, {"p", {"s"}}},
                               {{"pi1", {{"s", "u"}}}, {"pi2", {{"s", "v"}}}});
    const auto g = gap_map(x, k.cones[0]);
    EXPECT_EQ(g.limit.size(), 4u);
    ASSERT_EQ(g.image.size(), 1u);
    EXPECT_EQ(g.limit.tuples[g.image[0]], (LimitTuple{0, 1}));
}
