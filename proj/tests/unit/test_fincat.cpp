#include <gtest/gtest.h>

#include "limsketch/builders.hpp"
#include "limsketch/error.hpp"
#include "limsketch/fincat.hpp"

using namespace limsketch;

TEST(FinCategory, FreeCategoryOnSpanHasPathsAndIdentities) {
    auto c = free_category({"u", "v", "w"}, {{"i", "u", "w"}, {"j", "v", "w"}});
    EXPECT_TRUE(validate_category(*c).ok());
    EXPECT_EQ(c->object_count(), 3u);
    EXPECT_EQ(c->arrow_count(), 5u);
    EXPECT_EQ(c->hom("u", "w"), std::vector<std::string>{"i"});
    EXPECT_TRUE(c->hom("w", "u").empty());
    EXPECT_EQ(c->arrow_name(c->identity(c->object_index("v"))), "id_v");
}

TEST(FinCategory, FreeCategoryComposesPaths) {
    auto c = free_category({"x", "y", "z"}, {{"f", "x", "y"}, {"g", "y", "z"}});
    const auto gf = c->compose(c->arrow_index("g"), c->arrow_index("f"));
    ASSERT_TRUE(gf.has_value());
    EXPECT_EQ(c->arrow_name(*gf), "g.f");
    EXPECT_FALSE(c->compose(c->arrow_index("f"), c->arrow_index("g")).has_value());
    EXPECT_THROW(c->compose_checked(c->arrow_index("f"), c->arrow_index("g")), ConstructionError);
}

TEST(FinCategory, FreeCategoryRejectsCycles) {
    EXPECT_THROW(free_category({"x", "y"}, {{"f", "x", "y"}, {"g", "y", "x"}}), InputError);
}

TEST(FinCategory, ObjectsAndArrowsAreSortedByIdentifier) {
    auto c = discrete_category({"b", "a", "c"});
    EXPECT_EQ(c->objects(), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(c->object_index("c"), 2u);
}

TEST(FinCategory, UnknownAndDuplicateIdentifiersThrow) {
    EXPECT_THROW(FinCategory({"a", "a"}, {{"id_a", "a", "a"}}, {{"a", "id_a"}}, {}), InputError);
    EXPECT_THROW(FinCategory({"a"}, {{"f", "a", "b"}}, {}, {}), InputError);
    auto c = discrete_category({"a"});
    EXPECT_THROW(c->object_index("nope"), InputError);
    EXPECT_FALSE(c->find_arrow("nope").has_value());
}

TEST(FinCategory, ValidatorReportsMissingComposite) {
    // f: a -> b, g: b -> a with no entry for g o f.
    FinCategory c({"a", "b"},
                  {{"id_a", "a", "a"}, {"id_b", "b", "b"}, {"f", "a", "b"}, {"g", "b", "a"}},
                  {{"a", "id_a"}, {"b", "id_b"}},
                  {{"id_b", "f", "f"}, {"f", "id_a", "f"}, {"id_a", "g", "g"}, {"g", "id_b", "g"},
                   {"id_a", "id_a", "id_a"}, {"id_b", "id_b", "id_b"}});
    const auto r = validate_category(c);
    EXPECT_FALSE(r.ok());
    EXPECT_GE(r.count("missing-composite"), 2u);
}

TEST(FinCategory, ValidatorReportsUnitLawAndAssociativity) {
    // e: a -> a idempotent, but the table claims e o id = id.
    FinCategory bad_unit({"a"}, {{"e", "a", "a"}, {"id_a", "a", "a"}}, {{"a", "id_a"}},
                         {{"e", "e", "e"}, {"e", "id_a", "id_a"}, {"id_a", "e", "e"},
                          {"id_a", "id_a", "id_a"}});
    EXPECT_GE(validate_category(bad_unit).count("unit-law"), 1u);

    // Two endomorphisms with a non-associative table.
    FinCategory bad_assoc({"a"}, {{"id_a", "a", "a"}, {"p", "a", "a"}, {"q", "a", "a"}},
                          {{"a", "id_a"}},
                          {{"id_a", "id_a", "id_a"}, {"id_a", "p", "p"}, {"p", "id_a", "p"},
                           {"id_a", "q", "q"}, {"q", "id_a", "q"},
                           {"p", "p", "q"}, {"p", "q", "p"}, {"q", "p", "p"}, {"q", "q", "p"}});
    const auto r = validate_category(bad_assoc);
    EXPECT_GE(r.count("associativity"), 1u);
}

TEST(FinCategory, EqualityComparesStructure) {
    auto a = free_category({"x", "y"}, {{"f", "x", "y"}});
    auto b = free_category({"y", "x"}, {{"f", "x", "y"}});
    auto c = free_category({"x", "y"}, {{"g", "x", "y"}});
    EXPECT_TRUE(*a == *b);
    EXPECT_FALSE(*a == *c);
}

TEST(CatFunctor, IdentityAndInclusionAreFunctors) {
    auto c = free_category({"u", "v", "w"}, {{"i", "u", "w"}, {"j", "v", "w"}});
    EXPECT_TRUE(validate_functor(identity_functor(c)).ok());
    auto sheaf = sketch_two_cover_sheaf();
    EXPECT_TRUE(validate_functor(sheaf.cones[0].diagram).ok());
}

TEST(CatFunctor, ValidatorCatchesTypeAndCompositionErrors) {
    auto src = free_category({"x", "y"}, {{"f", "x", "y"}});
    auto tgt = free_category({"a", "b"}, {{"g", "a", "b"}});
    auto good = make_functor(src, tgt, {{"x", "a"}, {"y", "b"}},
                             {{"f", "g"}, {"id_x", "id_a"}, {"id_y", "id_b"}});
    EXPECT_TRUE(validate_functor(good).ok());
    auto bad = make_functor(src, tgt, {{"x", "a"}, {"y", "a"}},
                            {{"f", "g"}, {"id_x", "id_a"}, {"id_y", "id_a"}});
    EXPECT_FALSE(validate_functor(bad).ok());
    EXPECT_THROW(make_functor(src, tgt, {{"x", "zz"}}, {}), InputError);
}

TEST(Builders, MakeCategoryFillsIdentityComposites) {
    auto c = make_category({"a", "b"}, {{"f", "a", "b"}}, {});
    EXPECT_TRUE(validate_category(*c).ok());
    EXPECT_EQ(c->arrow_count(), 3u);
}
