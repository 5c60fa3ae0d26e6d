#include <gtest/gtest.h>

#include "../support.hpp"
#include "limsketch/builders.hpp"
#include "limsketch/error.hpp"
#include "limsketch/serialize.hpp"

using namespace limsketch;

TEST(Json, ParseErrorsNameTheLocation) {
    try {
        parse_json_text("{\n  \"a\": [1 2]\n}", "inline");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("inline:2:"), std::string::npos) << e.what();
    }
    EXPECT_THROW(read_json_file(support::fixture("malformed.json")), InputError);
    EXPECT_THROW(read_json_file(support::fixture("does_not_exist.json")), InputError);
}

TEST(Json, CategoryRoundTrip) {
    for (const auto& name : builder_names()) {
        const auto k = build_sketch(name);
        const auto j = category_to_json(*k.base);
        const auto back = category_from_json(j);
        EXPECT_TRUE(*back == *k.base) << name;
    }
}

TEST(Json, CategoryRejectsUnknownFieldsAndBrokenLaws) {
    auto j = category_to_json(*sketch_iso_forcing().base);
    j["colour"] = "red";
    EXPECT_THROW(category_from_json(j), InputError);
    auto bad = parse_json_text(R"({"objects":["a"],"arrows":[{"id":"id_a","dom":"a","cod":"a"},
        {"id":"e","dom":"a","cod":"a"}],"identities":{"a":"id_a"},"compose":[]})", "t");
    EXPECT_THROW(category_from_json(bad), InputError);
}

TEST(Json, SketchRoundTrip) {
    for (const auto& name : builder_names()) {
        const auto k = build_sketch(name);
        const auto j = sketch_to_json(k);
        const auto back = sketch_from_json(j);
        EXPECT_TRUE(*back.base == *k.base);
        ASSERT_EQ(back.cones.size(), k.cones.size());
        for (std::size_t c = 0; c < k.cones.size(); ++c) {
            EXPECT_EQ(back.cones[c].name, k.cones[c].name);
            EXPECT_EQ(back.cones[c].peak, k.cones[c].peak);
            EXPECT_EQ(back.cones[c].legs, k.cones[c].legs);
        }
        EXPECT_EQ(sketch_to_json(back).dump(), j.dump());
    }
}

TEST(Json, SketchFixtureFile) {
    const auto k = sketch_from_json(read_json_file(support::fixture("two_cover_sheaf_sketch.json")));
    EXPECT_TRUE(validate_sketch(k).ok());
    EXPECT_TRUE(*k.base == *sketch_two_cover_sheaf().base);
}

TEST(Json, PresentationRoundTripAndBuilderReference) {
    const auto k = sketch_binary_product();
    const auto x = support::load(k, "binary_product_model.json");
    EXPECT_TRUE(is_model(x, k).is_model());
    const auto j = presentation_to_json(x, "binary_product");
    const auto back = presentation_from_json(j, k.base);
    EXPECT_TRUE(back == x);
    // Inline category form.
    const auto inline_j = presentation_to_json(x);
    EXPECT_TRUE(inline_j["category"].is_object());
    EXPECT_TRUE(presentation_from_json(inline_j, k.base) == x);
}

TEST(Json, PresentationRejectsMismatchAndUnknownField) {
    const auto k = sketch_iso_forcing();
    EXPECT_THROW(support::load(k, "unknown_field.json"), InputError);
    EXPECT_THROW(support::load(k, "binary_product.json"), InputError);
}

TEST(Json, NatTransRoundTrip) {
    const auto k = sketch_iso_forcing();
    const auto x = support::iso_input(k);
    const auto m = support::load(k, "iso_forcing_model.json");
    const auto f = nat_trans_from_json(read_json_file(support::fixture("iso_forcing_map.json")), x, m);
    EXPECT_EQ(f(0, 0), 1u);
    EXPECT_TRUE(nat_trans_from_json(nat_trans_to_json(x, m, f), x, m) == f);
    auto bad = nat_trans_to_json(x, m, f);
    bad["components"]["b"]["y"] = "nowhere";
    EXPECT_THROW(nat_trans_from_json(bad, x, m), InputError);
}

TEST(Json, TraceReportsAreDeterministic) {
    const auto k = sketch_binary_product();
    const auto x = support::product_input(k);
    ElimOptions o;
    o.mode = ElimMode::faithful;
    const auto a = elim_trace_to_json(reflect_elim(x, k, o)).dump();
    const auto b = elim_trace_to_json(reflect_elim(x, k, o)).dump();
    EXPECT_EQ(a, b);
    const auto j = parse_json_text(a, "trace");
    EXPECT_EQ(j["engine"], "elim");
    EXPECT_EQ(j["mode"], "faithful");
    EXPECT_EQ(j["verdict"], "converged");
    EXPECT_EQ(j["stages"][1]["rule2"], 8);
    EXPECT_EQ(kelly_trace_to_json(reflect_kelly(x, k))["engine"], "kelly");
}
