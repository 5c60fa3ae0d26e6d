#include <gtest/gtest.h>

#include "../oracles.hpp"
#include "../support.hpp"
#include "limsketch/builders.hpp"
#include "limsketch/error.hpp"
#include "limsketch/universal.hpp"

using namespace limsketch;

namespace {

// Values of g on the core forced by g o rho = f; -1 where unconstrained.
// Returns nullopt when rho identifies elements that f separates.
std::optional<std::vector<std::vector<Elem>>> forced_values(const SetPresentation& core,
                                                            const NatTrans& rho, const NatTrans& f) {
    std::vector<std::vector<Elem>> out(core.base().object_count());
    for (ObjectIx o = 0; o < out.size(); ++o) {
        out[o].assign(core.size(o), static_cast<Elem>(-1));
        for (Elem e = 0; e < rho.components[o].size(); ++e) {
            auto& slot = out[o][rho(o, e)];
            if (slot != static_cast<Elem>(-1) && slot != f(o, e)) return std::nullopt;
            slot = f(o, e);
        }
    }
    return out;
}

void check_family(const LimitSketch& k, const SetPresentation& x,
                  const std::vector<SetPresentation>& models, std::size_t& triples) {
    const auto elim = reflect_elim(x, k);
    const auto kelly = reflect_kelly(x, k);
    ASSERT_TRUE(elim.converged);
    ASSERT_TRUE(kelly.converged);
    for (const auto& m : models) {
        ASSERT_TRUE(is_model(m, k).is_model());
        const auto maps = enumerate_nat_trans(x, m, 1'000'000);
        ASSERT_TRUE(maps.conclusive);
        for (const auto& f : maps.found) {
            const auto r = solve_factorisation(elim, f, m, k);
            EXPECT_TRUE(r.natural);
            EXPECT_TRUE(r.commutes);
            EXPECT_TRUE(compose_nat(r.g, elim.rho) == f);
            const auto rk = solve_factorisation(kelly, f, m, k);
            EXPECT_TRUE(rk.natural && rk.commutes);

            const auto u = check_uniqueness(elim, f, m, 1'000'000);
            EXPECT_EQ(u.verdict, Uniqueness::unique);
            const auto forced = forced_values(elim.core, elim.rho, f);
            ASSERT_TRUE(forced.has_value());
            EXPECT_EQ(oracle::count_nat_trans(elim.core, m, *forced), 1u);
            ++triples;
        }
    }
}

}  // namespace

TEST(Factorisation, IsoForcingFamily) {
    const auto k = sketch_iso_forcing();
    std::size_t n = 0;
    check_family(k, support::iso_input(k), {support::iso_model(k, 1), support::iso_model(k, 2),
                                            support::iso_model(k, 3)}, n);
    EXPECT_GE(n, 3u);
}

TEST(Factorisation, BinaryProductFamily) {
    const auto k = sketch_binary_product();
    std::size_t n = 0;
    check_family(k, support::product_input(k), {support::product_model(k, 1), support::product_model(k, 2)}, n);
    EXPECT_GE(n, 3u);
}

TEST(Factorisation, SheafFamily) {
    const auto k = sketch_two_cover_sheaf();
    const std::vector<std::string> two{"0", "1"};
    const std::vector<std::string> three{"0", "1", "2"};
    const std::map<std::string, std::string> id{{"0", "0"}, {"1", "1"}};
    const std::map<std::string, std::string> fold{{"0", "0"}, {"1", "1"}, {"2", "1"}};
    std::size_t n = 0;
    check_family(k, support::sheaf_input(k),
                 {support::sheaf_model(k, two, two, two, id, id),
                  support::sheaf_model(k, three, two, two, fold, id),
                  support::sheaf_model(k, three, three, two, fold, fold)},
                 n);
    EXPECT_GE(n, 3u);
}

TEST(Factorisation, RejectsNonModelTarget) {
    const auto k = sketch_iso_forcing();
    const auto x = support::iso_input(k);
    const auto t = reflect_elim(x, k);
    NatTrans f{{{0, 0}, {0}}};
    EXPECT_THROW(solve_factorisation(t, f, x, k), PreconditionError);
}

TEST(Factorisation, RejectsNonNaturalMap) {
    const auto k = sketch_iso_forcing();
    const auto x = support::iso_input(k);
    const auto m = support::iso_model(k, 2);
    const auto t = reflect_elim(x, k);
    NatTrans f{{{0, 1}, {0}}};
    EXPECT_THROW(solve_factorisation(t, f, m, k), InputError);
}

TEST(Factorisation, RejectsUnconvergedTrace) {
    const auto k = sketch_binary_product();
    ElimOptions o;
    o.budget = 1;
    const auto x = support::product_input(k);
    const auto t = reflect_elim(x, k, o);
    const auto m = support::product_model(k, 1);
    NatTrans f{{{0, 0}, {}}};
    EXPECT_THROW(solve_factorisation(t, f, m, k), PreconditionError);
}

TEST(Uniqueness, InconclusiveAboveCap) {
    const auto k = sketch_binary_product();
    const auto x = support::product_input(k);
    const auto t = reflect_elim(x, k);
    const auto m = support::product_model(k, 3);
    NatTrans f{{{0, 1}, {}}};
    const auto u = check_uniqueness(t, f, m, 10);
    EXPECT_EQ(u.verdict, Uniqueness::inconclusive);
    EXPECT_GT(u.search_space, 10u);
}

TEST(Uniqueness, NoneWhenRhoIdentifiesWhatFSeparates) {
    const auto k = sketch_iso_forcing();
    const auto x = support::iso_input(k);
    const auto t = reflect_elim(x, k);
    const auto m = support::iso_model(k, 2);
    // x1, x2 go to different elements although rho merges them.
    NatTrans f{{{0, 1}, {0}}};
    const auto u = check_uniqueness(t.core, t.rho, f, m, 1000);
    EXPECT_EQ(u.verdict, Uniqueness::none);
}

TEST(Uniqueness, CounterexampleWhenRhoIsNotEpi) {
    // core has an element that rho misses and that is free to move.
    const auto k = sketch_iso_forcing();
    const auto core = support::iso_model(k, 2);
    NatTrans rho{{{}, {}}};
    NatTrans f{{{}, {}}};
    const auto u = check_uniqueness(core, rho, f, support::iso_model(k, 2), 1000);
    EXPECT_EQ(u.verdict, Uniqueness::counterexample);
    EXPECT_EQ(u.witnesses.size(), 2u);
}

TEST(Enumeration, CountsMatchOracle) {
    const auto k = sketch_two_cover_sheaf();
    const auto x = support::sheaf_input(k);
    const std::vector<std::string> three{"0", "1", "2"};
    const std::vector<std::string> two{"0", "1"};
    const std::map<std::string, std::string> fold{{"0", "0"}, {"1", "1"}, {"2", "1"}};
    const std::map<std::string, std::string> id{{"0", "0"}, {"1", "1"}};
    const auto m = support::sheaf_model(k, three, two, two, fold, id);
    const auto r = enumerate_nat_trans(x, m, 1'000'000);
    EXPECT_TRUE(r.conclusive);
    EXPECT_EQ(r.found.size(), oracle::count_nat_trans(x, m));
    for (const auto& f : r.found) EXPECT_TRUE(validate_nat_trans(x, m, f).ok());
}
