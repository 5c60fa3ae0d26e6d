#pragma once

#include <map>
#include <string>
#include <vector>

#include "limsketch/builders.hpp"
#include "limsketch/serialize.hpp"
#include "limsketch/setops.hpp"
#include "limsketch/sketch.hpp"

namespace support {

inline std::string fixture(const std::string& name) {
    return std::string(LIMSKETCH_FIXTURES) + "/" + name;
}

inline limsketch::SetPresentation load(const limsketch::LimitSketch& k, const std::string& name) {
    return limsketch::presentation_from_json(limsketch::read_json_file(fixture(name)), k.base,
                                             fixture(name));
}

// X(a) = {x1, x2}, X(b) = {y}.
inline limsketch::SetPresentation iso_input(const limsketch::LimitSketch& k) {
    return limsketch::make_presentation(k.base, {{"a", {"x1", "x2"}}, {"b", {"y"}}},
                                        {{"t", {{"x1", "y"}, {"x2", "y"}}}});
}

// X(a) = {u, v}, X(p) empty.
inline limsketch::SetPresentation product_input(const limsketch::LimitSketch& k) {
    return limsketch::make_presentation(k.base, {{"a", {"u", "v"}}, {"p", {}}}, {});
}

// X(U) = X(V) = X(W) = {0, 1} with identity restrictions, X(T) empty.
inline limsketch::SetPresentation sheaf_input(const limsketch::LimitSketch& k) {
    const std::vector<std::string> two{"0", "1"};
    return limsketch::make_presentation(
        k.base, {{"T", {}}, {"U", two}, {"V", two}, {"W", two}},
        {{"sU", {{"0", "0"}, {"1", "1"}}}, {"sV", {{"0", "0"}, {"1", "1"}}}});
}

// Bijection a -> b on n elements.
inline limsketch::SetPresentation iso_model(const limsketch::LimitSketch& k, int n) {
    std::vector<std::string> as, bs;
    std::map<std::string, std::string> t;
    for (int i = 0; i < n; ++i) {
        as.push_back("m" + std::to_string(i));
        bs.push_back("n" + std::to_string(i));
        t[as.back()] = bs.back();
    }
    return limsketch::make_presentation(k.base, {{"a", as}, {"b", bs}}, {{"t", t}});
}

// M(a) = A with |A| = n, M(p) = A x A.
inline limsketch::SetPresentation product_model(const limsketch::LimitSketch& k, int n) {
    std::vector<std::string> as, ps;
    std::map<std::string, std::string> p1, p2;
    for (int i = 0; i < n; ++i) as.push_back("e" + std::to_string(i));
    for (const auto& l : as) {
        for (const auto& r : as) {
            ps.push_back(l + "," + r);
            p1[ps.back()] = l;
            p2[ps.back()] = r;
        }
    }
    return limsketch::make_presentation(k.base, {{"a", as}, {"p", ps}}, {{"pi1", p1}, {"pi2", p2}});
}

// Restrictions rU: T -> U, rV: T -> V, rW: T -> W and sU: U -> W, sV: V -> W
// given by their tables on U, V, W; M(T) is the set of matching pairs.
inline limsketch::SetPresentation sheaf_model(const limsketch::LimitSketch& k,
                                              const std::vector<std::string>& u,
                                              const std::vector<std::string>& v,
                                              const std::vector<std::string>& w,
                                              const std::map<std::string, std::string>& su,
                                              const std::map<std::string, std::string>& sv) {
    std::vector<std::string> t;
    std::map<std::string, std::string> ru, rv, rw;
    for (const auto& a : u) {
        for (const auto& b : v) {
            if (su.at(a) != sv.at(b)) continue;
            t.push_back(a + "|" + b);
            ru[t.back()] = a;
            rv[t.back()] = b;
            rw[t.back()] = su.at(a);
        }
    }
    return limsketch::make_presentation(
        k.base, {{"T", t}, {"U", u}, {"V", v}, {"W", w}},
        {{"rU", ru}, {"rV", rv}, {"rW", rw}, {"sU", su}, {"sV", sv}});
}

}  // namespace support
