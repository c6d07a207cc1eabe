#include "perlab/roots.hpp"

#include <doctest.h>

using namespace perlab;

namespace {

ZPoly zp(std::initializer_list<long> coeffs) {
    std::vector<BigInt> c;
    for (long x : coeffs) c.emplace_back(x);
    return ZPoly(std::move(c));
}

}  // namespace

TEST_CASE("complex_roots of z^3 - 1") {
    auto roots = complex_roots(zp({-1, 0, 0, 1}), 53);
    REQUIRE(roots.size() == 3);
    // sorted real-lexicographically: the conjugate pair first, then 1
    CHECK(roots[0].z.real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(roots[1].z.real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(roots[0].z.imag() < 0);
    CHECK(roots[1].z.imag() > 0);
    CHECK(roots[2].z.real() == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& r : roots) CHECK(r.err <= std::exp2(-53.0 / 2));
}

TEST_CASE("complex_roots rejects non-squarefree input") {
    CHECK_THROWS_AS(complex_roots(zp({1, -2, 1}), 53), ValidationError);  // (z-1)^2
}

TEST_CASE("complex_roots residual certificate and separation") {
    // wilkinson-ish small case and a sparse one
    ZPoly p = zp({-6, 11, -6, 1});  // (z-1)(z-2)(z-3)
    auto roots = complex_roots(p, 60);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].z.real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(roots[1].z.real() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(roots[2].z.real() == doctest::Approx(3.0).epsilon(1e-10));
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
            CHECK(std::abs(roots[i].z - roots[j].z) > roots[i].err + roots[j].err);
}

TEST_CASE("complex_roots counts all roots of sparse high-degree polynomials") {
    ZPoly p = ZPoly::xn_minus_1(127);
    auto roots = complex_roots(p, 53);
    REQUIRE(roots.size() == 127);
    for (const auto& r : roots) {
        CHECK(std::abs(std::abs(r.z) - 1.0) < 1e-9);
        CHECK(r.err < 1e-7);
    }
}

TEST_CASE("complex_roots with big coefficients falls back to big floats") {
    // (2^520 z - 1)(z - 2): coefficient height far past the double range,
    // roots of moderate size
    BigInt big = 1;
    for (int i = 0; i < 520; ++i) big *= 2;
    std::vector<BigInt> c{BigInt(2), -(BigInt(2) * big + 1), big};
    ZPoly p(std::move(c));
    auto roots = complex_roots(p, 40);
    REQUIRE(roots.size() == 2);
    CHECK(std::abs(roots[0].z) < 1e-100);  // 2^-520
    CHECK(roots[1].z.real() == doctest::Approx(2.0).epsilon(1e-6));
    for (const auto& r : roots) CHECK(r.err <= std::exp2(-20));
}

TEST_CASE("complex_roots zero root peeled exactly") {
    auto roots = complex_roots(zp({0, -1, 0, 0, 1}), 53);  // z(z^3 - 1)
    REQUIRE(roots.size() == 4);
    bool saw_zero = false;
    for (const auto& r : roots)
        if (r.z == std::complex<double>(0, 0) && r.err == 0.0) saw_zero = true;
    CHECK(saw_zero);
}
