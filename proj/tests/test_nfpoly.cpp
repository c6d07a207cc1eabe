#include "perlab/nfpoly.hpp"

#include <doctest.h>

using namespace perlab;

namespace {

ZPoly zp(std::initializer_list<long> coeffs) {
    std::vector<BigInt> c;
    for (long x : coeffs) c.emplace_back(x);
    return ZPoly(std::move(c));
}

}  // namespace

TEST_CASE("number field arithmetic in Q(sqrt 2)") {
    NumberField K(zp({-2, 0, 1}));
    NFElem s2 = nf_gen(K);
    NFElem two = nf_mul(K, s2, s2);
    CHECK(two == nf_from_rat(K, BigRat(2)));
    NFElem inv = nf_inv(K, s2);
    CHECK(nf_mul(K, s2, inv) == nf_one(K));
}

TEST_CASE("gcd over Q(i): x^2+1 = (x-i)(x+i)") {
    NumberField K(zp({1, 0, 1}));  // Q(i)
    NFPoly f = nfp_from_zpoly(K, zp({1, 0, 1}));
    // x - t where t = generator (a square root of -1)
    NFPoly lin{nf_sub(K, nf_zero(K), nf_gen(K)), nf_one(K)};
    NFPoly g = nfp_gcd(K, f, lin);
    CHECK(nfp_degree(g) == 1);
}

TEST_CASE("trager factorization over Q(i)") {
    NumberField K(zp({1, 0, 1}));
    NFPoly f = nfp_from_zpoly(K, zp({1, 0, 1}));  // x^2 + 1
    auto factors = nf_factor_squarefree(K, f);
    REQUIRE(factors.size() == 2);
    CHECK(nfp_degree(factors[0]) == 1);
    CHECK(nfp_degree(factors[1]) == 1);
    // x^2 - 2 stays irreducible over Q(i)
    auto factors2 = nf_factor_squarefree(K, nfp_from_zpoly(K, zp({-2, 0, 1})));
    REQUIRE(factors2.size() == 1);
    CHECK(nfp_degree(factors2[0]) == 2);
}

TEST_CASE("splitting degrees of classic examples") {
    CHECK(splitting_degree(zp({-2, 0, 1}), 64) == 2);        // sqrt 2
    CHECK(splitting_degree(zp({-1, 0, 0, 1}), 64) == 2);     // x^3-1 = (x-1)(x^2+x+1)
    CHECK(splitting_degree(zp({-2, 0, 0, 1}), 64) == 6);     // x^3 - 2
    CHECK(splitting_degree(zp({1, 0, 0, 0, 1}), 64) == 4);   // x^4 + 1, Q(zeta_8)
    CHECK(splitting_degree(zp({1, -1, 1}), 64) == 2);        // z^2 - z + 1
    CHECK(splitting_degree(zp({-1, 1}), 64) == 1);           // linear
    CHECK(splitting_degree(zp({-2, 0, 1}) * zp({-3, 0, 1}), 64) == 4);  // sqrt2, sqrt3
}

TEST_CASE("splitting degree budget abort") {
    // x^5 - x - 1 has splitting degree 120; budget 64 must abort
    CHECK(!splitting_degree(zp({-1, -1, 0, 0, 0, 1}), 64).has_value());
}
