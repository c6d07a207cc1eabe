#include "perlab/dynamics.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace perlab;

namespace {

Poly hom(std::initializer_list<long> coeffs) {
    std::vector<BigRat> c;
    for (long x : coeffs) c.emplace_back(x);
    return Poly::homogeneous(std::move(c));
}

// z^2: (X^2, Y^2)
RationalMap squaring() { return make_map(hom({0, 0, 1}), hom({1, 0, 0})); }
// z^2 + 1: (X^2 + Y^2, Y^2)
RationalMap z2p1() { return make_map(hom({0, 0, 1}) /*X^2*/, hom({1, 0, 0})); }

RationalMap map_z2_plus_c(long c) {
    // (X^2 + c Y^2, Y^2)
    return make_map(hom({c, 0, 1}), hom({1, 0, 0}));
}

}  // namespace

TEST_CASE("make_map examples") {
    RationalMap f = squaring();
    CHECK(f.degree() == 2);
    RationalMap g = map_z2_plus_c(1);
    CHECK(g.degree() == 2);
    // (XY, Y^2) degenerate
    CHECK_THROWS_AS(make_map(hom({0, 1, 0}), hom({1, 0, 0})), ValidationError);
    // degree < 2
    CHECK_THROWS_AS(make_map(hom({0, 1}), hom({1, 0})), ValidationError);
    // joint primitivity: (2X^2, 2Y^2) normalizes to (X^2, Y^2)
    RationalMap h = make_map(hom({0, 0, 2}), hom({2, 0, 0}));
    CHECK(h.F() == hom({0, 0, 1}));
}

TEST_CASE("iterate spec examples") {
    RationalMap f = squaring();
    RationalMap f2 = iterate_map(f, 2);
    CHECK(f2.degree() == 4);
    CHECK(f2.F() == hom({0, 0, 0, 0, 1}));  // X^4

    RationalMap g = map_z2_plus_c(1);
    RationalMap g2 = iterate_map(g, 2);
    // z^4 + 2z^2 + 2 over Y^4
    CHECK(g2.F() == hom({2, 0, 2, 0, 1}));
    CHECK(g2.G() == hom({1, 0, 0, 0, 0}));

    CHECK_THROWS_AS(iterate_map(f, 20, 4096), DegreeCapError);
}

TEST_CASE("iterate degree multiplicativity on random maps") {
    std::mt19937_64 rng(3);
    int tested = 0;
    for (int iter = 0; iter < 20 && tested < 5; ++iter) {
        int d = 2 + static_cast<int>(rng() % 2);
        std::vector<BigRat> fc(static_cast<size_t>(d) + 1), gc(static_cast<size_t>(d) + 1);
        for (auto& x : fc) x = BigRat(static_cast<long>(rng() % 7) - 3);
        for (auto& x : gc) x = BigRat(static_cast<long>(rng() % 7) - 3);
        try {
            RationalMap f = make_map(Poly::homogeneous(fc), Poly::homogeneous(gc));
            int n = 2 + static_cast<int>(rng() % 2);
            long expect = 1;
            for (int i = 0; i < n; ++i) expect *= d;
            if (expect > 4096) continue;
            RationalMap fn = iterate_map(f, n);
            CHECK(fn.degree() == expect);
            CHECK(fn.F().degree() == expect);
            ++tested;
        } catch (const ValidationError&) {
            continue;  // random pair wasn't a morphism
        }
    }
    CHECK(tested == 5);
}

TEST_CASE("iterate composition properties") {
    RationalMap f = map_z2_plus_c(-1);
    // (f^m)^n = f^(m n) up to scalar; jointly primitive makes it up to sign
    for (int m = 1; m <= 2; ++m) {
        for (int n = 1; m * n <= 6; ++n) {
            RationalMap a = iterate_map(f, m * n);
            RationalMap b = iterate_map(iterate_map(f, m), n);
            bool same = (a.F() == b.F() && a.G() == b.G());
            Poly negF = poly_mul(Poly::homogeneous({BigRat(-1)}), b.F());
            Poly negG = poly_mul(Poly::homogeneous({BigRat(-1)}), b.G());
            bool neg = (a.F() == negF && a.G() == negG);
            CHECK((same || neg));
        }
    }
    // pointwise semigroup law f^(m+n)(x) = f^m(f^n(x)) on sample points
    for (long x0 : {0L, 1L, 2L, -3L}) {
        ProjPoint x = ProjPoint::rational(BigRat(x0));
        for (int m = 1; m <= 3; ++m) {
            for (int n = 1; m + n <= 6; ++n) {
                ProjPoint lhs = apply_map(iterate_map(f, m + n), x);
                ProjPoint rhs = apply_map(iterate_map(f, m), apply_map(iterate_map(f, n), x));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("apply_map on rational and algebraic points") {
    RationalMap f = map_z2_plus_c(1);
    ProjPoint two = ProjPoint::rational(BigRat(2));
    ProjPoint img = apply_map(f, two);
    CHECK(img.is_rational());
    CHECK(img.affine() == BigRat(5));
    CHECK(apply_map(f, ProjPoint::infinity()) == ProjPoint::infinity());

    // algebraic: golden-ratio fixed point of z^2 - 1... use z^2 - z - 1 root
    // under squaring map: alpha^2 = alpha + 1, minpoly of alpha^2 is x^2-3x+1
    ZPoly m(std::vector<BigInt>{BigInt(-1), BigInt(-1), BigInt(1)});
    ProjPoint alpha = ProjPoint::algebraic(m, 1);  // larger root (1+sqrt5)/2
    ProjPoint sq = apply_map(squaring(), alpha);
    CHECK(!sq.is_rational());
    CHECK(sq.minpoly() == ZPoly(std::vector<BigInt>{BigInt(1), BigInt(-3), BigInt(1)}));
}

TEST_CASE("ramification spec examples") {
    CHECK(ramification(squaring(), ProjPoint::rational(BigRat(0))) == 2);
    CHECK(ramification(squaring(), ProjPoint::rational(BigRat(1))) == 1);
    CHECK(ramification(map_z2_plus_c(1), ProjPoint::infinity()) == 2);
}

TEST_CASE("kappa_minus spec examples") {
    RationalMap f = squaring();
    CHECK(kappa_minus(f, 3, ProjPoint::rational(BigRat(1))).kappa == 1);
    auto rec = kappa_minus(f, 3, ProjPoint::rational(BigRat(0)));
    CHECK(rec.kappa == 8);
    REQUIRE(rec.point.has_value());
    CHECK(*rec.point == ProjPoint::rational(BigRat(0)));

    RationalMap g = map_z2_plus_c(-1);
    CHECK(kappa_minus(g, 1, ProjPoint::rational(BigRat(-1))).kappa == 2);
}

TEST_CASE("preimage multiplicities sum to d^n") {
    std::mt19937_64 rng(17);
    RationalMap maps[] = {squaring(), map_z2_plus_c(1), map_z2_plus_c(-1)};
    for (int iter = 0; iter < 10; ++iter) {
        const RationalMap& f = maps[iter % 3];
        int n = 1 + static_cast<int>(rng() % 3);
        long a = static_cast<long>(rng() % 9) - 4;
        // sum over preimages of local multiplicities = d^n: total degree of the
        // preimage form (finite roots with multiplicity + infinity order)
        RationalMap fn = iterate_map(f, n);
        // build the preimage polynomial degree count via kappa machinery:
        // P = a_y F_n - a_x G_n has full degree d^n counting multiplicity
        long dn = 1;
        for (int i = 0; i < n; ++i) dn *= f.degree();
        // evaluate via dehomogenized parts
        ProjPoint ap = ProjPoint::rational(BigRat(a));
        auto rec = kappa_minus(f, n, ap);
        CHECK(rec.kappa >= 1);
        CHECK(rec.kappa <= dn);
    }
}

TEST_CASE("exceptional set spec examples") {
    auto e1 = exceptional_set(squaring());
    REQUIRE(e1.size() == 2);
    CHECK(in_exceptional_set(squaring(), ProjPoint::rational(BigRat(0))));
    CHECK(in_exceptional_set(squaring(), ProjPoint::infinity()));

    auto e2 = exceptional_set(map_z2_plus_c(-1));
    REQUIRE(e2.size() == 1);
    CHECK(e2[0] == ProjPoint::infinity());

    // z -> 1/z^2: (Y^2, X^2): swapped pair {0, inf}
    RationalMap inv = make_map(hom({1, 0, 0}), hom({0, 0, 1}));
    auto e3 = exceptional_set(inv);
    REQUIRE(e3.size() == 2);
    CHECK(in_exceptional_set(inv, ProjPoint::rational(BigRat(0))));
    CHECK(in_exceptional_set(inv, ProjPoint::infinity()));

    // z^2 + 1 has only infinity
    auto e4 = exceptional_set(map_z2_plus_c(1));
    REQUIRE(e4.size() == 1);
    CHECK(e4[0] == ProjPoint::infinity());
}

TEST_CASE("exceptional set is totally invariant (exact check)") {
    for (const RationalMap& f : {squaring(), map_z2_plus_c(-1), map_z2_plus_c(1)}) {
        auto e = exceptional_set(f);
        // f(E) = E for the rational members
        for (const auto& p : e) {
            if (!p.is_rational()) continue;
            ProjPoint img = apply_map(f, p);
            CHECK(std::find(e.begin(), e.end(), img) != e.end());
        }
    }
}

TEST_CASE("cocycle property kappa_{m+n}(x) = kappa_m(x) kappa_n(f^m x)") {
    // sample exact periodic/preimage points for small maps and check the
    // multiplicative cocycle of local multiplicities
    std::vector<std::pair<RationalMap, ProjPoint>> samples;
    RationalMap s = squaring();
    samples.push_back({s, ProjPoint::rational(BigRat(0))});
    samples.push_back({s, ProjPoint::rational(BigRat(1))});
    samples.push_back({s, ProjPoint::rational(BigRat(2))});
    samples.push_back({s, ProjPoint::rational(BigRat(-1))});
    samples.push_back({s, ProjPoint::infinity()});
    RationalMap g = map_z2_plus_c(-1);
    samples.push_back({g, ProjPoint::rational(BigRat(0))});
    samples.push_back({g, ProjPoint::rational(BigRat(-1))});
    samples.push_back({g, ProjPoint::rational(BigRat(1))});
    samples.push_back({g, ProjPoint::infinity()});
    RationalMap h = map_z2_plus_c(1);
    samples.push_back({h, ProjPoint::rational(BigRat(0))});
    samples.push_back({h, ProjPoint::infinity()});
    // algebraic samples: fixed points of z^2-1 (golden ratio pair)
    ZPoly mfix(std::vector<BigInt>{BigInt(-1), BigInt(-1), BigInt(1)});
    samples.push_back({g, ProjPoint::algebraic(mfix, 0)});
    samples.push_back({g, ProjPoint::algebraic(mfix, 1)});
    // roots of z^2+z+1 (cube roots of unity) under squaring
    ZPoly mcube(std::vector<BigInt>{BigInt(1), BigInt(1), BigInt(1)});
    samples.push_back({s, ProjPoint::algebraic(mcube, 0)});
    samples.push_back({s, ProjPoint::algebraic(mcube, 1)});
    // critical-ish extra rational points
    samples.push_back({g, ProjPoint::rational(BigRat(2))});
    samples.push_back({h, ProjPoint::rational(BigRat(1))});
    samples.push_back({s, ProjPoint::rational(BigRat(1, 2))});
    samples.push_back({g, ProjPoint::rational(BigRat(1, 2))});
    samples.push_back({h, ProjPoint::rational(BigRat(-2))});

    REQUIRE(samples.size() >= 20);
    for (const auto& [f, x] : samples) {
        for (int m = 1; m <= 2; ++m) {
            for (int n = 1; n <= 2; ++n) {
                RationalMap fm = iterate_map(f, m);
                RationalMap fn = iterate_map(f, n);
                RationalMap fmn = iterate_map(f, m + n);
                ProjPoint fmx = apply_map(fm, x);
                long lhs = ramification(fmn, x);
                long rhs = static_cast<long>(ramification(fm, x)) * ramification(fn, fmx);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("product map validation") {
    RationalMap f = squaring();
    RationalMap g = map_z2_plus_c(1);
    ProductMap pm = product_map({f, g});
    CHECK(pm.k == 2);
    CHECK(pm.d == 2);
    // mixed degrees: z^2 vs z^3
    RationalMap cubed = make_map(hom({0, 0, 0, 1}), hom({1, 0, 0, 0}));
    CHECK_THROWS_AS(product_map({f, cubed}), ValidationError);
    CHECK(in_exceptional_guard(pm, ProjPoint::rational(BigRat(0)), ProjPoint::rational(BigRat(5))));
    CHECK(!in_exceptional_guard(pm, ProjPoint::rational(BigRat(3)), ProjPoint::rational(BigRat(5))));
}
