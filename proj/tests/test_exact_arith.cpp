#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "collatzkit/matrix.hpp"
#include "collatzkit/rng.hpp"

using namespace collatz;

TEST_CASE("v2 basics") {
    CHECK(v2(Int(22)) == 1);
    CHECK(v2(Int(64)) == 6);
    CHECK(v2(Int(3 * 27 + 1)) == 1);  // 82 = 2*41
    CHECK_THROWS_AS(v2(Int(0)), std::domain_error);
}

TEST_CASE("v2 property: v2(2^k * odd) = k") {
    CounterRng rng(42);
    for (int i = 0; i < 200; ++i) {
        unsigned long k = rng.next_u64() % 65;
        Int odd = Int(2 * (rng.next_u64() % 1000000) + 1);
        CHECK(v2(Int(pow2(k) * odd)) == k);
    }
}

TEST_CASE("mod_inverse_pow2") {
    // brute force over 16 residues
    for (unsigned long x = 0; x < 16; ++x)
        if ((3 * x) % 16 == 1) CHECK(mod_inverse_pow2(Int(3), 4) == x);
    CHECK(mod_inverse_pow2(Int(3), 4) == 11);
    CHECK(mod_inverse_pow2(Int(1), 8) == 1);
    CHECK(mod_inverse_pow2(Int(243), 6) == 43);  // 243*43 = 1 (mod 64)
    CHECK((Int(243) * 43) % 64 == 1);
    CHECK_THROWS_AS(mod_inverse_pow2(Int(4), 4), std::domain_error);
}

TEST_CASE("char_poly small cases") {
    RatMatrix m(1);
    m.at(0, 0) = Rat(3, 4);
    auto p = char_poly(m);
    CHECK(p.degree() == 1);
    CHECK(p[0] == Rat(-3, 4));
    CHECK(p[1] == 1);

    // Q of the cascade chain: char poly = l^3 - (3/4) l^2
    RatMatrix q(3);
    q.at(0, 0) = Rat(1, 4);
    q.at(0, 1) = Rat(1, 4);
    q.at(0, 2) = Rat(1, 4);
    q.at(1, 0) = Rat(1, 2);
    q.at(2, 1) = Rat(1, 2);
    q.at(2, 2) = Rat(1, 2);
    auto pq = char_poly(q);
    CHECK(pq[3] == 1);
    CHECK(pq[2] == Rat(-3, 4));
    CHECK(pq[1] == 0);
    CHECK(pq[0] == 0);
    // evaluated at an exact eigenvalue: exactly zero
    CHECK(pq.eval(Rat(3, 4)) == 0);
    CHECK(pq.eval(Rat(0)) == 0);
}

TEST_CASE("perron_root exact and bounds") {
    RatMatrix half(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) half.at(i, j) = Rat(1, 2);
    auto pr = perron_root(half, Rat(1, 1000));
    REQUIRE(pr.exact.has_value());
    CHECK(*pr.exact == 1);

    RatMatrix q(3);
    q.at(0, 0) = Rat(1, 4);
    q.at(0, 1) = Rat(1, 4);
    q.at(0, 2) = Rat(1, 4);
    q.at(1, 0) = Rat(1, 2);
    q.at(2, 1) = Rat(1, 2);
    q.at(2, 2) = Rat(1, 2);
    auto prq = perron_root(q, Rat(1, 1000000));
    REQUIRE(prq.exact.has_value());
    CHECK(*prq.exact == Rat(3, 4));

    // perron root between max row min and max row sum for nonnegative matrices
    CounterRng rng(7);
    for (int t = 0; t < 10; ++t) {
        RatMatrix m(3);
        Rat max_row_sum = 0, max_row_min = 0;
        for (int i = 0; i < 3; ++i) {
            Rat s = 0, mn;
            for (int j = 0; j < 3; ++j) {
                m.at(i, j) = Rat(rng.next_u64() % 8, 1 + rng.next_u64() % 7);
                s += m.at(i, j);
                if (j == 0 || m.at(i, j) < mn) mn = m.at(i, j);
            }
            if (s > max_row_sum) max_row_sum = s;
            if (mn > max_row_min) max_row_min = mn;
        }
        auto p = perron_root(m, Rat(1, 100000));
        Rat lo = p.exact ? *p.exact : p.lower;
        Rat hi = p.exact ? *p.exact : p.upper;
        CHECK(hi >= max_row_min);
        CHECK(lo <= max_row_sum);
    }
}

TEST_CASE("second_eigenvalue_bound") {
    RatMatrix q(3);
    q.at(0, 0) = Rat(1, 4);
    q.at(0, 1) = Rat(1, 4);
    q.at(0, 2) = Rat(1, 4);
    q.at(1, 0) = Rat(1, 2);
    q.at(2, 1) = Rat(1, 2);
    q.at(2, 2) = Rat(1, 2);
    CHECK(second_eigenvalue_bound(q, Rat(1, 10)));  // spectrum {3/4, 0, 0}
    RatMatrix id = RatMatrix::identity(2);
    CHECK_FALSE(second_eigenvalue_bound(id, Rat(1, 2)));  // repeated eigenvalue 1
}

TEST_CASE("stationary_distribution") {
    RatMatrix half(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) half.at(i, j) = Rat(1, 2);
    auto pi = stationary_distribution(half);
    CHECK(pi[0] == Rat(1, 2));
    CHECK(pi[1] == Rat(1, 2));

    RatMatrix perm(3);
    perm.at(0, 1) = 1;
    perm.at(1, 2) = 1;
    perm.at(2, 0) = 1;
    auto pp = stationary_distribution(perm);
    for (auto& p : pp) CHECK(p == Rat(1, 3));
}

TEST_CASE("rational reduction invariant") {
    Rat a(6, 8), b(10, 12);
    Rat c = a + b;
    CHECK(mpz_cmp_ui(Int(gcd(Int(c.get_num()), Int(c.get_den()))).get_mpz_t(), 1) == 0);
    CHECK(c.get_den() > 0);
}
