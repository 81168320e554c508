#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "zh/arith.hpp"
#include "zh/errors.hpp"
#include "zh/localzeta.hpp"

using namespace zh::localzeta;
using zh::arith::u64;

namespace {

std::vector<Int> ints(std::initializer_list<long> v) {
    std::vector<Int> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

// test-side convolution, used to check expand against its defining identity
std::vector<Int> convolve(const std::vector<Int>& a, const std::vector<Int>& b, std::size_t deg) {
    std::vector<Int> r(deg + 1, Int(0));
    for (std::size_t i = 0; i < a.size() && i <= deg; ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= deg; ++j) r[i + j] += a[i] * b[j];
    return r;
}

// test-side inverse of from_point_counts: N_k = k c_k - sum_{nu<k} N_nu c_{k-nu}
std::vector<Int> recover_counts(const PowerSeries& s) {
    std::vector<Int> counts(s.degree());
    for (int k = 1; k <= s.degree(); ++k) {
        Int acc = Int(k) * s[k];
        for (int nu = 1; nu < k; ++nu) acc -= counts[nu - 1] * s[k - nu];
        counts[k - 1] = acc;
    }
    return counts;
}

} // namespace

TEST_CASE("local factor invariants") {
    CHECK_THROWS_AS(make_local_factor(2, ints({2}), ints({1})), zh::inconsistency_error);
    CHECK_THROWS_AS(make_local_factor(2, ints({1}), ints({})), zh::inconsistency_error);
}

TEST_CASE("expand examples") {
    // geometric series
    CHECK(expand(make_local_factor(2, ints({1}), ints({1, -1})), 3).coeffs == ints({1, 1, 1, 1}));
    // (1 - T)/(1 - 2T)
    CHECK(expand(make_local_factor(2, ints({1, -1}), ints({1, -2})), 2).coeffs == ints({1, 1, 2}));
    // 1/(1 - T^2)
    CHECK(expand(make_local_factor(2, ints({1}), ints({1, 0, -1})), 4).coeffs ==
          ints({1, 0, 1, 0, 1}));
}

TEST_CASE("expand satisfies series * denominator = numerator") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Int> num{Int(1)}, den{Int(1)};
        for (int i = 0; i < 3; ++i) num.emplace_back(coef(rng));
        for (int i = 0; i < 3; ++i) den.emplace_back(coef(rng));
        LocalFactor f = make_local_factor(2, num, den);
        PowerSeries s = expand(f, 10);
        std::vector<Int> back = convolve(s.coeffs, den, 10);
        for (std::size_t k = 0; k <= 10; ++k)
            REQUIRE(back[k] == (k < num.size() ? num[k] : Int(0)));
    }
}

TEST_CASE("from_point_counts examples") {
    CHECK(from_point_counts(5, ints({0, 0, 0})).coeffs == ints({1, 0, 0, 0}));

    // G_m over F_3: the (1 - T)/(1 - 3T) expansion is the oracle
    PowerSeries gm3 = expand(make_local_factor(3, ints({1, -1}), ints({1, -3})), 2);
    CHECK(from_point_counts(3, ints({2, 8})) == gm3);
    CHECK(gm3.coeffs == ints({1, 2, 6}));

    // elliptic counts N_1 = 9, N_2 = 27 match the symbolic division oracle
    // with p = 5, a_p = -3
    PowerSeries e = expand(make_local_factor(5, ints({1, 3, 5}), ints({1, -6, 5})), 2);
    CHECK(from_point_counts(5, ints({9, 27})) == e);
    CHECK(e.coeffs == ints({1, 9, 54}));

    CHECK_THROWS_AS(from_point_counts(2, ints({0, 1})), zh::inconsistency_error);
    CHECK_THROWS_AS(from_point_counts(2, ints({-1})), zh::domain_error);
}

TEST_CASE("closed point counts") {
    CHECK(closed_point_counts(7, ints({1, 1, 1})) == ints({1, 0, 0}));
    CHECK(closed_point_counts(3, ints({2, 8})) == ints({2, 3}));
    CHECK(closed_point_counts(5, ints({9, 27})) == ints({9, 9}));
    CHECK_THROWS_AS(closed_point_counts(2, ints({0, 1})), zh::inconsistency_error);
}

TEST_CASE("count round trips") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> b_draw(0, 4);
    for (int trial = 0; trial < 100; ++trial) {
        // draw closed-point counts, reconstruct N_nu = sum_{d|nu} d b_d
        std::vector<Int> b(8);
        for (auto& x : b) x = b_draw(rng);
        std::vector<Int> counts(8, Int(0));
        for (int nu = 1; nu <= 8; ++nu)
            for (int d = 1; d <= nu; ++d)
                if (nu % d == 0) counts[nu - 1] += Int(d) * b[d - 1];
        REQUIRE(closed_point_counts(2, counts) == b);

        PowerSeries z = from_point_counts(2, counts);
        REQUIRE(recover_counts(z) == counts);
    }
}

TEST_CASE("from_point_counts inverts expand for engine-built factors") {
    // every local factor the engine builds: recovering N_nu from the
    // expansion and re-exponentiating reproduces the series exactly
    std::vector<LocalFactor> factors;
    factors.push_back(cyclotomic_local_factor(12, 5));
    factors.push_back(cyclotomic_local_factor(4, 3));
    factors.push_back(cyclotomic_local_factor(1, 2));
    factors.push_back(make_local_factor(5, ints({1, 3, 5}), ints({1, -6, 5})));
    factors.push_back(make_local_factor(2, ints({1, -1}), ints({1, -2})));
    for (const LocalFactor& f : factors) {
        PowerSeries s = expand(f, 8);
        std::vector<Int> counts = recover_counts(s);
        for (const Int& c : counts) REQUIRE(c >= 0);
        REQUIRE(from_point_counts(f.prime, counts) == s);
    }
}

TEST_CASE("cyclotomic local factors") {
    LocalFactor f1 = cyclotomic_local_factor(1, 7);
    CHECK(f1.numerator == ints({1}));
    CHECK(f1.denominator == ints({1, -1}));

    // ord_12(5) = 2, phi(12)/2 = 2: 1/(1 - T^2)^2
    LocalFactor f12 = cyclotomic_local_factor(12, 5);
    CHECK(f12.denominator == ints({1, 0, -2, 0, 1}));

    // ord_4(3) = 2: 1/(1 - T^2)
    LocalFactor f4 = cyclotomic_local_factor(4, 3);
    CHECK(f4.denominator == ints({1, 0, -1}));

    CHECK_THROWS_AS(cyclotomic_local_factor(12, 3), zh::domain_error);
}

TEST_CASE("euler product evaluation") {
    EulerProduct empty;
    empty.abscissa = {1, 1};
    CHECK(evaluate(empty, 2.0, 1000) == 1.0);

    // zeta truncation at s = 2 vs direct series summation
    EulerProduct zeta;
    zeta.label = "zeta";
    zeta.abscissa = {1, 1};
    for (u64 p : zh::arith::primes_up_to(10000))
        zeta.factors.emplace(p, make_local_factor(p, ints({1}), ints({1, -1})));
    double series = 0.0;
    for (u64 m = 2000000; m >= 1; --m) series += 1.0 / (static_cast<double>(m) * m);
    double product = evaluate(zeta, 2.0, 10000);
    CHECK(std::abs(product - series) < 2e-4);
    CHECK(product < series); // truncation from below

    // monotone under adding primes (nonnegative series coefficients)
    CHECK(evaluate(zeta, 2.0, 100) < evaluate(zeta, 2.0, 10000));

    // G_m: (1 - p^-s)/(1 - p^(1-s)) against zeta(2)/zeta(3) at s = 3
    EulerProduct gm;
    gm.abscissa = {2, 1};
    for (u64 p : zh::arith::primes_up_to(10000))
        gm.factors.emplace(
            p, make_local_factor(p, ints({1, -1}), ints({1, -static_cast<long>(p)})));
    double z3 = 0.0;
    for (u64 m = 2000000; m >= 1; --m) z3 += 1.0 / (static_cast<double>(m) * m * m);
    CHECK(std::abs(evaluate(gm, 3.0, 10000) - series / z3) < 1e-3);

    CHECK_THROWS_AS(evaluate(gm, 1.5, 100), zh::domain_error);

    // a factor with a pole at the evaluation point
    EulerProduct pole;
    pole.abscissa = {0, 1};
    std::vector<Int> den{Int(1), Int(-2)};
    pole.factors.emplace(2, make_local_factor(2, ints({1}), den));
    CHECK_THROWS_AS(evaluate(pole, 1.0, 10), zh::pole_error); // T = 1/2 kills 1 - 2T
}

TEST_CASE("series kernels") {
    PowerSeries s;
    s.coeffs.assign(9, Int(0));
    s.coeffs[0] = 1;
    mul_inv_one_minus_tf_pow(s, 2, 3); // 1/(1 - T^2)^3
    PowerSeries direct = expand(inverse_one_minus_tf_pow_factor(2, 2, 3), 8);
    CHECK(s == direct);
    mul_one_minus_tf(s, 2);
    mul_one_minus_tf(s, 2);
    mul_one_minus_tf(s, 2);
    CHECK(s.coeffs == ints({1, 0, 0, 0, 0, 0, 0, 0, 0}));
}
