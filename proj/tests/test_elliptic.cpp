#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <numeric>
#include <optional>

#include "zh/arith.hpp"
#include "zh/elliptic.hpp"
#include "zh/errors.hpp"
#include "zh/ff.hpp"

using namespace zh::elliptic;
using zh::arith::u64;
using zh::ff::Field;
using Elem = Field::Elem;

namespace {

// Test-side group law and exhaustive order histogram, independent of the
// production sweep: orders are found by repeated addition, no factoring.
struct OraclePoint {
    Elem x = Field::kZero, y = Field::kZero;
    bool inf = true;
};

OraclePoint oracle_add(const Field& F, const Curve& c, OraclePoint P, OraclePoint Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    Elem a = F.from_int(c.a);
    Elem s;
    if (P.x == Q.x) {
        if (F.add(P.y, Q.y) == Field::kZero) return {};
        Elem num = F.add(F.mul(F.from_int(3), F.mul(P.x, P.x)), a);
        s = F.mul(num, F.inv(F.mul(F.from_int(2), P.y)));
    } else {
        s = F.mul(F.sub(Q.y, P.y), F.inv(F.sub(Q.x, P.x)));
    }
    Elem x3 = F.sub(F.mul(s, s), F.add(P.x, Q.x));
    Elem y3 = F.sub(F.mul(s, F.sub(P.x, x3)), P.y);
    return {x3, y3, false};
}

// order histogram of E(F_{p^nu}): order n -> number of points of order n
std::map<u64, u64> oracle_histogram(const Curve& c, u64 p, unsigned nu) {
    auto Fp = Field::shared(p, nu);
    const Field& F = *Fp;
    std::map<u64, u64> hist;
    hist[1] = 1; // infinity
    for (u64 i = 0; i < F.q(); ++i) {
        Elem x = i == 0 ? Field::kZero : static_cast<Elem>(i - 1);
        Elem rhs = F.add(F.mul(F.mul(x, x), x), F.add(F.mul(F.from_int(c.a), x), F.from_int(c.b)));
        std::vector<OraclePoint> pts;
        if (rhs == Field::kZero) {
            pts.push_back({x, Field::kZero, false});
        } else if (F.is_square(rhs)) {
            Elem y = F.sqrt(rhs);
            pts.push_back({x, y, false});
            pts.push_back({x, F.neg(y), false});
        }
        for (const OraclePoint& P : pts) {
            u64 order = 1;
            OraclePoint R = P;
            while (!R.inf) {
                R = oracle_add(F, c, R, P);
                ++order;
            }
            ++hist[order];
        }
    }
    return hist;
}

} // namespace

TEST_CASE("curve construction") {
    Curve c = make_curve(1, 1);
    CHECK(c.discriminant == -496);
    CHECK(c.bad_primes == std::vector<u64>{2, 3, 31});
    CHECK(good_reduction(c, 5));
    CHECK_FALSE(good_reduction(c, 31));
    CHECK_THROWS_AS(make_curve(0, 0), zh::domain_error);   // singular
    CHECK_THROWS_AS(make_curve(-3, 2), zh::domain_error);  // 4a^3 + 27b^2 = 0

    zh::gm::SystemProfile prof = system_profile(c);
    CHECK(prof.rank == 2);
    CHECK(prof.weight == 1);
    CHECK(prof.bad_primes == c.bad_primes);
}

TEST_CASE("point counts by enumeration") {
    Curve c11 = make_curve(1, 1);
    CHECK(count_points_enum(c11, 5, 1) == 9);
    CHECK(count_points_enum(c11, 5, 2) == 27);

    Curve cm10 = make_curve(-1, 0);
    CHECK(count_points_enum(cm10, 5, 1) == 8);
    CHECK(count_points_enum(cm10, 7, 1) == 8); // a_7 = 0, supersingular

    CHECK_THROWS_AS(count_points_enum(c11, 31, 1), zh::domain_error);  // bad prime
    CHECK_THROWS_AS(count_points_enum(c11, 101, 3), zh::resource_error); // over budget
}

TEST_CASE("frobenius data") {
    Curve c11 = make_curve(1, 1);
    FrobeniusData f5 = frobenius_data(c11, 5);
    CHECK(f5.a_p == -3);
    CHECK(f5.point_count(1) == 9);
    CHECK(f5.point_count(2) == 27);  // 25 + 1 - (a^2 - 2p)
    CHECK(f5.point_count(6) == 15552);

    FrobeniusData f7 = frobenius_data(make_curve(-1, 0), 7);
    CHECK(f7.a_p == 0);
    CHECK_FALSE(is_ordinary(make_curve(-1, 0), 7));
    CHECK(is_ordinary(c11, 5));

    FrobeniusData fm = frobenius_data(make_curve(-1, 0), 5);
    CHECK(fm.a_p == -2);
}

TEST_CASE("group structures") {
    Curve c11 = make_curve(1, 1);
    auto g1 = group_structure(c11, 5, 1);
    CHECK(g1.d1 == 1);
    CHECK(g1.d2 == 9);

    auto g2 = group_structure(c11, 5, 2);
    CHECK(g2.d1 == 3);
    CHECK(g2.d2 == 9);

    auto g3 = group_structure(c11, 5, 3);
    CHECK(g3.d1 == 2);
    CHECK(g3.d2 == 54);

    auto g6 = group_structure(c11, 5, 6);
    CHECK(g6.d1 == 72);
    CHECK(g6.d2 == 216);

    // full rational 2-torsion: x^3 - x splits over F_5
    auto gm = group_structure(make_curve(-1, 0), 5, 1);
    CHECK(gm.d1 == 2);
    CHECK(gm.d2 == 4);

    // groups of prime order are cyclic
    auto g7 = group_structure(make_curve(0, 1), 7, 1); // |E| = 12? check below via invariant
    CHECK(g7.d1 * g7.d2 == count_points_enum(make_curve(0, 1), 7, 1));
}

TEST_CASE("group structure against the exhaustive order oracle") {
    std::vector<std::pair<long long, long long>> curves{{1, 1}, {-1, 0}, {0, 1}, {2, 3}};
    for (auto [a, b] : curves) {
        Curve c = make_curve(a, b);
        for (u64 p : {5ull, 7ull, 11ull, 13ull}) {
            if (!good_reduction(c, p)) continue;
            for (unsigned nu = 1; nu <= 2; ++nu) {
                std::map<u64, u64> hist = oracle_histogram(c, p, nu);
                u64 total = 0, max_order = 1;
                for (auto [n, cnt] : hist) {
                    total += cnt;
                    max_order = std::max(max_order, n);
                }
                GroupStructure g = group_structure(c, p, nu);
                REQUIRE(g.order() == total);
                REQUIRE(g.d2 == max_order); // exponent = largest point order
                for (auto [n, cnt] : hist) REQUIRE(psi_E(c, n, p, nu) == cnt);
                // psi vanishes away from the divisors of the exponent
                REQUIRE(psi_E(c, g.d2 + 1, p, nu) == 0);
            }
        }
    }
}

TEST_CASE("psi examples") {
    Curve c11 = make_curve(1, 1);
    CHECK(psi_E(c11, 1, 5, 1) == 1);
    CHECK(psi_E(c11, 3, 5, 1) == 2);
    CHECK(psi_E(c11, 9, 5, 1) == 6);
    CHECK(psi_E(c11, 2, 5, 1) == 0);

    // p | n: the rational points of order p are the etale fixed points;
    // E(F_{5^4}) = Z/3 x Z/225 holds phi(5) of them at this ordinary prime
    CHECK(psi_E(c11, 5, 5, 4) == 4);
    CHECK(psi_E(c11, 45, 5, 4) == 72); // phi(45) points in the Z/225 factor, times the Z/3 one
    // supersingular: no p-power torsion at any level within budget
    Curve ss = make_curve(-1, 0);
    for (unsigned nu = 1; nu <= 6; ++nu) CHECK(psi_E(ss, 7, 7, nu) == 0);

    // multiplicativity in n for coprime factors
    for (u64 p : {5ull, 7ull, 13ull})
        for (unsigned nu = 1; nu <= 3; ++nu)
            for (u64 n : {2ull, 3ull, 4ull, 9ull})
                for (u64 m : {5ull, 7ull, 11ull, 25ull}) {
                    if (std::gcd(n, m) != 1 || !good_reduction(c11, p)) continue;
                    REQUIRE(psi_E(c11, n * m, p, nu) ==
                            psi_E(c11, n, p, nu) * psi_E(c11, m, p, nu));
                }
}

TEST_CASE("eq4 certificates") {
    Curve c11 = make_curve(1, 1);
    auto cert = verify_eq4_local(c11, 5, 1);
    CHECK(cert.pass);
    CHECK(cert.count_recurrence == 9);
    CHECK(cert.psi_sum == 9);
    REQUIRE(cert.l_parts.size() == 1);
    CHECK(cert.l_parts[0].l == 3);
    CHECK(cert.l_parts[0].l_part == 9);
    CHECK(cert.l_parts[0].psi_l_sum == 9);

    auto c2 = verify_eq4_local(c11, 5, 2);
    CHECK(c2.pass);
    CHECK(c2.count_recurrence == 27);

    // N = 8 = 2^3 at (-1, 0, 5): the 2-part check is the whole story
    auto c3 = verify_eq4_local(make_curve(-1, 0), 5, 1);
    CHECK(c3.pass);
    REQUIRE(c3.l_parts.size() == 1);
    CHECK(c3.l_parts[0].l == 2);
}

TEST_CASE("torsion orbits") {
    Curve c11 = make_curve(1, 1);

    auto t1 = torsion_orbits(c11, 1, 5);
    CHECK(t1.complete);
    CHECK(t1.closure_total == 1);
    CHECK(t1.orbit_counts == std::map<unsigned, u64>{{1, 1}});

    auto t3 = torsion_orbits(c11, 3, 5);
    CHECK(t3.complete);
    CHECK(t3.closure_total == 8);
    CHECK(t3.orbit_counts == std::map<unsigned, u64>{{1, 2}, {2, 3}});

    auto t9 = torsion_orbits(c11, 9, 5);
    CHECK(t9.complete);
    CHECK(t9.closure_total == 72);
    CHECK(t9.orbit_counts == std::map<unsigned, u64>{{1, 6}, {2, 6}, {6, 9}});

    // p-primary order at an ordinary prime: phi(p) etale points
    auto t5 = torsion_orbits(c11, 5, 5);
    CHECK(t5.complete);
    CHECK(t5.closure_total == 4);
    CHECK(t5.orbit_counts == std::map<unsigned, u64>{{4, 1}});

    // supersingular: no exact-order-p points at all
    auto ss = torsion_orbits(make_curve(-1, 0), 7, 7);
    CHECK(ss.complete);
    CHECK(ss.closure_total == 0);
    CHECK(ss.orbit_counts.empty());

    // a degree cap that is too small leaves the set incomplete
    auto capped = torsion_orbits(c11, 9, 5, 3);
    CHECK_FALSE(capped.complete);
    CHECK(capped.orbit_counts == std::map<unsigned, u64>{{1, 6}, {2, 6}});
}

TEST_CASE("closure totals match the full-torsion shape away from p") {
    Curve c11 = make_curve(1, 1);
    for (u64 n : {2ull, 3ull, 4ull, 6ull, 9ull}) {
        auto t = torsion_orbits(c11, n, 7, 1); // totals only, no need to stabilize
        long expected = 0;
        for (u64 m : zh::arith::divisors(zh::arith::factorize(n)))
            expected += zh::arith::moebius(n / m) * static_cast<long>(m * m);
        REQUIRE(t.closure_total == Int(expected));
    }
}

TEST_CASE("eq13 certificates") {
    Curve c11 = make_curve(1, 1);
    auto d1 = verify_eq13_local(c11, 5, 1);
    CHECK(d1.pass);
    REQUIRE(d1.degrees.size() == 1);
    CHECK(d1.degrees[0].closed_points == 9);
    CHECK(d1.degrees[0].orbit_sum == 9);

    auto d2 = verify_eq13_local(c11, 5, 2);
    CHECK(d2.pass);
    CHECK(d2.degrees[1].closed_points == 9); // b_2 = (27 - 9)/2

    auto d0 = verify_eq13_local(c11, 5, 0);
    CHECK(d0.pass); // degree 0 is trivial
    CHECK(d0.lhs.coeffs == std::vector<Int>{Int(1)});

    // supersingular prime, including the p | n side of the partition
    auto dss = verify_eq13_local(make_curve(-1, 0), 7, 3);
    CHECK(dss.pass);

    // a small sweep with deeper degrees
    for (auto [a, b] : std::vector<std::pair<long long, long long>>{{1, 1}, {-1, 0}, {0, 1}})
        for (u64 p : {5ull, 7ull, 11ull, 13ull}) {
            Curve c = make_curve(a, b);
            if (!good_reduction(c, p)) continue;
            REQUIRE(verify_eq13_local(c, p, 4).pass);
        }
}

TEST_CASE("hasse bound and positivity over a corpus") {
    std::vector<std::pair<long long, long long>> curves{
        {1, 1}, {-1, 0}, {0, 1}, {1, 0}, {0, -1}, {2, 3},
        {-2, 5}, {3, -4}, {-4, 4}, {5, 7}, {-7, 10}, {1, -1}};
    for (auto [a, b] : curves) {
        Curve c = make_curve(a, b);
        for (u64 p : zh::arith::primes_up_to(50)) {
            if (!good_reduction(c, p)) continue;
            FrobeniusData fd = frobenius_data(c, p);
            REQUIRE(static_cast<double>(fd.a_p) * fd.a_p <= 4.0 * static_cast<double>(p));
            for (unsigned nu = 1; nu <= 6; ++nu) REQUIRE(fd.point_count(nu) > 0);
        }
    }
}
