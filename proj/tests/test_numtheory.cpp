#include <doctest.h>

#include <numeric>

#include "circle/numtheory.hpp"
#include "oracles.hpp"

using namespace circle;

namespace {

std::string render(const std::vector<Fraction>& fs) {
    std::string out;
    for (const auto& f : fs) {
        if (!out.empty()) out += ' ';
        out += std::to_string(f.num()) + "/" + std::to_string(f.den());
    }
    return out;
}

// Legendre symbol by Euler's criterion, extended multiplicatively over the
// prime factors of n.
int jacobi_bruteforce(std::int64_t a, std::int64_t n) {
    int result = 1;
    std::int64_t m = n;
    for (std::int64_t p = 3; p <= m; p += 2) {
        while (m % p == 0) {
            m /= p;
            const std::int64_t r = ((a % p) + p) % p;
            if (r == 0) return 0;
            std::int64_t pw = 1;
            for (std::int64_t i = 0; i < (p - 1) / 2; ++i) pw = pw * r % p;
            result *= pw == 1 ? 1 : -1;
        }
    }
    return result;
}

}  // namespace

TEST_CASE("jacobi symbol examples") {
    CHECK(jacobi_symbol(1, 1) == 1);
    CHECK(jacobi_symbol(2, 3) == -1);
    CHECK(jacobi_symbol(-1, 5) == 1);
    CHECK(jacobi_symbol(-1, 7) == -1);
    CHECK_THROWS_AS(jacobi_symbol(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_symbol(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_symbol(3, -3), std::invalid_argument);
}

TEST_CASE("jacobi symbol matches Euler's criterion") {
    for (std::int64_t n = 1; n <= 99; n += 2) {
        for (std::int64_t a = -30; a <= 30; ++a) {
            REQUIRE_MESSAGE(jacobi_symbol(a, n) == jacobi_bruteforce(a, n), a, "/", n);
        }
    }
}

TEST_CASE("jacobi symbol is multiplicative in a") {
    for (std::int64_t n = 1; n <= 99; n += 2) {
        for (std::int64_t a = -20; a <= 20; ++a) {
            for (std::int64_t b = -20; b <= 20; ++b) {
                REQUIRE(jacobi_symbol(a, n) * jacobi_symbol(b, n) == jacobi_symbol(a * b, n));
            }
        }
    }
}

TEST_CASE("negative modular inverse") {
    CHECK(neg_mod_inverse(1, 1) == 0);
    CHECK(neg_mod_inverse(3, 5) == 3);
    CHECK(neg_mod_inverse(1, 2) == 1);
    CHECK_THROWS_AS(neg_mod_inverse(2, 4), std::invalid_argument);
    for (std::int64_t k = 1; k <= 60; ++k) {
        for (std::int64_t h = 0; h < k; ++h) {
            if (std::gcd(h, k) != 1) continue;
            const std::int64_t H = neg_mod_inverse(h, k);
            REQUIRE(H >= 0);
            REQUIRE(H < k);
            REQUIRE(((h * H + 1) % k) == 0);
        }
    }
}

TEST_CASE("dedekind sum examples") {
    CHECK(dedekind_sum(0, 1) == 0);
    CHECK(dedekind_sum(1, 2) == 0);
    // (1/3 - 1/2)^2 + (2/3 - 1/2)^2 = 1/36 + 1/36
    CHECK(dedekind_sum(1, 3) == Rational(1, 18));
    CHECK(dedekind_sum(1, 5) == Rational(1, 5));
    CHECK_THROWS_AS(dedekind_sum(2, 4), std::invalid_argument);
}

TEST_CASE("dedekind sum paths agree with the sawtooth definition") {
    for (std::int64_t k = 1; k <= 60; ++k) {
        for (std::int64_t h = 0; h < k; ++h) {
            if (std::gcd(h, k) != 1) continue;
            const Rational ref = oracle::dedekind(h, k);
            REQUIRE(dedekind_sum(h, k) == ref);
            REQUIRE(dedekind_sum_direct(h, k) == ref);
        }
    }
}

TEST_CASE("dedekind reciprocity") {
    for (std::int64_t k = 2; k <= 50; ++k) {
        for (std::int64_t h = 1; h < k; ++h) {
            if (std::gcd(h, k) != 1) continue;
            const Rational hk = make_rational(h, k);
            const Rational kh = make_rational(k, h);
            const Rational rhs = Rational(-1, 4) + (hk + kh + make_rational(1, h * k)) / 12;
            REQUIRE(dedekind_sum(h, k) + dedekind_sum(k % h, h) == rhs);
        }
    }
}

TEST_CASE("farey sequences of small order") {
    CHECK(render(farey(1)) == "0/1");
    CHECK(render(farey(2)) == "0/1 1/2");
    CHECK(render(farey(3)) == "0/1 1/3 1/2 2/3");
    CHECK(render(farey(4)) == "0/1 1/4 1/3 1/2 2/3 3/4");
    CHECK_THROWS_AS(farey(0), std::invalid_argument);
}

TEST_CASE("farey sequences are increasing, unimodular and complete") {
    for (std::int64_t N = 1; N <= 40; ++N) {
        const auto fs = farey(N);
        std::int64_t expected = 1;
        for (std::int64_t k = 2; k <= N; ++k) expected += euler_phi(k);
        REQUIRE(static_cast<std::int64_t>(fs.size()) == expected);
        for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
            const auto& a = fs[i];
            const auto& b = fs[i + 1];
            REQUIRE(a < b);
            REQUIRE(a.den() * b.num() - a.num() * b.den() == 1);
        }
        // Cyclic wrap: (N-1)/N followed by 1/1.
        const auto& last = fs.back();
        REQUIRE(last.den() * 1 - last.num() * 1 == 1);
    }
}

TEST_CASE("farey neighbour strategies agree") {
    for (std::int64_t N = 1; N <= 25; ++N) {
        for (const auto& f : farey(N)) {
            const auto scan = farey_neighbors_scan(f.num(), f.den(), N);
            REQUIRE(farey_neighbors_mediant(f.num(), f.den(), N) == scan);
            REQUIRE(farey_neighbors(f.num(), f.den(), N) == scan);
        }
    }
    const auto nb = farey_neighbors(0, 1, 5);
    CHECK(nb.pred == Fraction(-1, 5));
    CHECK(nb.succ == Fraction(1, 5));
    const auto last = farey_neighbors(4, 5, 5);
    CHECK(last.succ == Fraction(1, 1));
    CHECK_THROWS_AS(farey_neighbors(1, 6, 5), std::invalid_argument);
    CHECK_THROWS_AS(farey_neighbors(2, 4, 5), std::invalid_argument);
}

TEST_CASE("large-order neighbours through the mediant path") {
    const std::int64_t N = 5000;
    const auto nb = farey_neighbors(1, 2, N);
    CHECK(nb.pred.den() * 1 - nb.pred.num() * 2 == 1);
    CHECK(2 * nb.succ.num() - 1 * nb.succ.den() == 1);
    CHECK(nb.pred.den() + 2 > N);
    CHECK(nb.succ.den() + 2 > N);
}

TEST_CASE("ford arc endpoints at 1/2 in F_2") {
    const auto e = ford_arc_endpoints(1, 2, 2);
    CHECK(e.k_pred == 1);
    CHECK(e.k_succ == 1);
    CHECK(e.z_initial == ExactComplex{Rational(2, 5), Rational(1, 5)});
    CHECK(e.z_terminal == ExactComplex{Rational(2, 5), Rational(-1, 5)});
}

TEST_CASE("ford arc end of the path matches its start one period over") {
    for (std::int64_t N = 1; N <= 30; ++N) {
        const auto first = ford_arc_endpoints(0, 1, N);
        const auto last = ford_arc_endpoints(N - 1, N, N);
        ExactComplex shifted = first.alpha_initial;
        shifted.re += 1;
        REQUIRE(last.alpha_terminal == shifted);
    }
}

TEST_CASE("ford arc endpoints lie on the image circle and inside the bound") {
    for (std::int64_t N = 1; N <= 12; ++N) {
        for (const auto& f : farey(N)) {
            const std::int64_t k = f.den();
            const auto e = ford_arc_endpoints(f.num(), k, N);
            for (const auto& z : {e.z_initial, e.z_terminal}) {
                ExactComplex c = z;
                c.re -= make_rational(1, 2 * k);
                REQUIRE(c.norm_squared() == make_rational(1, 4 * k * k));
                REQUIRE(z.norm_squared() <= make_rational(2, N * N));
            }
            // tau = (iz + h) / k
            const Rational hk = make_rational(f.num(), k);
            CHECK(e.alpha_initial.re == hk - e.z_initial.im / k);
            CHECK(e.alpha_initial.im == e.z_initial.re / k);
            CHECK(e.alpha_terminal.re == hk - e.z_terminal.im / k);
            CHECK(e.alpha_terminal.im == e.z_terminal.re / k);
        }
    }
}

TEST_CASE("divisors, lcm and phi") {
    CHECK(divisors(1) == std::vector<std::int64_t>{1});
    CHECK(divisors(4) == std::vector<std::int64_t>{1, 2, 4});
    CHECK(divisors(36) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 9, 12, 18, 36});
    for (std::int64_t n = 1; n <= 300; ++n) {
        std::vector<std::int64_t> trial;
        for (std::int64_t d = 1; d <= n; ++d) {
            if (n % d == 0) trial.push_back(d);
        }
        REQUIRE(divisors(n) == trial);
        std::int64_t phi = 0;
        for (std::int64_t h = 1; h <= n; ++h) phi += std::gcd(h, n) == 1;
        REQUIRE(euler_phi(n) == phi);
    }
    const std::vector<std::int64_t> v{1, 2};
    CHECK(lcm_all(v) == 2);
    const std::vector<std::int64_t> w{4, 6, 9};
    CHECK(lcm_all(w) == 36);
    CHECK_THROWS_AS(divisors(0), std::invalid_argument);
}
