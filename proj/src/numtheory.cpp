#include "circle/numtheory.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace circle {

namespace {

constexpr std::int64_t kScanLimit = 1000;

std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

void require_coprime(std::int64_t h, std::int64_t k, const char* where) {
    if (k <= 0) {
        throw std::invalid_argument(std::string(where) + ": k must be positive");
    }
    if (gcd(h, k) != 1) {
        throw std::invalid_argument(std::string(where) + ": gcd(" + std::to_string(h) + ", " +
                                    std::to_string(k) + ") != 1");
    }
}

void require_in_farey(std::int64_t h, std::int64_t k, std::int64_t N) {
    if (N < 1) {
        throw std::invalid_argument("Farey order must be >= 1");
    }
    if (k < 1 || k > N || h < 0 || h >= k || gcd(h, k) != 1) {
        throw std::invalid_argument(std::to_string(h) + "/" + std::to_string(k) +
                                    " is not in F_" + std::to_string(N));
    }
}

}  // namespace

Fraction::Fraction(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::invalid_argument("Fraction with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    // __int128 keeps the cross products exact for any int64 inputs.
    auto lhs = static_cast<__int128>(a.num_) * b.den_;
    auto rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::complex<double> ExactComplex::to_complex() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

int jacobi_symbol(std::int64_t a, std::int64_t n) {
    if (n <= 0 || n % 2 == 0) {
        throw std::invalid_argument("jacobi_symbol: n must be odd and positive, got " +
                                    std::to_string(n));
    }
    a = mod(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::int64_t neg_mod_inverse(std::int64_t h, std::int64_t k) {
    require_coprime(h, k, "neg_mod_inverse");
    if (k == 1) return 0;
    // Extended Euclid on (h mod k, k).
    std::int64_t old_r = mod(h, k), r = k;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    return mod(-old_s, k);
}

Rational dedekind_sum(std::int64_t h, std::int64_t k) {
    require_coprime(h, k, "dedekind_sum");
    h = mod(h, k);
    // s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk))/12, with s(k,h) = s(k mod h, h).
    Rational total = 0;
    int sign = 1;
    while (h != 0) {
        Rational hk = make_rational(h, k);
        Rational kh = make_rational(k, h);
        Rational term = Rational(-1, 4) + (hk + kh + make_rational(1, h * k)) / 12;
        total += sign * term;
        sign = -sign;
        std::int64_t next_h = k % h;
        k = h;
        h = next_h;
    }
    return total;
}

Rational dedekind_sum_direct(std::int64_t h, std::int64_t k) {
    require_coprime(h, k, "dedekind_sum_direct");
    h = mod(h, k);
    // ((mu/k)) ((h mu/k)) = (2mu - k)(2r - k) / (4k^2), r = h mu mod k (never 0).
    BigInt acc = 0;
    for (std::int64_t mu = 1; mu < k; ++mu) {
        std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(h) * mu) % k);
        acc += BigInt(2 * mu - k) * BigInt(2 * r - k);
    }
    return Rational(acc, BigInt(4) * k * k);
}

std::vector<Fraction> farey(std::int64_t N) {
    if (N < 1) {
        throw std::invalid_argument("farey: order must be >= 1");
    }
    std::vector<Fraction> out;
    std::int64_t a = 0, b = 1, c = 1, d = N;
    out.emplace_back(0, 1);
    while (c < d) {
        out.emplace_back(c, d);
        std::int64_t t = (N + b) / d;
        std::int64_t next_c = t * c - a;
        std::int64_t next_d = t * d - b;
        a = c;
        b = d;
        c = next_c;
        d = next_d;
    }
    return out;
}

FareyNeighbors farey_neighbors_mediant(std::int64_t h, std::int64_t k, std::int64_t N) {
    require_in_farey(h, k, N);
    // Successor a/b: a*k - b*h = 1, i.e. b = -h^{-1} (mod k), largest b <= N.
    std::int64_t b0 = neg_mod_inverse(h, k);
    std::int64_t b = b0 + k * ((N - b0) / k);
    std::int64_t a = (1 + b * h) / k;
    // Predecessor c/d: h*d - c*k = 1, d = h^{-1} (mod k), largest d <= N.
    std::int64_t d0 = mod(-b0, k);
    if (k == 1) d0 = 0;
    std::int64_t d = d0 + k * ((N - d0) / k);
    std::int64_t c = (h * d - 1) / k;
    if (h * d - 1 - c * k != 0) {
        // k == 1 with h == 0 gives c = -1 exactly; anything else is a logic error.
        throw std::logic_error("farey_neighbors_mediant: inconsistent predecessor");
    }
    return {Fraction(c, d), Fraction(a, b)};
}

FareyNeighbors farey_neighbors_scan(std::int64_t h, std::int64_t k, std::int64_t N) {
    require_in_farey(h, k, N);
    auto seq = farey(N);
    const Fraction target(h, k);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] != target) continue;
        Fraction pred = i == 0 ? Fraction(seq.back().num() - seq.back().den(), seq.back().den())
                               : seq[i - 1];
        Fraction succ = i + 1 == seq.size() ? Fraction(1, 1) : seq[i + 1];
        return {pred, succ};
    }
    throw std::logic_error("farey_neighbors_scan: fraction not found");
}

FareyNeighbors farey_neighbors(std::int64_t h, std::int64_t k, std::int64_t N) {
    return N <= kScanLimit ? farey_neighbors_scan(h, k, N) : farey_neighbors_mediant(h, k, N);
}

FordArcEndpoints ford_arc_endpoints(std::int64_t h, std::int64_t k, std::int64_t N) {
    auto nb = farey_neighbors(h, k, N);
    const std::int64_t kp = nb.pred.den();
    const std::int64_t ks = nb.succ.den();
    const Rational hk = make_rational(h, k);
    const BigInt kk = BigInt(k) * k;
    const BigInt dp = kk + BigInt(kp) * kp;
    const BigInt ds = kk + BigInt(ks) * ks;

    FordArcEndpoints out;
    out.k_pred = kp;
    out.k_succ = ks;
    out.alpha_initial = {hk - Rational(BigInt(kp), BigInt(k) * dp), Rational(BigInt(1), dp)};
    out.alpha_terminal = {hk + Rational(BigInt(ks), BigInt(k) * ds), Rational(BigInt(1), ds)};
    out.z_initial = {Rational(BigInt(k), dp), Rational(BigInt(kp), dp)};
    out.z_terminal = {Rational(BigInt(k), ds), -Rational(BigInt(ks), ds)};
    return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("divisors: n must be positive");
    }
    std::vector<std::int64_t> low, high;
    for (std::int64_t i = 1; i * i <= n; ++i) {
        if (n % i != 0) continue;
        low.push_back(i);
        if (i != n / i) high.push_back(n / i);
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

std::int64_t lcm_all(std::span<const std::int64_t> values) {
    std::int64_t acc = 1;
    for (auto v : values) {
        if (v < 1) {
            throw std::invalid_argument("lcm_all: entries must be positive");
        }
        acc = std::lcm(acc, v);
    }
    return acc;
}

}  // namespace circle
