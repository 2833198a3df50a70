#include "abelphi/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "abelphi/errors.hpp"

namespace abelphi {

u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    if (m == 1) return 0;
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        i64 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw DomainError("invmod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
    return t < 0 ? static_cast<u64>(t + static_cast<i64>(m)) : static_cast<u64>(t);
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    u64 g = std::gcd(a, b);
    u128 r = static_cast<u128>(a / g) * b;
    if (r >> 64) throw DomainError("lcm overflow");
    return static_cast<u64>(r);
}

u64 mod_floor(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    return r < 0 ? static_cast<u64>(r + static_cast<i64>(m)) : static_cast<u64>(r);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic for all 64-bit n
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

u64 next_prime(u64 n) {
    u64 c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

namespace {

u64 rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1, q = 1, ys = 2;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        u64 r = 1;
        const u64 m = 128;
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
                k += m;
            } while (k < r && d == 1);
            r <<= 1;
        } while (d == 1);
        if (d == n) {
            do {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

Factorization factorize(u64 n) {
    Factorization res;
    if (n <= 1) return res;
    std::vector<u64> ps;
    for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ps.push_back(p);
            n /= p;
        }
    }
    factor_rec(n, ps);
    std::sort(ps.begin(), ps.end());
    for (u64 p : ps) {
        if (!res.empty() && res.back().first == p)
            ++res.back().second;
        else
            res.emplace_back(p, 1);
    }
    return res;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> ds{1};
    for (auto [p, k] : factorize(n)) {
        std::size_t cur = ds.size();
        u64 pk = 1;
        for (int i = 1; i <= k; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < cur; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

u64 euler_phi(u64 n) {
    u64 r = n;
    for (auto [p, k] : factorize(n)) r = r / p * (p - 1);
    return r;
}

int mobius(u64 n) {
    int s = 1;
    for (auto [p, k] : factorize(n)) {
        if (k > 1) return 0;
        s = -s;
    }
    return s;
}

int valuation(u64 n, u64 p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int valuation(const mpz_class& n, u64 p) {
    mpz_class pp(static_cast<unsigned long>(p));
    mpz_class r;
    return static_cast<int>(mpz_remove(r.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

u64 ipow(u64 b, unsigned e) {
    u128 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= b;
        if (r >> 63) throw DomainError("ipow overflow");
    }
    return static_cast<u64>(r);
}

bool is_prime_power(u64 n, u64* prime) {
    if (n < 2) return false;
    auto f = factorize(n);
    if (f.size() != 1) return false;
    if (prime) *prime = f[0].first;
    return true;
}

bool is_power_of(u64 n, u64 p) {
    if (n == 0) return false;
    while (n % p == 0) n /= p;
    return n == 1;
}

u64 mult_order(u64 a, u64 m) {
    if (m == 1) return 1;
    u64 ord = euler_phi(m);
    for (auto [q, k] : factorize(ord)) {
        for (int i = 0; i < k; ++i) {
            if (powmod(a, ord / q, m) == 1)
                ord /= q;
            else
                break;
        }
    }
    return ord;
}

u64 primitive_root_prime_power(u64 q, int k) {
    u64 m = ipow(q, static_cast<unsigned>(k));
    u64 ph = m / q * (q - 1);
    auto fs = factorize(ph);
    for (u64 g = 2; g < m; ++g) {
        if (g % q == 0) continue;
        bool ok = true;
        for (auto [r, e] : fs) {
            if (powmod(g, ph / r, m) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    if (m == 2) return 1;
    throw DomainError("no primitive root");
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(u64 n) {
    u64 r = isqrt(n);
    return r * r == n;
}

u64 crt_pair(u64 a, u64 m1, u64 b, u64 m2) {
    if (m1 == 1) return b % m2;
    if (m2 == 1) return a % m1;
    // x = a + m1 * t, t = (b - a) / m1 mod m2
    u64 inv = invmod(m1 % m2, m2);
    u64 diff = mod_floor(static_cast<i64>(b % m2) - static_cast<i64>(a % m2), m2);
    u64 t = mulmod(diff, inv, m2);
    return a % m1 + m1 * t;
}

}  // namespace abelphi
