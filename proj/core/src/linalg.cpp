#include "abelphi/linalg.hpp"

#include <utility>

#include "abelphi/errors.hpp"

namespace abelphi {

IntMatrix zero_matrix(std::size_t rows, std::size_t cols) { return IntMatrix(rows, std::vector<mpz_class>(cols, 0)); }

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

std::size_t columns(const IntMatrix& a) { return a.empty() ? 0 : a[0].size(); }

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = columns(b);
    if (columns(a) != k) throw DomainError("multiply: shape mismatch");
    IntMatrix c = zero_matrix(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

IntMatrix transpose(const IntMatrix& a) {
    IntMatrix t = zero_matrix(columns(a), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < columns(a); ++j) t[j][i] = a[i][j];
    return t;
}

namespace {

void row_addmul(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += q * m[src][j];
}

void col_addmul(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
    for (auto& row : m) row[dst] += q * row[src];
}

void col_swap(IntMatrix& m, std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

}  // namespace

SmithForm smith_form(const IntMatrix& a0) {
    IntMatrix a = a0;
    const std::size_t n = a.size(), m = columns(a);
    SmithForm out;
    out.U = identity_matrix(n);
    out.V = identity_matrix(m);
    std::size_t t = 0;
    while (t < n && t < m) {
        // pivot: smallest nonzero absolute value in the trailing block
        std::size_t pi = n, pj = m;
        for (std::size_t i = t; i < n; ++i)
            for (std::size_t j = t; j < m; ++j)
                if (a[i][j] != 0 && (pi == n || abs(a[i][j]) < abs(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == n) break;
        std::swap(a[t], a[pi]);
        std::swap(out.U[t], out.U[pi]);
        col_swap(a, t, pj);
        col_swap(out.V, t, pj);

        bool clean = true;
        for (std::size_t i = t + 1; i < n; ++i) {
            if (a[i][t] == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
            row_addmul(a, i, t, -q);
            row_addmul(out.U, i, t, -q);
            if (a[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < m; ++j) {
            if (a[t][j] == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
            col_addmul(a, j, t, -q);
            col_addmul(out.V, j, t, -q);
            if (a[t][j] != 0) clean = false;
        }
        if (!clean) continue;  // a smaller remainder now exists; pivot again

        // divisibility of the trailing block
        bool fixed = false;
        for (std::size_t i = t + 1; i < n && !fixed; ++i)
            for (std::size_t j = t + 1; j < m; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    row_addmul(a, t, i, 1);
                    row_addmul(out.U, t, i, 1);
                    fixed = true;
                    break;
                }
        if (fixed) continue;
        if (a[t][t] < 0) {
            for (auto& v : a[t]) v = -v;
            for (auto& v : out.U[t]) v = -v;
        }
        out.d.push_back(a[t][t]);
        ++t;
    }
    return out;
}

std::vector<mpz_class> elementary_divisors(const IntMatrix& a) { return smith_form(a).d; }

IntMatrix integer_kernel(const IntMatrix& a) {
    const std::size_t m = columns(a);
    SmithForm s = smith_form(a);
    const std::size_t r = s.d.size();
    IntMatrix k = zero_matrix(m, m - r);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = r; j < m; ++j) k[i][j - r] = s.V[i][j];
    return k;
}

bool solve_integer(const IntMatrix& a, const std::vector<mpz_class>& b, std::vector<mpz_class>& x) {
    const std::size_t n = a.size(), m = columns(a);
    if (b.size() != n) throw DomainError("solve_integer: shape mismatch");
    SmithForm s = smith_form(a);
    std::vector<mpz_class> c(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[i] += s.U[i][j] * b[j];
    std::vector<mpz_class> y(m, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i < s.d.size()) {
            if (c[i] % s.d[i] != 0) return false;
            y[i] = c[i] / s.d[i];
        } else if (c[i] != 0) {
            return false;
        }
    }
    x.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) x[i] += s.V[i][j] * y[j];
    return true;
}

}  // namespace abelphi
