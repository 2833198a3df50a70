#pragma once

#include <vector>

#include <gmpxx.h>

namespace abelphi {

// Dense integer matrix, row major.
using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix zero_matrix(std::size_t rows, std::size_t cols);
IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);
std::size_t columns(const IntMatrix& a);

struct SmithForm {
    IntMatrix U, V;             // unimodular, U A V = diag(d) padded with zeros
    std::vector<mpz_class> d;   // nonzero invariant factors, d_i | d_{i+1}
};
SmithForm smith_form(const IntMatrix& a);
std::vector<mpz_class> elementary_divisors(const IntMatrix& a);

// Z-basis of {x : A x = 0}, as the columns of the result (rows = columns(A)).
IntMatrix integer_kernel(const IntMatrix& a);
// Some integer x with A x = b; false when no integer solution exists.
bool solve_integer(const IntMatrix& a, const std::vector<mpz_class>& b, std::vector<mpz_class>& x);

}  // namespace abelphi
