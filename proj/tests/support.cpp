#include "support.hpp"

namespace floqlab::test {

Matrix Rng::matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = Complex(uniform(), uniform());
    return m;
}

Matrix Rng::hermitian(int n, double scale) {
    Matrix m = matrix(n, n);
    return scale * 0.5 * (m + m.adjoint().eval());
}

Matrix Rng::unitary(int n) {
    const Matrix h = hermitian(n);
    return linalg::expm_skew(h, 1.0);
}

Matrix Rng::contraction(int n, double norm_bound) {
    Matrix m = matrix(n, n);
    const double norm = linalg::op_norm(m);
    return m * (norm_bound / norm);
}

Vector Rng::vector(int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex(uniform(), uniform());
    return v;
}

Vector Rng::unit_vector(int n) {
    Vector v = vector(n);
    v /= v.norm();
    return v;
}

}  // namespace floqlab::test
