#pragma once

#include <Eigen/Dense>

#include "kalmi/linops.hpp"
#include "kalmi/rng.hpp"

namespace kalmi::test {

// Brute-force determinant by cofactor expansion along the first row.
// Deliberately independent of any factorization in the library; only usable
// at small n.
inline double cofactor_det(const Matrix& m) {
    const Eigen::Index n = m.rows();
    if (n == 1) return m(0, 0);
    double acc = 0.0;
    double sign = 1.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        Matrix minor(n - 1, n - 1);
        for (Eigen::Index i = 1; i < n; ++i) {
            Eigen::Index out_c = 0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == c) continue;
                minor(i - 1, out_c++) = m(i, j);
            }
        }
        acc += sign * m(0, c) * cofactor_det(minor);
        sign = -sign;
    }
    return acc;
}

inline SymMatrix random_spd(RandomSource& rng, int dim, double ridge = 1.0) {
    Matrix a = rng.gaussian_matrix(dim, dim);
    return SymMatrix(symmetrized(a * a.transpose() +
                                 ridge * Matrix::Identity(dim, dim)));
}

inline Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

inline Matrix scalar_mat(double v) {
    Matrix m(1, 1);
    m << v;
    return m;
}

inline Vector scalar_vec(double v) {
    Vector x(1);
    x << v;
    return x;
}

}  // namespace kalmi::test
