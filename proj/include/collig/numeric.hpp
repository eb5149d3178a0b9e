#pragma once

#include <vector>

#include "collig/matrix.hpp"
#include "collig/rng.hpp"
#include "collig/scalar.hpp"

namespace collig {

// Float-only dense kernels (SVD-backed). Exact mode never needs these; the
// generic elimination in Mat<F> covers both fields everywhere else.

// Singular values in descending order.
std::vector<double> singular_values(const Mat<Cx>& m);

double spectral_norm(const Mat<Cx>& m);   // largest singular value
double smallest_singular_value(const Mat<Cx>& m);

// Haar-distributed unitary via QR of a complex Gaussian matrix with the
// standard phase correction (Q scaled column-wise by R_ii/|R_ii|).
Mat<Cx> haar_unitary(int n, Rng& rng);

// max-norm distance from unitarity: ||u* u - 1||_max.
double unitary_defect(const Mat<Cx>& u);

}  // namespace collig
