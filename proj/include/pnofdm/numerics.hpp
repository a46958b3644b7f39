#pragma once

#include "pnofdm/types.hpp"

#include <optional>
#include <span>

namespace pnofdm {

// Unitary transforms, 1/sqrt(N) in both directions.
ComplexVec dft_unitary(std::span<const cplx> v);
ComplexVec idft_unitary(std::span<const cplx> v);

// (a (*) b)_k = sum_l a_l b_{(k-l) mod N}
ComplexVec circ_convolve(std::span<const cplx> a, std::span<const cplx> b);

// Solves x (*) y = z for y. The time-domain samples sqrt(N)*idft(x) must all
// exceed tol in magnitude; tol defaults to 1e-9 * max of those magnitudes.
ComplexVec circ_deconvolve(std::span<const cplx> z,
                           std::span<const cplx> x,
                           std::optional<double> tol = std::nullopt);

// C(r, c) = c[(r - c) mod N]
ComplexMat circulant_from(std::span<const cplx> c);

// lambda_k = sum_l c_l exp(+j 2 pi k l / N), paired with eigenvector column k of
// the unitary DFT matrix D, so that C = D diag(lambda) D^H.
ComplexVec circulant_eigs(std::span<const cplx> c);

// Unitary DFT matrix, D(k, n) = exp(-j 2 pi k n / N) / sqrt(N).
ComplexMat dft_matrix(std::size_t n);

inline constexpr std::size_t default_small_matrix_bound = 64;

// Cholesky solve of A X = B for Hermitian positive-definite A.
ComplexMat hermitian_solve(const ComplexMat& a,
                           const ComplexMat& b,
                           std::size_t max_dim = default_small_matrix_bound);

} // namespace pnofdm
