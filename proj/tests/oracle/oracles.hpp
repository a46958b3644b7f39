#pragma once

// Brute-force reference computations used by the tests. Nothing here calls
// into the library's transform or estimation code.

#include "pnofdm/types.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using pnofdm::cplx;
using pnofdm::ComplexMat;
using pnofdm::ComplexVec;

inline constexpr double pi = std::numbers::pi;

// Naive unitary DFT, sign = -1 forward, +1 inverse.
inline ComplexVec dft(const ComplexVec& v, int sign = -1)
{
    const std::size_t n = v.size();
    ComplexVec out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx s = 0.0;
        for (std::size_t m = 0; m < n; ++m)
            s += v[m] * std::polar(1.0, sign * 2.0 * pi * static_cast<double>((k * m) % n) / n);
        out[k] = s / std::sqrt(static_cast<double>(n));
    }
    return out;
}

inline ComplexMat dft_matrix(std::size_t n)
{
    ComplexMat d(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m)
            d(k, m) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), -2.0 * pi * static_cast<double>((k * m) % n) / n);
    return d;
}

inline ComplexMat matmul(const ComplexMat& a, const ComplexMat& b)
{
    ComplexMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

inline ComplexVec matvec(const ComplexMat& a, const ComplexVec& v)
{
    ComplexVec out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            out[i] += a(i, k) * v[k];
    return out;
}

inline ComplexMat adjoint(const ComplexMat& a)
{
    ComplexMat b(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            b(j, i) = std::conj(a(i, j));
    return b;
}

inline ComplexMat diag(const ComplexVec& d)
{
    ComplexMat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

inline ComplexVec direct_circ_convolve(const ComplexVec& a, const ComplexVec& b)
{
    const std::size_t n = a.size();
    ComplexVec out(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            out[k] += a[l] * b[(k + n - l) % n];
    return out;
}

// R_{k,l} = (1/N^2) sum_m sum_n psi(|m-n|) exp(-j 2 pi (m k - n l) / N)
inline ComplexMat direct_R_pp(double beta, double ts, int n)
{
    ComplexMat r(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            cplx s = 0.0;
            for (int m = 0; m < n; ++m)
                for (int q = 0; q < n; ++q) {
                    const double psi = std::exp(-pi * beta * std::abs(m - q) * ts);
                    s += psi * std::polar(1.0, -2.0 * pi * static_cast<double>(m * k - q * l) / n);
                }
            r(k, l) = s / static_cast<double>(n * n);
        }
    return r;
}

// Per-subcarrier received sample: P_0 H_k X_k + sum_{l != k} P_{k-l} H_l X_l.
inline ComplexVec subcarrier_synthesis(const ComplexVec& x, const ComplexVec& h, const ComplexVec& p_f)
{
    const std::size_t n = x.size();
    ComplexVec y(n);
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = p_f[0] * h[k] * x[k];
        for (std::size_t l = 0; l < n; ++l)
            if (l != k)
                y[k] += p_f[(k + n - l) % n] * h[l] * x[l];
    }
    return y;
}

inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Textbook Gray 16-QAM bit error rate at E_s/N_0 = snr.
inline double ber_16qam_awgn(double snr)
{
    const double a = std::sqrt(snr / 5.0);
    return (3.0 * q_function(a) + 2.0 * q_function(3.0 * a) - q_function(5.0 * a)) / 4.0;
}

// Same under Rayleigh fading by numerical integration over the exponential SNR.
inline double ber_16qam_rayleigh(double mean_snr)
{
    const int steps = 400000;
    const double upper = 60.0; // in units of the mean
    const double h = upper / steps;
    double s = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double u = (i + 0.5) * h;
        s += std::exp(-u) * ber_16qam_awgn(u * mean_snr);
    }
    return s * h;
}

inline ComplexVec random_vec(std::size_t n, std::mt19937_64& rng, double scale = 1.0)
{
    std::normal_distribution<double> g(0.0, scale / std::sqrt(2.0));
    ComplexVec v(n);
    for (auto& x : v)
        x = {g(rng), g(rng)};
    return v;
}

inline double max_abs_diff(const ComplexVec& a, const ComplexVec& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double norm2(const ComplexVec& v)
{
    double s = 0.0;
    for (const auto& x : v)
        s += std::norm(x);
    return std::sqrt(s);
}

} // namespace oracle
