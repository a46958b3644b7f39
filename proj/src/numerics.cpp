#include "pnofdm/numerics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace pnofdm {

// ComplexMat

ComplexMat::ComplexMat(std::size_t rows, std::size_t cols, cplx fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

ComplexMat ComplexMat::identity(std::size_t n)
{
    ComplexMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMat ComplexMat::diagonal(const ComplexVec& d)
{
    ComplexMat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

ComplexMat ComplexMat::adjoint() const
{
    ComplexMat m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m(c, r) = std::conj((*this)(r, c));
    return m;
}

cplx ComplexMat::trace() const
{
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
        t += (*this)(i, i);
    return t;
}

double ComplexMat::frobenius_norm() const
{
    double s = 0.0;
    for (const auto& v : data_)
        s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMat::max_abs() const
{
    double m = 0.0;
    for (const auto& v : data_)
        m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMat::is_hermitian(double rel_tol) const
{
    if (rows_ != cols_)
        return false;
    const double scale = std::max(max_abs(), 1e-300);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > rel_tol * scale)
                return false;
    return true;
}

ComplexMat& ComplexMat::operator+=(const ComplexMat& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += o.data_[i];
    return *this;
}

ComplexMat& ComplexMat::operator-=(const ComplexMat& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= o.data_[i];
    return *this;
}

ComplexMat& ComplexMat::operator*=(cplx s)
{
    for (auto& v : data_)
        v *= s;
    return *this;
}

ComplexMat operator+(ComplexMat a, const ComplexMat& b) { return a += b; }
ComplexMat operator-(ComplexMat a, const ComplexMat& b) { return a -= b; }
ComplexMat operator*(cplx s, ComplexMat a) { return a *= s; }

ComplexMat operator*(const ComplexMat& a, const ComplexMat& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix dimension mismatch");
    ComplexMat m(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx v = a(r, k);
            if (v == cplx{})
                continue;
            for (std::size_t c = 0; c < b.cols(); ++c)
                m(r, c) += v * b(k, c);
        }
    return m;
}

ComplexVec operator*(const ComplexMat& a, const ComplexVec& v)
{
    if (a.cols() != v.size())
        throw std::invalid_argument("matrix-vector dimension mismatch");
    ComplexVec out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < a.cols(); ++c)
            s += a(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

// FFT

namespace {

class plan_cache
{
public:
    static plan_cache& instance()
    {
        static plan_cache cache;
        return cache;
    }

    fftw_plan get(int n, int sign)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end())
            return it->second;
        ComplexVec in(n), out(n);
        fftw_plan p = fftw_plan_dft_1d(n,
                                       reinterpret_cast<fftw_complex*>(in.data()),
                                       reinterpret_cast<fftw_complex*>(out.data()),
                                       sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p)
            throw NumericalFailure("fftw planning failed");
        plans_.emplace(key, p);
        return p;
    }

    ~plan_cache()
    {
        for (auto& kv : plans_)
            fftw_destroy_plan(kv.second);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

ComplexVec transform(std::span<const cplx> v, int sign)
{
    if (v.empty())
        throw std::invalid_argument("transform of empty vector");
    const int n = static_cast<int>(v.size());
    fftw_plan p = plan_cache::instance().get(n, sign);
    ComplexVec out(v.size());
    // Out-of-place complex transforms leave the input untouched.
    fftw_execute_dft(p,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(v.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& x : out)
        x *= scale;
    return out;
}

void require_same_length(std::size_t a, std::size_t b)
{
    if (a != b)
        throw std::invalid_argument("length mismatch");
    if (a == 0)
        throw std::invalid_argument("empty input");
}

} // namespace

ComplexVec dft_unitary(std::span<const cplx> v) { return transform(v, FFTW_FORWARD); }

ComplexVec idft_unitary(std::span<const cplx> v) { return transform(v, FFTW_BACKWARD); }

ComplexVec circ_convolve(std::span<const cplx> a, std::span<const cplx> b)
{
    require_same_length(a.size(), b.size());
    const double root_n = std::sqrt(static_cast<double>(a.size()));
    ComplexVec at = idft_unitary(a);
    ComplexVec bt = idft_unitary(b);
    for (std::size_t n = 0; n < at.size(); ++n)
        at[n] *= bt[n] * root_n;
    return dft_unitary(at);
}

ComplexVec circ_deconvolve(std::span<const cplx> z, std::span<const cplx> x, std::optional<double> tol)
{
    require_same_length(z.size(), x.size());
    const double root_n = std::sqrt(static_cast<double>(x.size()));
    ComplexVec xt = idft_unitary(x);
    double peak = 0.0;
    for (auto& v : xt) {
        v *= root_n;
        peak = std::max(peak, std::abs(v));
    }
    const double threshold = tol.value_or(1e-9 * peak);
    ComplexVec zt = idft_unitary(z);
    for (std::size_t n = 0; n < zt.size(); ++n) {
        if (!(std::abs(xt[n]) > threshold))
            throw SingularDeconvolution("time-domain sample " + std::to_string(n) + " below deconvolution tolerance");
        zt[n] /= xt[n];
    }
    return dft_unitary(zt);
}

ComplexMat circulant_from(std::span<const cplx> c)
{
    if (c.empty())
        throw std::invalid_argument("empty input");
    const std::size_t n = c.size();
    ComplexMat m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t col = 0; col < n; ++col)
            m(r, col) = c[(r + n - col) % n];
    return m;
}

ComplexVec circulant_eigs(std::span<const cplx> c)
{
    if (c.empty())
        throw std::invalid_argument("empty input");
    ComplexVec lam = idft_unitary(c);
    const double root_n = std::sqrt(static_cast<double>(c.size()));
    for (auto& v : lam)
        v *= root_n;
    return lam;
}

ComplexMat dft_matrix(std::size_t n)
{
    ComplexMat d(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
            const std::size_t km = (k * m) % n;
            d(k, m) = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>(km) / static_cast<double>(n));
        }
    return d;
}

ComplexMat hermitian_solve(const ComplexMat& a, const ComplexMat& b, std::size_t max_dim)
{
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n)
        throw std::invalid_argument("hermitian_solve: A must be square and non-empty");
    if (n > max_dim)
        throw std::invalid_argument("hermitian_solve: dimension exceeds small-matrix bound");
    if (b.rows() != n)
        throw std::invalid_argument("hermitian_solve: B row count mismatch");

    const double norm_a = a.frobenius_norm();
    const double pivot_floor = 1e-14 * norm_a;

    // Lower-triangular L with A = L L^H.
    ComplexMat l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k)
            d -= std::norm(l(j, k));
        if (!(d > pivot_floor))
            throw SingularMatrix("hermitian_solve: matrix is not positive definite");
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = a(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }

    ComplexMat x = b;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = x(i, c);
            for (std::size_t k = 0; k < i; ++k)
                s -= l(i, k) * x(k, c);
            x(i, c) = s / l(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            cplx s = x(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k)
                s -= std::conj(l(k, ii)) * x(k, c);
            x(ii, c) = s / l(ii, ii);
        }
    }
    return x;
}

} // namespace pnofdm
