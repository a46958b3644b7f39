#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pnofdm {

using cplx = std::complex<double>;
using ComplexVec = std::vector<cplx>;

// Dense row-major complex matrix.
class ComplexMat
{
public:
    ComplexMat() = default;
    ComplexMat(std::size_t rows, std::size_t cols, cplx fill = {});

    static ComplexMat identity(std::size_t n);
    static ComplexMat diagonal(const ComplexVec& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const ComplexVec& values() const { return data_; }

    ComplexMat adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool is_hermitian(double rel_tol = 1e-12) const;

    ComplexMat& operator+=(const ComplexMat& o);
    ComplexMat& operator-=(const ComplexMat& o);
    ComplexMat& operator*=(cplx s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    ComplexVec data_;
};

ComplexMat operator+(ComplexMat a, const ComplexMat& b);
ComplexMat operator-(ComplexMat a, const ComplexMat& b);
ComplexMat operator*(const ComplexMat& a, const ComplexMat& b);
ComplexMat operator*(cplx s, ComplexMat a);
ComplexVec operator*(const ComplexMat& a, const ComplexVec& v);

class SingularDeconvolution : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class LayoutInfeasible : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class NumericalFailure : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace pnofdm
