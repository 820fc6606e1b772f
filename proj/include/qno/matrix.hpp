#pragma once

#include <cstddef>
#include <vector>

namespace qno {

// Dense real row-major matrix, zero-initialized.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const std::vector<double>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transposed() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& v);

double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

enum class Symmetry { Symmetric, Antisymmetric, General };

// Square matrix with a symmetry tag; the tag is verified at construction to 1e-12.
// Momentum operators are stored as the real antisymmetric matrix M with p = i*M,
// so all arithmetic in the library stays real.
class OperatorMatrix {
public:
    OperatorMatrix(Matrix data, Symmetry symmetry);

    std::size_t dim() const { return data_.rows(); }
    const Matrix& data() const { return data_; }
    Symmetry symmetry() const { return symmetry_; }

    double operator()(std::size_t i, std::size_t j) const { return data_(i, j); }

private:
    Matrix data_;
    Symmetry symmetry_;
};

} // namespace qno
