#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace esnfb {

using Vector = std::vector<double>;

// Dense row-major real matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    // Throws ShapeError unless entries.size() == rows * cols.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::span<const double> entries() const noexcept { return data_; }
    [[nodiscard]] std::span<double> entries() noexcept { return data_; }

    [[nodiscard]] bool all_finite() const noexcept;

    Matrix& operator*=(double c) noexcept;
    friend Matrix operator*(double c, Matrix m) noexcept { return m *= c; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);

Vector matvec(const Matrix& m, std::span<const double> v);

// out = m * v without allocating; out must have m.rows() entries.
void matvec_into(const Matrix& m, std::span<const double> v, std::span<double> out);

Matrix matmul(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& m);

// Largest absolute row sum (the induced infinity norm).
double max_row_sum_norm(const Matrix& m);

// All eigenvalues of a real square matrix: Householder reduction to upper
// Hessenberg form, then Francis double-shift QR. Complex pairs come out as
// conjugates. Throws ShapeError for non-square input and NumericalFailure
// for non-finite entries or if the iteration budget (100 * n sweeps) runs out.
std::vector<std::complex<double>> eigenvalues(const Matrix& m);

double spectral_radius(const Matrix& m);

// m * (target / spectral_radius(m)). Throws InvalidArgument for target <= 0
// and DegenerateMatrix if the spectral radius is zero.
Matrix scale_to_spectral_radius(const Matrix& m, double target);

}  // namespace esnfb
