#include "esnfb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "esnfb/error.hpp"

namespace esnfb {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw ShapeError("Matrix: " + std::to_string(data_.size()) + " entries for a " +
                         std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

Matrix& Matrix::operator*=(double c) noexcept {
    for (auto& x : data_) x *= c;
    return *this;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void matvec_into(const Matrix& m, std::span<const double> v, std::span<double> out) {
    if (m.cols() != v.size() || m.rows() != out.size()) {
        throw ShapeError("matvec: " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         " matrix against vector of length " + std::to_string(v.size()));
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * v[j];
        out[i] = s;
    }
}

Vector matvec(const Matrix& m, std::span<const double> v) {
    Vector out(m.rows());
    matvec_into(m, v, out);
    return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matmul: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

double max_row_sum_norm(const Matrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (double x : m.row(i)) s += std::abs(x);
        best = std::max(best, s);
    }
    return best;
}

namespace {

// In-place Householder reduction to upper Hessenberg form. Entries below the
// first subdiagonal are zeroed explicitly.
void reduce_to_hessenberg(Matrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) alpha += a(i, k) * a(i, k);
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) continue;
        if (a(k + 1, k) > 0.0) alpha = -alpha;

        std::fill(v.begin(), v.end(), 0.0);
        v[k + 1] = a(k + 1, k) - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += v[i] * v[i];
        if (vnorm2 == 0.0) continue;

        // A <- H A with H = I - 2 v v^T / (v^T v)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
            s *= 2.0 / vnorm2;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        // A <- A H
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
        }
        a(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

// Eigenvalues of the trailing 2x2 block [[a, b], [c, d]].
void block_eigenvalues(double a, double b, double c, double d,
                       std::vector<std::complex<double>>& out) {
    const double half_trace = 0.5 * (a + d);
    const double disc = 0.25 * (a - d) * (a - d) + b * c;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        // avoid cancellation: compute the larger-magnitude root first
        const double big = half_trace + std::copysign(root, half_trace);
        const double det = a * d - b * c;
        const double small = big != 0.0 ? det / big : half_trace - root;
        out.emplace_back(big, 0.0);
        out.emplace_back(small, 0.0);
    } else {
        const double im = std::sqrt(-disc);
        out.emplace_back(half_trace, im);
        out.emplace_back(half_trace, -im);
    }
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
    if (!m.square()) throw ShapeError("eigenvalues: matrix is not square");
    if (!m.all_finite()) throw NumericalFailure("eigenvalues: non-finite matrix entry");

    const std::size_t n = m.rows();
    std::vector<std::complex<double>> out;
    out.reserve(n);
    if (n == 0) return out;

    Matrix h = m;
    reduce_to_hessenberg(h);

    double norm = 0.0;
    for (double x : h.entries()) norm = std::max(norm, std::abs(x));
    if (norm == 0.0) {
        out.assign(n, {0.0, 0.0});
        return out;
    }
    const double deflate_tol = 1e-12 * norm;
    const std::size_t max_sweeps = 100 * n;
    std::size_t sweeps = 0;

    // Active window is rows/cols [lo, hi]; hi shrinks as eigenvalues deflate.
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    std::size_t its_since_deflation = 0;
    double exceptional_shift = 0.0;

    while (hi >= 0) {
        // find the start of the unreduced block ending at hi
        std::ptrdiff_t lo = hi;
        while (lo > 0 && std::abs(h(lo, lo - 1)) > deflate_tol) --lo;

        if (lo == hi) {
            out.emplace_back(h(hi, hi) + exceptional_shift, 0.0);
            --hi;
            its_since_deflation = 0;
            continue;
        }
        if (lo == hi - 1) {
            block_eigenvalues(h(hi - 1, hi - 1) + exceptional_shift, h(hi - 1, hi), h(hi, hi - 1),
                              h(hi, hi) + exceptional_shift, out);
            hi -= 2;
            its_since_deflation = 0;
            continue;
        }

        if (++sweeps > max_sweeps) {
            throw NumericalFailure("eigenvalues: QR iteration did not converge");
        }

        // Francis double shift from the trailing 2x2 block; every tenth sweep
        // without progress uses an ad hoc shift to break cycles.
        double s, t;
        if (its_since_deflation > 0 && its_since_deflation % 10 == 0) {
            const double shift = h(hi, hi);
            for (std::ptrdiff_t i = 0; i <= hi; ++i) h(i, i) -= shift;
            exceptional_shift += shift;
            const double w = std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2));
            s = 1.5 * w;
            t = 0.4375 * w * w;
        } else {
            s = h(hi - 1, hi - 1) + h(hi, hi);
            t = h(hi - 1, hi - 1) * h(hi, hi) - h(hi - 1, hi) * h(hi, hi - 1);
        }
        ++its_since_deflation;

        // first column of (H - s1 I)(H - s2 I) = H^2 - s H + t I, restricted to 3 entries
        double x = h(lo, lo) * h(lo, lo) + h(lo, lo + 1) * h(lo + 1, lo) - s * h(lo, lo) + t;
        double y = h(lo + 1, lo) * (h(lo, lo) + h(lo + 1, lo + 1) - s);
        double z = h(lo + 1, lo) * h(lo + 2, lo + 1);

        for (std::ptrdiff_t k = lo; k <= hi - 2; ++k) {
            // Householder reflector mapping (x, y, z) onto e1
            const double alpha = -std::copysign(std::sqrt(x * x + y * y + z * z), x);
            double v0 = x - alpha, v1 = y, v2 = z;
            const double vn = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
            if (vn != 0.0) {
                v0 /= vn;
                v1 /= vn;
                v2 /= vn;
                const std::ptrdiff_t col_start = std::max(lo, k - 1);
                for (std::ptrdiff_t j = col_start; j < static_cast<std::ptrdiff_t>(n); ++j) {
                    const double d = 2.0 * (v0 * h(k, j) + v1 * h(k + 1, j) + v2 * h(k + 2, j));
                    h(k, j) -= d * v0;
                    h(k + 1, j) -= d * v1;
                    h(k + 2, j) -= d * v2;
                }
                const std::ptrdiff_t row_end = std::min(hi, k + 3);
                for (std::ptrdiff_t i = 0; i <= row_end; ++i) {
                    const double d = 2.0 * (v0 * h(i, k) + v1 * h(i, k + 1) + v2 * h(i, k + 2));
                    h(i, k) -= d * v0;
                    h(i, k + 1) -= d * v1;
                    h(i, k + 2) -= d * v2;
                }
            }
            x = h(k + 1, k);
            y = h(k + 2, k);
            if (k < hi - 2) z = h(k + 3, k);
        }

        // final 2x2 Givens-equivalent reflector on rows/cols hi-1, hi
        {
            const std::ptrdiff_t k = hi - 1;
            const double alpha = -std::copysign(std::sqrt(x * x + y * y), x);
            double v0 = x - alpha, v1 = y;
            const double vn = std::sqrt(v0 * v0 + v1 * v1);
            if (vn != 0.0) {
                v0 /= vn;
                v1 /= vn;
                for (std::ptrdiff_t j = k - 1; j < static_cast<std::ptrdiff_t>(n); ++j) {
                    const double d = 2.0 * (v0 * h(k, j) + v1 * h(k + 1, j));
                    h(k, j) -= d * v0;
                    h(k + 1, j) -= d * v1;
                }
                for (std::ptrdiff_t i = 0; i <= hi; ++i) {
                    const double d = 2.0 * (v0 * h(i, k) + v1 * h(i, k + 1));
                    h(i, k) -= d * v0;
                    h(i, k + 1) -= d * v1;
                }
            }
        }
        // restore exact Hessenberg structure below the subdiagonal
        for (std::ptrdiff_t i = lo + 2; i <= hi; ++i)
            for (std::ptrdiff_t j = lo; j < i - 1; ++j) h(i, j) = 0.0;
    }
    return out;
}

double spectral_radius(const Matrix& m) {
    double rho = 0.0;
    for (const auto& ev : eigenvalues(m)) rho = std::max(rho, std::abs(ev));
    return rho;
}

Matrix scale_to_spectral_radius(const Matrix& m, double target) {
    if (!(target > 0.0)) throw InvalidArgument("scale_to_spectral_radius: target must be positive");
    const double rho = spectral_radius(m);
    if (rho == 0.0) throw DegenerateMatrix("scale_to_spectral_radius: spectral radius is zero");
    return (target / rho) * m;
}

}  // namespace esnfb
