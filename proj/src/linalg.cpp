#include "mmpr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace mmpr {

namespace {

void require_finite(const std::vector<double>& entries, const char* what) {
    for (double e : entries) {
        if (!std::isfinite(e)) {
            throw DomainError(std::string(what) + " has non-finite entries");
        }
    }
}

void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix shapes do not match");
    }
}

void require_same_size(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw DimensionError("vector sizes do not match");
    }
}

}  // namespace

Vector::Vector(std::initializer_list<double> values)
    : entries_(values) {
    require_finite(entries_, "vector");
}

Vector::Vector(std::vector<double> values)
    : entries_(std::move(values)) {
    require_finite(entries_, "vector");
}

Vector& Vector::operator+=(const Vector& rhs) {
    require_same_size(*this, rhs);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs[i];
    require_finite(entries_, "vector sum");
    return *this;
}

Vector& Vector::operator-=(const Vector& rhs) {
    require_same_size(*this, rhs);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs[i];
    require_finite(entries_, "vector difference");
    return *this;
}

Vector& Vector::operator*=(double s) {
    for (double& e : entries_) e *= s;
    require_finite(entries_, "scaled vector");
    return *this;
}

double Vector::norm2() const {
    double acc = 0.0;
    for (double e : entries_) acc += e * e;
    return std::sqrt(acc);
}

double Vector::max_abs() const {
    double acc = 0.0;
    for (double e : entries_) acc = std::max(acc, std::abs(e));
    return acc;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator*(double s, Vector v) { return v *= s; }

double dot(const Vector& a, const Vector& b) {
    require_same_size(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_consistency();
}

Matrix::Matrix(std::size_t rows, std::size_t cols,
               std::initializer_list<double> entries)
    : rows_(rows), cols_(cols), entries_(entries) {
    check_consistency();
}

void Matrix::check_consistency() const {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError("matrix entry count does not match rows*cols");
    }
    require_finite(entries_, "matrix");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require_same_shape(*this, rhs);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] += rhs.entries_[i];
    require_finite(entries_, "matrix sum");
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    require_same_shape(*this, rhs);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] -= rhs.entries_[i];
    require_finite(entries_, "matrix difference");
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& e : entries_) e *= s;
    require_finite(entries_, "scaled matrix");
    return *this;
}

double Matrix::inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) row += std::abs((*this)(i, j));
        best = std::max(best, row);
    }
    return best;
}

double Matrix::max_abs() const {
    double acc = 0.0;
    for (double e : entries_) acc = std::max(acc, std::abs(e));
    return acc;
}

double Matrix::trace() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
        acc += (*this)(i, i);
    return acc;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(double s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("inner dimensions do not match in matrix product");
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    require_finite(out.data(), "matrix product");
    return out;
}

Vector operator*(const Matrix& m, const Vector& v) {
    if (m.cols() != v.size()) {
        throw DimensionError("matrix-vector dimensions do not match");
    }
    Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        acc = std::max(acc, std::abs(a.data()[i] - b.data()[i]));
    return acc;
}

double max_abs_diff(const Vector& a, const Vector& b) {
    require_same_size(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc = std::max(acc, std::abs(a[i] - b[i]));
    return acc;
}

namespace {

constexpr double kPivotTolerance = 1e-13;

struct LuFactors {
    Matrix lu;
    std::vector<std::size_t> perm;
};

LuFactors lu_factor(const Matrix& m) {
    if (!m.square()) {
        throw DimensionError("solve requires a square matrix");
    }
    const std::size_t n = m.rows();
    const double tol = kPivotTolerance * m.inf_norm();
    LuFactors f{m, std::vector<std::size_t>(n)};
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        double pivot = std::abs(f.lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(f.lu(r, col)) > pivot) {
                pivot = std::abs(f.lu(r, col));
                pivot_row = r;
            }
        }
        if (!(pivot > tol)) {
            throw SingularityError(
                "matrix singular to tolerance (pivot " +
                    std::to_string(pivot) + ")",
                pivot);
        }
        if (pivot_row != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(f.lu(col, j), f.lu(pivot_row, j));
            std::swap(f.perm[col], f.perm[pivot_row]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = f.lu(r, col) / f.lu(col, col);
            f.lu(r, col) = factor;
            for (std::size_t j = col + 1; j < n; ++j)
                f.lu(r, j) -= factor * f.lu(col, j);
        }
    }
    return f;
}

Vector lu_solve(const LuFactors& f, const Vector& v) {
    const std::size_t n = f.lu.rows();
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = v[f.perm[i]];
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

}  // namespace

Vector solve(const Matrix& m, const Vector& v) {
    if (m.rows() != v.size()) {
        throw DimensionError("right-hand side size does not match matrix");
    }
    return lu_solve(lu_factor(m), v);
}

Matrix solve(const Matrix& m, const Matrix& b) {
    if (m.rows() != b.rows()) {
        throw DimensionError("right-hand side rows do not match matrix");
    }
    const LuFactors f = lu_factor(m);
    Matrix x(b.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        Vector col(b.rows());
        for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
        const Vector sol = lu_solve(f, col);
        for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = sol[i];
    }
    return x;
}

Matrix mat_exp(const Matrix& m, double t) {
    if (!m.square()) {
        throw DimensionError("mat_exp requires a square matrix");
    }
    if (!std::isfinite(t)) {
        throw DomainError("mat_exp requires a finite time");
    }
    const std::size_t n = m.rows();
    Matrix a = t * m;

    // Scale so the Pade argument stays well inside its accuracy radius.
    constexpr double kTheta = 0.25;
    int squarings = 0;
    const double norm = a.inf_norm();
    if (norm > kTheta) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta)));
        a *= std::ldexp(1.0, -squarings);
    }

    // Degree-6 diagonal Pade coefficients of e^x.
    constexpr double c[7] = {1.0,
                             1.0 / 2.0,
                             5.0 / 44.0,
                             1.0 / 66.0,
                             1.0 / 792.0,
                             1.0 / 15840.0,
                             1.0 / 665280.0};

    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix ident = Matrix::identity(n);

    // U odd part, V even part; exp(a) ~ (V - U)^{-1} (V + U).
    const Matrix u = a * (c[1] * ident + c[3] * a2 + c[5] * a4);
    const Matrix v = c[0] * ident + c[2] * a2 + c[4] * a4 + c[6] * (a4 * a2);

    Matrix result = solve(v - u, v + u);
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

double determinant(const Matrix& m) {
    if (!m.square()) {
        throw DimensionError("determinant requires a square matrix");
    }
    switch (m.rows()) {
        case 0:
            return 1.0;
        case 1:
            return m(0, 0);
        case 2:
            return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        default: {
            // LU-based fallback for 4x4/5x5.
            try {
                LuFactors f = lu_factor(m);
                double det = 1.0;
                for (std::size_t i = 0; i < m.rows(); ++i) det *= f.lu(i, i);
                std::size_t swaps = 0;
                std::vector<std::size_t> p = f.perm;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    while (p[i] != i) {
                        std::swap(p[i], p[p[i]]);
                        ++swaps;
                    }
                }
                return (swaps % 2 == 0) ? det : -det;
            } catch (const SingularityError&) {
                return 0.0;
            }
        }
    }
}

namespace {

using Complex = std::complex<double>;

std::vector<Complex> roots_quadratic(double trace, double det) {
    const Complex disc = Complex(trace * trace - 4.0 * det, 0.0);
    const Complex s = std::sqrt(disc);
    return {0.5 * (Complex(trace) + s), 0.5 * (Complex(trace) - s)};
}

// Roots of x^3 + p1 x^2 + p2 x + p3 with real coefficients.
std::vector<Complex> roots_cubic(double p1, double p2, double p3) {
    // Depressed cubic y^3 + py + q with x = y - p1/3.
    const double shift = p1 / 3.0;
    const double p = p2 - p1 * p1 / 3.0;
    const double q = 2.0 * p1 * p1 * p1 / 27.0 - p1 * p2 / 3.0 + p3;

    const double disc = 0.25 * q * q + p * p * p / 27.0;
    std::vector<Complex> roots;
    if (disc > 0.0) {
        // One real root, complex pair.
        const double sd = std::sqrt(disc);
        const double u = std::cbrt(-0.5 * q + sd);
        const double v = std::cbrt(-0.5 * q - sd);
        const double y0 = u + v;
        const double re = -0.5 * y0;
        const double im = 0.5 * std::sqrt(3.0) * (u - v);
        roots = {Complex(y0), Complex(re, im), Complex(re, -im)};
    } else {
        // Three real roots, trigonometric form.
        const double r = std::sqrt(std::max(-p * p * p / 27.0, 0.0));
        double cos_arg = (r > 0.0) ? -0.5 * q / r : 0.0;
        cos_arg = std::clamp(cos_arg, -1.0, 1.0);
        const double phi = std::acos(cos_arg);
        const double mag = 2.0 * std::sqrt(std::max(-p / 3.0, 0.0));
        for (int k = 0; k < 3; ++k) {
            roots.emplace_back(
                mag * std::cos((phi + 2.0 * std::numbers::pi * k) / 3.0), 0.0);
        }
    }
    for (Complex& root : roots) root -= shift;
    return roots;
}

}  // namespace

std::vector<Complex> eigenvalues(const Matrix& m) {
    if (!m.square()) {
        throw DimensionError("eigenvalues require a square matrix");
    }
    const std::size_t n = m.rows();
    if (n > 3) {
        throw UnsupportedDimensionError(
            "closed-form eigenvalues support sizes up to 3");
    }
    std::vector<Complex> roots;
    if (n == 0) {
        return roots;
    } else if (n == 1) {
        roots = {Complex(m(0, 0))};
    } else if (n == 2) {
        roots = roots_quadratic(m.trace(), determinant(m));
    } else {
        // Characteristic polynomial lambda^3 - tr lambda^2 + c2 lambda - det.
        const double tr = m.trace();
        const double c2 = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) +
                          (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
                          (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
        roots = roots_cubic(-tr, c2, -determinant(m));
    }
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return roots;
}

}  // namespace mmpr
