#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "mmpr/errors.hpp"

namespace mmpr {

/// Dense real vector with finite entries.
class Vector {
  public:
    Vector() = default;
    explicit Vector(std::size_t n) : entries_(n, 0.0) {}
    Vector(std::initializer_list<double> values);
    explicit Vector(std::vector<double> values);

    static Vector zeros(std::size_t n) { return Vector(n); }

    std::size_t size() const { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    double& operator[](std::size_t i) { return entries_[i]; }

    const std::vector<double>& data() const { return entries_; }

    Vector& operator+=(const Vector& rhs);
    Vector& operator-=(const Vector& rhs);
    Vector& operator*=(double s);

    double norm2() const;
    double max_abs() const;

    friend bool operator==(const Vector&, const Vector&) = default;

  private:
    std::vector<double> entries_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator*(double s, Vector v);
double dot(const Vector& a, const Vector& b);

/// Dense row-major real matrix with finite entries. Sizes in this
/// library never exceed 5x5.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::size_t rows, std::size_t cols,
           std::initializer_list<double> entries);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols) {
        return Matrix(rows, cols);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    double& operator()(std::size_t i, std::size_t j) {
        return entries_[i * cols_ + j];
    }

    const std::vector<double>& data() const { return entries_; }

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(double s);

    /// Maximum absolute row sum.
    double inf_norm() const;
    double max_abs() const;
    double trace() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    void check_consistency() const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(double s, Matrix m);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& m, const Vector& v);

double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const Vector& a, const Vector& b);

/// e^{M t} by scaling-and-squaring with a degree-6 diagonal Pade
/// approximant. Unconditionally accurate for the well-conditioned
/// small matrices this library deals with.
Matrix mat_exp(const Matrix& m, double t);

/// Solution of M w = v by partially pivoted LU. A pivot below
/// 1e-13 * ||M||_inf raises SingularityError carrying the pivot.
Vector solve(const Matrix& m, const Vector& v);

/// Column-wise solve of M X = B.
Matrix solve(const Matrix& m, const Matrix& b);

/// Eigenvalues via the closed-form characteristic polynomial
/// (quadratic for 2x2, Cardano for 3x3). Sizes above 3 are not
/// supported. Roots are ordered by descending real part, then
/// descending imaginary part.
std::vector<std::complex<double>> eigenvalues(const Matrix& m);

double determinant(const Matrix& m);

}  // namespace mmpr
