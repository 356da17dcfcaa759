#ifndef EDGEWORD_MATRIX_HPP
#define EDGEWORD_MATRIX_HPP

#include "edgeword/errors.hpp"
#include "edgeword/rational.hpp"

#include <vector>

namespace edgeword {

// Small dense matrix over an exact (or float) scalar type. Row-major.
// Everything here is sized for chains with at most a few thousand states,
// so the cubic algorithms are fine and clarity wins over cleverness.
template <typename T>
class Mat {
  public:
    Mat() : n_(0), m_(0) {}
    Mat(int n, int m, const T& init = T(0)) : n_(n), m_(m), a_(size_t(n) * m, init) {}

    static Mat identity(int n) {
        Mat I(n, n);
        for (int i = 0; i < n; ++i) I(i, i) = T(1);
        return I;
    }

    int rows() const { return n_; }
    int cols() const { return m_; }

    T& operator()(int i, int j) { return a_[size_t(i) * m_ + j]; }
    const T& operator()(int i, int j) const { return a_[size_t(i) * m_ + j]; }

    bool operator==(const Mat& o) const {
        return n_ == o.n_ && m_ == o.m_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const {
        Mat r(n_, m_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }
    Mat operator-(const Mat& o) const {
        Mat r(n_, m_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }
    Mat operator*(const Mat& o) const {
        Mat r(n_, o.m_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < m_; ++k) {
                const T& aik = (*this)(i, k);
                if (aik == T(0)) continue; // exact chains are sparse-ish
                for (int j = 0; j < o.m_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }
    Mat operator*(const T& s) const {
        Mat r(n_, m_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
        return r;
    }

    Mat transpose() const {
        Mat r(m_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < m_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

  private:
    int n_, m_;
    std::vector<T> a_;
};

using RMat = Mat<Rat>;
using RVec = std::vector<Rat>;

// x = A^{-1} b via Gaussian elimination with first-nonzero pivoting.
// Exact over Rat; throws SingularMatrix when rank-deficient.
RVec solve(RMat A, RVec b);

// X = A^{-1} B (column-wise solve with a single factorization pass).
RMat solve(RMat A, RMat B);

RMat inverse(const RMat& A);

// row vector times matrix, matrix times column vector, dot product
RVec vec_mat(const RVec& v, const RMat& A);
RVec mat_vec(const RMat& A, const RVec& v);
Rat dot(const RVec& a, const RVec& b);

} // namespace edgeword

#endif
