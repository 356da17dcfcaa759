#include "edgeword/matrix.hpp"

namespace edgeword {

RMat solve(RMat A, RMat B) {
    const int n = A.rows();
    if (A.cols() != n || B.rows() != n)
        throw BadInput("solve: dimension mismatch");
    const int m = B.cols();

    // forward elimination with row swaps on the first nonzero pivot
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (A(r, col) != 0) { piv = r; break; }
        if (piv < 0) throw SingularMatrix("singular system in exact solve");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(col, j));
            for (int j = 0; j < m; ++j) std::swap(B(piv, j), B(col, j));
        }
        const Rat inv_p = Rat(1) / A(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (A(r, col) == 0) continue;
            Rat f = A(r, col) * inv_p;
            A(r, col) = 0;
            for (int j = col + 1; j < n; ++j)
                if (A(col, j) != 0) A(r, j) -= f * A(col, j);
            for (int j = 0; j < m; ++j)
                if (B(col, j) != 0) B(r, j) -= f * B(col, j);
        }
    }

    // back substitution
    RMat X(n, m);
    for (int i = n - 1; i >= 0; --i) {
        for (int j = 0; j < m; ++j) {
            Rat acc = B(i, j);
            for (int k = i + 1; k < n; ++k)
                if (A(i, k) != 0) acc -= A(i, k) * X(k, j);
            X(i, j) = acc / A(i, i);
        }
    }
    return X;
}

RVec solve(RMat A, RVec b) {
    const int n = A.rows();
    RMat B(n, 1);
    for (int i = 0; i < n; ++i) B(i, 0) = b[i];
    RMat X = solve(std::move(A), std::move(B));
    RVec x(n);
    for (int i = 0; i < n; ++i) x[i] = X(i, 0);
    return x;
}

RMat inverse(const RMat& A) { return solve(A, RMat::identity(A.rows())); }

RVec vec_mat(const RVec& v, const RMat& A) {
    RVec r(A.cols(), Rat(0));
    for (int i = 0; i < A.rows(); ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < A.cols(); ++j)
            if (A(i, j) != 0) r[j] += v[i] * A(i, j);
    }
    return r;
}

RVec mat_vec(const RMat& A, const RVec& v) {
    RVec r(A.rows(), Rat(0));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (A(i, j) != 0 && v[j] != 0) r[i] += A(i, j) * v[j];
    return r;
}

Rat dot(const RVec& a, const RVec& b) {
    Rat r = 0;
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

} // namespace edgeword
