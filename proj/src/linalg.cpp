#include "gp/linalg.hpp"

namespace gp {

bool Matrix::is_zero() const {
    for (const auto& v : a)
        if (v != 0) return false;
    return true;
}

Matrix multiply(const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows) throw AlgebraError("matrix shape mismatch");
    Matrix C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            const Rational& x = A(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < B.cols; ++j)
                if (B(k, j) != 0) C(i, j) += x * B(k, j);
        }
    return C;
}

namespace {

std::vector<std::vector<mpz_class>> integer_rows(const Matrix& M) {
    std::vector<std::vector<mpz_class>> R(M.rows, std::vector<mpz_class>(M.cols));
    for (std::size_t i = 0; i < M.rows; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < M.cols; ++j)
            if (M(i, j) != 0) l = lcm(l, mpz_class(M(i, j).get_den()));
        for (std::size_t j = 0; j < M.cols; ++j) {
            mpq_class v = M(i, j) * l;
            R[i][j] = v.get_num();
        }
    }
    return R;
}

// Bareiss elimination in place; returns rank, sets det_sign to the row-swap parity.
int bareiss(std::vector<std::vector<mpz_class>>& R, std::size_t cols, int& det_sign) {
    const std::size_t rows = R.size();
    mpz_class prev = 1;
    std::size_t r = 0;
    det_sign = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && R[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            std::swap(R[p], R[r]);
            det_sign = -det_sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                R[i][j] = R[r][c] * R[i][j] - R[i][c] * R[r][j];
                mpz_divexact(R[i][j].get_mpz_t(), R[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            R[i][c] = 0;
        }
        prev = R[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace

int rank(const Matrix& M) {
    if (M.rows == 0 || M.cols == 0) return 0;
    auto R = integer_rows(M);
    int s;
    return bareiss(R, M.cols, s);
}

Rational determinant(const Matrix& M) {
    if (M.rows != M.cols) throw AlgebraError("determinant of non-square matrix");
    if (M.rows == 0) return 1;
    mpz_class scale = 1;
    for (std::size_t i = 0; i < M.rows; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < M.cols; ++j)
            if (M(i, j) != 0) l = lcm(l, mpz_class(M(i, j).get_den()));
        scale *= l;
    }
    auto R = integer_rows(M);
    int s;
    int rk = bareiss(R, M.cols, s);
    if (rk < static_cast<int>(M.rows)) return 0;
    Rational d(R[M.rows - 1][M.cols - 1] * s, scale);
    d.canonicalize();
    return d;
}

Matrix rref(const Matrix& M, std::vector<std::size_t>& pivots) {
    Matrix R = M;
    pivots.clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < R.cols && r < R.rows; ++c) {
        std::size_t p = r;
        while (p < R.rows && R(p, c) == 0) ++p;
        if (p == R.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < R.cols; ++j) std::swap(R(p, j), R(r, j));
        Rational inv = 1 / R(r, c);
        for (std::size_t j = c; j < R.cols; ++j)
            if (R(r, j) != 0) R(r, j) *= inv;
        for (std::size_t i = 0; i < R.rows; ++i) {
            if (i == r || R(i, c) == 0) continue;
            Rational f = R(i, c);
            for (std::size_t j = c; j < R.cols; ++j)
                if (R(r, j) != 0) R(i, j) -= f * R(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return R;
}

std::vector<std::vector<Rational>> nullspace(const Matrix& M) {
    std::vector<std::size_t> piv;
    Matrix R = rref(M, piv);
    std::vector<bool> is_pivot(M.cols, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<Rational>> out;
    for (std::size_t f = 0; f < M.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(M.cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -R(i, f);
        out.push_back(std::move(v));
    }
    return out;
}

int column_rank(const std::vector<std::vector<Rational>>& cols, std::size_t len) {
    Matrix M(len, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < len; ++i) M(i, j) = cols[j][i];
    return rank(M);
}

}  // namespace gp
