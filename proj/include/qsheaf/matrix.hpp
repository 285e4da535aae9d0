#ifndef QSHEAF_MATRIX_HPP
#define QSHEAF_MATRIX_HPP

#include "qsheaf/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qsheaf {

/* Dense exact matrices over Rat or Fp.  Pivoting is always "first nonzero in
   column order" so that ranks, kernel bases and solutions are bit-stable.
   Over the rationals the forward elimination for rank() is fraction-free
   (Bareiss) on a denominator-cleared integer copy; kernel_basis and solve use
   a plain reduced echelon form, which at the sizes this project meets
   (nothing beyond ~60x60) is never the bottleneck. */
template <class K>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, K(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = K(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    K& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    // writes `block` at row/col offset
    void insert_block(std::size_t r0, std::size_t c0, const Matrix& block) {
        for (std::size_t i = 0; i < block.rows(); ++i)
            for (std::size_t j = 0; j < block.cols(); ++j)
                at(r0 + i, c0 + j) = block.at(i, j);
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Matrix::apply size");
        std::vector<K> out(rows_, K(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero(at(i, j))) out[i] += at(i, j) * v[j];
        return out;
    }

    std::size_t rank() const {
        if (rows_ == 0 || cols_ == 0) return 0;
        if constexpr (std::is_same_v<K, Rat>) return rank_bareiss();
        else return echelon_copy().pivots.size();
    }

    struct KernelBasis {
        std::vector<std::vector<K>> vectors;
        std::vector<std::size_t> free_cols;  // vectors[k] has its unit at free_cols[k]
    };

    /* Basis of the right null space.  Vectors come from the reduced echelon
       form with free variables set to 1 in column order, so the basis is
       canonical and each vector satisfies m*v = 0 exactly. */
    KernelBasis kernel_with_coords() const {
        Echelon e = echelon_copy();
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : e.pivots) is_pivot[p] = true;
        KernelBasis out;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (is_pivot[j]) continue;
            std::vector<K> v(cols_, K(0));
            v[j] = K(1);
            for (std::size_t r = 0; r < e.pivots.size(); ++r)
                v[e.pivots[r]] = -e.m.at(r, j);
            out.vectors.push_back(std::move(v));
            out.free_cols.push_back(j);
        }
        return out;
    }

    std::vector<std::vector<K>> kernel_basis() const {
        return kernel_with_coords().vectors;
    }

    // some x with m*x = b, or nullopt when inconsistent
    std::optional<std::vector<K>> solve(const std::vector<K>& b) const {
        if (b.size() != rows_) throw std::invalid_argument("Matrix::solve size");
        Matrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        Echelon e = aug.echelon_copy();
        for (auto p : e.pivots)
            if (p == cols_) return std::nullopt;  // pivot in the b column
        std::vector<K> x(cols_, K(0));
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            x[e.pivots[r]] = e.m.at(r, cols_);
        return x;
    }

    // column span membership, used for extension-class realizability
    bool in_column_span(const std::vector<K>& v) const {
        return transpose_solve_exists(v);
    }

private:
    struct Echelon {
        Matrix m;                      // RREF
        std::vector<std::size_t> pivots;  // pivot column per row
    };

    Echelon echelon_copy() const {
        Echelon e{*this, {}};
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t piv = row;
            while (piv < rows_ && is_zero(e.m.at(piv, col))) ++piv;
            if (piv == rows_) continue;
            if (piv != row)
                for (std::size_t j = 0; j < cols_; ++j)
                    std::swap(e.m.at(piv, j), e.m.at(row, j));
            K inv = K(1) / e.m.at(row, col);
            for (std::size_t j = col; j < cols_; ++j) e.m.at(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row || is_zero(e.m.at(i, col))) continue;
                K f = e.m.at(i, col);
                for (std::size_t j = col; j < cols_; ++j)
                    e.m.at(i, j) -= f * e.m.at(row, j);
            }
            e.pivots.push_back(col);
            ++row;
        }
        return e;
    }

    std::size_t rank_bareiss() const;

    bool transpose_solve_exists(const std::vector<K>& v) const {
        // rank test: rank([m | v]) == rank(m) with m's columns as generators
        Matrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = v[i];
        }
        return aug.rank() == rank();
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<K> a_;
};

/* Fraction-free elimination on the denominator-cleared integer matrix.
   One-step Bareiss keeps entries as genuine minors, so there is no
   intermediate fraction and no coefficient explosion beyond determinant
   size. */
template <>
inline std::size_t Matrix<Rat>::rank_bareiss() const {
    std::vector<std::vector<Int>> m(rows_, std::vector<Int>(cols_));
    for (std::size_t i = 0; i < rows_; ++i) {
        Int lcm = 1;
        for (std::size_t j = 0; j < cols_; ++j) {
            Int den = boost::multiprecision::denominator(at(i, j));
            lcm = boost::multiprecision::lcm(lcm, den);
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rat& q = at(i, j);
            m[i][j] = boost::multiprecision::numerator(q) *
                      (lcm / boost::multiprecision::denominator(q));
        }
    }
    std::size_t rank = 0;
    Int prev = 1;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
        std::size_t piv = rank;
        while (piv < rows_ && m[piv][col] == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != rank) std::swap(m[piv], m[rank]);
        const Int pivot = m[rank][col];
        for (std::size_t i = rank + 1; i < rows_; ++i) {
            for (std::size_t j = col + 1; j < cols_; ++j)
                m[i][j] = (m[i][j] * pivot - m[i][col] * m[rank][j]) / prev;
            m[i][col] = 0;
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

template <class K>
inline std::size_t rank_of(const Matrix<K>& m) { return m.rank(); }

}  // namespace qsheaf

#endif
