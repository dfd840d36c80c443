#include "goldfish/sym_matrix.hpp"

namespace goldfish {

sym_matrix::sym_matrix(int rows, int cols, const expr& fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

sym_matrix sym_matrix::identity(context_ptr ctx, int n) {
    sym_matrix m(n, n, expr::integer(ctx, 0));
    for (int k = 0; k < n; ++k) m.at(k, k) = expr::integer(ctx, 1);
    return m;
}

sym_matrix operator*(const sym_matrix& a, const sym_matrix& b) {
    if (a.cols_ != b.rows_) throw error("matrix dimension mismatch");
    sym_matrix out(a.rows_, b.cols_, expr());
    for (int r = 0; r < a.rows_; ++r)
        for (int c = 0; c < b.cols_; ++c) {
            expr acc = a.at(r, 0) * b.at(0, c);
            for (int k = 1; k < a.cols_; ++k) acc = acc + a.at(r, k) * b.at(k, c);
            out.at(r, c) = acc;
        }
    return out;
}

sym_matrix operator-(const sym_matrix& a, const sym_matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw error("matrix dimension mismatch");
    sym_matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k)
        out.data_[k] = out.data_[k] - b.data_[k];
    return out;
}

bool sym_matrix::is_zero() const {
    for (const auto& e : data_)
        if (!e.is_zero()) return false;
    return true;
}

namespace {

// determinant of the submatrix given by `rows` x the columns marked in `colmask`
expr det_rec(const sym_matrix& m, int row, unsigned colmask,
             std::map<unsigned, expr>& memo, const context_ptr& ctx) {
    if (colmask == 0) return expr::integer(ctx, 1);
    auto it = memo.find(colmask);
    if (it != memo.end()) return it->second;
    expr acc = expr::integer(ctx, 0);
    int sign = 1;
    for (int c = 0; c < m.cols(); ++c) {
        if (!(colmask & (1u << c))) continue;
        const expr& entry = m.at(row, c);
        if (!(entry.is_rational() && entry.rational().is_zero())) {
            const expr sub = det_rec(m, row + 1, colmask & ~(1u << c), memo, ctx);
            const expr term = entry * sub;
            acc = sign > 0 ? acc + term : acc - term;
        }
        sign = -sign;  // parity of the column's position among the remaining ones
    }
    memo.emplace(colmask, acc);
    return acc;
}

}  // namespace

expr sym_matrix::determinant() const {
    if (rows_ != cols_) throw error("determinant of non-square matrix");
    if (rows_ > 20) throw error("determinant: matrix too large");
    const context_ptr ctx = data_.front().ctx();
    std::map<unsigned, expr> memo;
    return det_rec(*this, 0, (1u << rows_) - 1u, memo, ctx);
}

sym_matrix sym_matrix::adjugate() const {
    if (rows_ != cols_) throw error("adjugate of non-square matrix");
    const int n = rows_;
    const context_ptr ctx = data_.front().ctx();
    sym_matrix out(n, n, expr::integer(ctx, 0));
    if (n == 1) {
        out.at(0, 0) = expr::integer(ctx, 1);
        return out;
    }
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            // cofactor C_{r c}, placed transposed
            sym_matrix minor(n - 1, n - 1, expr());
            for (int i = 0, mi = 0; i < n; ++i) {
                if (i == r) continue;
                for (int j = 0, mj = 0; j < n; ++j) {
                    if (j == c) continue;
                    minor.at(mi, mj) = at(i, j);
                    ++mj;
                }
                ++mi;
            }
            expr cof = minor.determinant();
            if ((r + c) % 2 != 0) cof = -cof;
            out.at(c, r) = cof;
        }
    return out;
}

sym_matrix sym_matrix::inverse() const {
    const expr det = determinant();
    if (det.is_zero()) throw singular_matrix_error(det.str());
    sym_matrix adj = adjugate();
    for (auto& e : adj.data_) e = e / det;
    return adj;
}

sym_matrix sym_matrix::transpose() const {
    sym_matrix out(cols_, rows_, expr());
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    return out;
}

std::vector<expr> solve_linear(const sym_matrix& a, const std::vector<expr>& b) {
    const int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n)
        throw error("solve_linear: dimension mismatch");
    const context_ptr ctx = b.empty() ? context_ptr() : b.front().ctx();

    sym_matrix m(n, n + 1, expr());
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) m.at(r, c) = a.at(r, c);
        m.at(r, n) = b[static_cast<std::size_t>(r)];
    }

    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!m.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw singular_matrix_error("0");
        if (pivot != col)
            for (int c = col; c <= n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
        const expr inv_p = expr::integer(ctx, 1) / m.at(col, col);
        for (int c = col; c <= n; ++c) m.at(col, c) = m.at(col, c) * inv_p;
        for (int r = 0; r < n; ++r) {
            if (r == col || m.at(r, col).is_zero()) continue;
            const expr factor = m.at(r, col);
            for (int c = col; c <= n; ++c)
                m.at(r, c) = m.at(r, c) - factor * m.at(col, c);
        }
    }

    std::vector<expr> x;
    x.reserve(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) x.push_back(m.at(r, n));
    return x;
}

}  // namespace goldfish
