#pragma once

#include <vector>

#include "goldfish/expr.hpp"

namespace goldfish {

struct singular_matrix_error : error {
    explicit singular_matrix_error(const std::string& det)
        : error("singular symbolic matrix, determinant " + det) {}
};

// Dense matrix of expressions; only the rational fragment is supported.
class sym_matrix {
public:
    sym_matrix() = default;
    sym_matrix(int rows, int cols, const expr& fill);
    static sym_matrix identity(context_ptr ctx, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    expr& at(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
    const expr& at(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

    friend sym_matrix operator*(const sym_matrix& a, const sym_matrix& b);
    friend sym_matrix operator-(const sym_matrix& a, const sym_matrix& b);

    bool is_zero() const;

    expr determinant() const;
    sym_matrix adjugate() const;
    // inverse as adjugate / determinant; throws singular_matrix_error
    sym_matrix inverse() const;

    sym_matrix transpose() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<expr> data_;
};

// Solves A x = b by Gaussian elimination over the rational-function field.
std::vector<expr> solve_linear(const sym_matrix& a, const std::vector<expr>& b);

}  // namespace goldfish
