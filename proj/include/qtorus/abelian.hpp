#pragma once

// Exact linear algebra over Z: Smith normal form, ranks, kernels, linear
// systems, and a complete decision procedure for nonnegative integer
// solutions of linear systems with optional per-row congruences.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qtorus {

using Int = mpz_class;
using IntVec = std::vector<Int>;

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    IntMatrix transposed() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    IntVec apply(const IntVec& x) const;  // A * x

    // Exact determinant by fraction-free (Bareiss) elimination.
    Int determinant() const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row[i] += c * row[j], col[i] += c * col[j]
    void add_row_multiple(std::size_t i, std::size_t j, const Int& c);
    void add_col_multiple(std::size_t i, std::size_t j, const Int& c);
    void negate_row(std::size_t i);
    void negate_col(std::size_t i);

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0.
struct SnfDecomposition {
    IntMatrix u;  // rows x rows
    IntMatrix d;  // rows x cols
    IntMatrix v;  // cols x cols
};

SnfDecomposition smith_normal_form(const IntMatrix& a);

std::size_t integer_rank(const IntMatrix& a);

struct LinearSolution {
    IntVec particular;                   // one x with A x = b
    std::vector<IntVec> kernel_basis;    // Z-basis of ker A
};

// Solves A x = b over Z; empty optional when no integral solution exists.
std::optional<LinearSolution> solve_over_Z(const IntMatrix& a, const IntVec& b);

// Z-basis of { x : A x = 0 }.
std::vector<IntVec> kernel_basis(const IntMatrix& a);

// Z-basis of the lattice spanned by the columns of `gens`
// (unimodular column reduction; the input columns need not be independent).
std::vector<IntVec> column_lattice_basis(const IntMatrix& gens);

// Z-basis of { x : for every row r, (A x)_r = 0 when moduli[r] = 0,
// (A x)_r == 0 mod moduli[r] otherwise }.
std::vector<IntVec> kernel_basis_with_congruences(const IntMatrix& a,
                                                  const IntVec& moduli);

// Row r is an equation over Z when moduli[r] = 0 and a congruence
// mod moduli[r] >= 1 otherwise.
struct DiophantineSystem {
    IntMatrix a;
    IntVec b;
    IntVec moduli;

    void validate() const;
};

// Complete decision procedure: some nu in N^k with A nu = b row-wise
// (exact or modular per `moduli`), or nullopt when no solution exists.
// The witness is deterministic (least 1-norm, then lexicographic, on the
// search path).
std::optional<IntVec> solve_nonnegative(const DiophantineSystem& sys);

// Same, restricted to nu != 0.
std::optional<IntVec> solve_nonnegative_nonzero(const DiophantineSystem& sys);

// All minimal nonzero solutions of M x = 0, x >= 0 (Contejean-Devie).
std::vector<IntVec> minimal_homogeneous_solutions(const IntMatrix& m);

}  // namespace qtorus
