#include "qtorus/abelian.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace qtorus {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : a_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    IntMatrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                p.at(i, j) += aik * rhs.at(k, j);
        }
    return p;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix difference: shape mismatch");
    IntMatrix d(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) d.a_[i] = a_[i] - rhs.a_[i];
    return d;
}

IntVec IntMatrix::apply(const IntVec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix apply: shape mismatch");
    IntVec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) y[i] += at(i, j) * x[j];
    return y;
}

Int IntMatrix::determinant() const {
    if (!is_square()) throw std::invalid_argument("determinant: matrix not square");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m.at(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, i) += c * at(k, j);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMatrix::negate_col(std::size_t i) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, i) = -at(k, i);
}

namespace {

// Applies the unimodular 2x2 [[p, q], [u, v]] to the row pair (i1, i2).
void apply_row_pair(IntMatrix& m, std::size_t i1, std::size_t i2, const Int& p,
                    const Int& q, const Int& u, const Int& v) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
        Int a = m.at(i1, c), b = m.at(i2, c);
        m.at(i1, c) = p * a + q * b;
        m.at(i2, c) = u * a + v * b;
    }
}

bool abs_less(const Int& a, const Int& b) {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
}

// Sign-normalizes the diagonal and restores d_i | d_{i+1}.
void snf_fixups(SnfDecomposition& r, std::size_t lim) {
    IntMatrix& d = r.d;
    for (std::size_t i = 0; i < lim; ++i)
        if (d.at(i, i) < 0) {
            d.negate_row(i);
            r.u.negate_row(i);
        }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < lim; ++i) {
            const Int a = d.at(i, i), b = d.at(i + 1, i + 1);
            if (b == 0) continue;
            if (a == 0) {
                d.swap_rows(i, i + 1);
                r.u.swap_rows(i, i + 1);
                d.swap_cols(i, i + 1);
                r.v.swap_cols(i, i + 1);
                changed = true;
                continue;
            }
            if (b % a == 0) continue;
            // diag(a, b) -> diag(gcd, lcm)
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                       b.get_mpz_t());
            d.add_col_multiple(i, i + 1, 1);
            r.v.add_col_multiple(i, i + 1, 1);
            // [[s, t], [-b/g, a/g]] has determinant 1
            Int mbg = -(b / g), ag = a / g;
            apply_row_pair(d, i, i + 1, s, t, mbg, ag);
            apply_row_pair(r.u, i, i + 1, s, t, mbg, ag);
            // block is now [[g, t*b], [0, a*b/g]]; clear the off-diagonal
            Int q = d.at(i, i + 1) / g;
            d.add_col_multiple(i + 1, i, -q);
            r.v.add_col_multiple(i + 1, i, -q);
            if (d.at(i + 1, i + 1) < 0) {
                d.negate_row(i + 1);
                r.u.negate_row(i + 1);
            }
            changed = true;
        }
    }
}

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SnfDecomposition r{IntMatrix::identity(m), a, IntMatrix::identity(n)};
    IntMatrix& d = r.d;
    IntMatrix& u = r.u;
    IntMatrix& v = r.v;
    const std::size_t lim = std::min(m, n);

    for (std::size_t t = 0; t < lim; ++t) {
        bool trailing_zero = false;
        for (;;) {
            // minimal-|.|-pivot in the trailing submatrix limits entry growth
            std::size_t pi = t, pj = t;
            bool found = false;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (d.at(i, j) == 0) continue;
                    if (!found || abs_less(d.at(i, j), d.at(pi, pj))) {
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            if (!found) {
                trailing_zero = true;
                break;
            }
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            bool clear = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t);
                d.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
                if (d.at(i, t) != 0) clear = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                d.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
                if (d.at(t, j) != 0) clear = false;
            }
            if (clear) break;
        }
        if (trailing_zero) break;
    }
    snf_fixups(r, lim);
    return r;
}

std::size_t integer_rank(const IntMatrix& a) {
    SnfDecomposition s = smith_normal_form(a);
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
        if (s.d.at(i, i) != 0) ++r;
    return r;
}

std::optional<LinearSolution> solve_over_Z(const IntMatrix& a, const IntVec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_over_Z: shape mismatch");
    SnfDecomposition s = smith_normal_form(a);
    const std::size_t lim = std::min(a.rows(), a.cols());
    IntVec c = s.u.apply(b);
    IntVec y(a.cols());
    std::size_t rank = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const Int* di = (i < lim) ? &s.d.at(i, i) : nullptr;
        if (di != nullptr && *di != 0) {
            if (c[i] % *di != 0) return std::nullopt;
            y[i] = c[i] / *di;
            ++rank;
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    LinearSolution sol;
    sol.particular = s.v.apply(y);
    for (std::size_t j = rank; j < a.cols(); ++j) {
        IntVec k(a.cols());
        for (std::size_t i = 0; i < a.cols(); ++i) k[i] = s.v.at(i, j);
        sol.kernel_basis.push_back(std::move(k));
    }
    return sol;
}

std::vector<IntVec> kernel_basis(const IntMatrix& a) {
    SnfDecomposition s = smith_normal_form(a);
    std::size_t rank = 0;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
        if (s.d.at(i, i) != 0) ++rank;
    std::vector<IntVec> basis;
    for (std::size_t j = rank; j < a.cols(); ++j) {
        IntVec k(a.cols());
        for (std::size_t i = 0; i < a.cols(); ++i) k[i] = s.v.at(i, j);
        basis.push_back(std::move(k));
    }
    return basis;
}

std::vector<IntVec> column_lattice_basis(const IntMatrix& gens) {
    IntMatrix m = gens;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t c = 0;
    for (std::size_t r = 0; r < rows && c < cols; ++r) {
        for (;;) {
            std::size_t pj = c;
            bool found = false;
            for (std::size_t j = c; j < cols; ++j) {
                if (m.at(r, j) == 0) continue;
                if (!found || abs_less(m.at(r, j), m.at(r, pj))) {
                    pj = j;
                    found = true;
                }
            }
            if (!found) break;
            m.swap_cols(c, pj);
            bool clear = true;
            for (std::size_t j = c + 1; j < cols; ++j) {
                if (m.at(r, j) == 0) continue;
                Int q = m.at(r, j) / m.at(r, c);
                m.add_col_multiple(j, c, -q);
                if (m.at(r, j) != 0) clear = false;
            }
            if (clear) {
                ++c;
                break;
            }
        }
    }
    std::vector<IntVec> basis;
    for (std::size_t j = 0; j < c; ++j) {
        IntVec v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = m.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<IntVec> kernel_basis_with_congruences(const IntMatrix& a,
                                                  const IntVec& moduli) {
    if (moduli.size() != a.rows())
        throw std::invalid_argument("kernel_basis_with_congruences: moduli length");
    const std::size_t k = a.cols();
    std::size_t extra = 0;
    for (const Int& d : moduli)
        if (d >= 1) ++extra;
    IntMatrix e(a.rows(), k + extra);
    std::size_t slot = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < k; ++j) e.at(i, j) = a.at(i, j);
        if (moduli[i] >= 1) e.at(i, k + slot++) = moduli[i];
    }
    std::vector<IntVec> ker = kernel_basis(e);
    IntMatrix proj(k, ker.size());
    for (std::size_t j = 0; j < ker.size(); ++j)
        for (std::size_t i = 0; i < k; ++i) proj.at(i, j) = ker[j][i];
    return column_lattice_basis(proj);
}

void DiophantineSystem::validate() const {
    if (b.size() != a.rows() || moduli.size() != a.rows())
        throw std::invalid_argument("diophantine system: shape mismatch");
    for (const Int& d : moduli)
        if (d < 0) throw std::invalid_argument("diophantine system: negative modulus");
}

namespace {

struct IntVecLess {
    bool operator()(const IntVec& a, const IntVec& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

bool all_zero(const IntVec& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

bool dominates_some(const IntVec& x, const std::vector<IntVec>& basis) {
    for (const IntVec& b : basis) {
        bool ge = true;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] < b[i]) {
                ge = false;
                break;
            }
        if (ge) return true;
    }
    return false;
}

// rows that still constrain after dropping mod-1 rows and rows whose reduced
// coefficients and right-hand side all vanish; reports plain infeasibility
// through the flag
struct NormalizedSystem {
    IntMatrix a;     // congruence rows reduced into [0, d)
    IntVec b;
    IntVec moduli;   // 0 = equation, >= 2 = congruence
    bool infeasible = false;
    bool pure_congruence = true;
};

NormalizedSystem normalize(const DiophantineSystem& sys) {
    NormalizedSystem out;
    const std::size_t k = sys.a.cols();
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < sys.a.rows(); ++i) {
        const Int& d = sys.moduli[i];
        if (d == 1) continue;
        IntVec row(k);
        Int rhs = sys.b[i];
        bool zero_row = true;
        for (std::size_t j = 0; j < k; ++j) {
            row[j] = sys.a.at(i, j);
            if (d >= 2)
                mpz_fdiv_r(row[j].get_mpz_t(), row[j].get_mpz_t(), d.get_mpz_t());
            if (row[j] != 0) zero_row = false;
        }
        if (d >= 2) mpz_fdiv_r(rhs.get_mpz_t(), rhs.get_mpz_t(), d.get_mpz_t());
        if (zero_row) {
            if (rhs != 0) out.infeasible = true;
            continue;
        }
        if (d == 0) out.pure_congruence = false;
        rows.push_back(std::move(row));
        out.b.push_back(rhs);
        out.moduli.push_back(d);
    }
    out.a = IntMatrix(rows.size(), k);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < k; ++j) out.a.at(i, j) = rows[i][j];
    return out;
}

// Column matrix for the Contejean-Devie search: the original unknowns, one
// slack column per congruence row, and optionally a trailing homogenization
// column carrying -b. With coefficients in [0, d) and rhs in [0, d) the
// congruence value a.nu - b is == 0 mod d and > -d whenever the row holds,
// so its slack quotient is automatically nonnegative and a single -d column
// suffices.
IntMatrix assemble_columns(const NormalizedSystem& sys, bool homogenize) {
    const std::size_t k = sys.a.cols();
    std::size_t slacks = 0;
    for (const Int& d : sys.moduli)
        if (d >= 2) ++slacks;
    IntMatrix m(sys.a.rows(), k + slacks + (homogenize ? 1 : 0));
    std::size_t slot = 0;
    for (std::size_t r = 0; r < sys.a.rows(); ++r) {
        for (std::size_t j = 0; j < k; ++j) m.at(r, j) = sys.a.at(r, j);
        if (sys.moduli[r] >= 2) m.at(r, k + slot++) = -sys.moduli[r];
        if (homogenize) m.at(r, m.cols() - 1) = -sys.b[r];
    }
    return m;
}

bool rhs_trivial(const NormalizedSystem& sys) {
    for (const Int& rhs : sys.b)
        if (rhs != 0) return false;
    return true;
}

// When every remaining row is a congruence, a nonnegative solution exists
// exactly when an integral one does: shifting any coordinate by the lcm of
// the moduli preserves every row. Decide on the slack-extended lattice and
// lift the witness into [0, lcm)^k.
std::optional<IntVec> solve_pure_congruence(const NormalizedSystem& sys) {
    const std::size_t k = sys.a.cols();
    const std::size_t m = sys.a.rows();
    IntMatrix ext(m, k + m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < k; ++j) ext.at(r, j) = sys.a.at(r, j);
        ext.at(r, k + r) = sys.moduli[r];
    }
    auto sol = solve_over_Z(ext, sys.b);
    if (!sol) return std::nullopt;
    Int lcm = 1;
    for (const Int& d : sys.moduli) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
    IntVec nu(k);
    for (std::size_t j = 0; j < k; ++j)
        mpz_fdiv_r(nu[j].get_mpz_t(), sol->particular[j].get_mpz_t(), lcm.get_mpz_t());
    return nu;
}

// integral relaxation: a system unsolvable over Z (slacks unconstrained)
// has no nonnegative solution either
bool integrally_solvable(const NormalizedSystem& sys) {
    const std::size_t k = sys.a.cols();
    std::size_t slacks = 0;
    for (const Int& d : sys.moduli)
        if (d >= 2) ++slacks;
    IntMatrix ext(sys.a.rows(), k + slacks);
    std::size_t slot = 0;
    for (std::size_t r = 0; r < sys.a.rows(); ++r) {
        for (std::size_t j = 0; j < k; ++j) ext.at(r, j) = sys.a.at(r, j);
        if (sys.moduli[r] >= 2) ext.at(r, k + slot++) = -sys.moduli[r];
    }
    return solve_over_Z(ext, sys.b).has_value();
}

}  // namespace

namespace {

// Breadth-first Contejean-Devie search for minimal nonzero solutions of
// M x = 0, x >= 0. When `unit_coord` names a column, its coordinate is kept
// <= 1 (a path to a solution with that coordinate 1 increments it exactly
// once, so nothing reachable is lost) and the search stops at the end of
// the first level that produced a solution accepted by `stop`.
std::vector<IntVec> cd_search(const IntMatrix& m, std::size_t unit_coord,
                              const std::function<bool(const IntVec&)>& stop) {
    const std::size_t k = m.cols(), r = m.rows();
    std::vector<IntVec> basis;
    if (k == 0) return basis;
    std::vector<IntVec> col(k, IntVec(r));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < r; ++i) col[j][i] = m.at(i, j);

    std::map<IntVec, IntVec, IntVecLess> frontier;  // x -> M x
    for (std::size_t j = 0; j < k; ++j) {
        IntVec x(k);
        x[j] = 1;
        frontier.emplace(std::move(x), col[j]);
    }
    while (!frontier.empty()) {
        bool hit = false;
        for (const auto& [x, v] : frontier)
            if (all_zero(v)) {
                basis.push_back(x);
                if (stop && stop(x)) hit = true;
            }
        if (hit) break;
        std::map<IntVec, IntVec, IntVecLess> next;
        for (const auto& [x, v] : frontier) {
            if (all_zero(v)) continue;
            for (std::size_t j = 0; j < k; ++j) {
                if (j == unit_coord && x[j] == 1) continue;
                Int dot = 0;
                for (std::size_t i = 0; i < r; ++i) dot += v[i] * col[j][i];
                if (dot >= 0) continue;
                IntVec y = x;
                ++y[j];
                if (dominates_some(y, basis) || next.count(y)) continue;
                IntVec w = v;
                for (std::size_t i = 0; i < r; ++i) w[i] += col[j][i];
                next.emplace(std::move(y), std::move(w));
            }
        }
        frontier = std::move(next);
    }
    return basis;
}

}  // namespace

std::vector<IntVec> minimal_homogeneous_solutions(const IntMatrix& m) {
    return cd_search(m, m.cols(), nullptr);
}

std::optional<IntVec> solve_nonnegative(const DiophantineSystem& sys) {
    sys.validate();
    const std::size_t vars = sys.a.cols();
    NormalizedSystem ns = normalize(sys);
    if (ns.infeasible) return std::nullopt;
    if (ns.a.rows() == 0) return IntVec(vars);
    if (ns.pure_congruence) return solve_pure_congruence(ns);
    if (!integrally_solvable(ns)) return std::nullopt;
    IntMatrix m = assemble_columns(ns, /*homogenize=*/true);
    const std::size_t t_col = m.cols() - 1;
    std::optional<IntVec> best;
    for (const IntVec& x :
         cd_search(m, t_col, [&](const IntVec& x) { return x[t_col] == 1; })) {
        if (x.back() != 1) continue;
        IntVec nu(x.begin(), x.begin() + vars);
        if (!best || IntVecLess{}(nu, *best)) best = std::move(nu);
    }
    return best;
}

std::optional<IntVec> solve_nonnegative_nonzero(const DiophantineSystem& sys) {
    sys.validate();
    const std::size_t vars = sys.a.cols();
    NormalizedSystem ns = normalize(sys);
    if (ns.infeasible) return std::nullopt;
    if (!rhs_trivial(ns)) return solve_nonnegative(sys);
    if (vars == 0) return std::nullopt;
    if (ns.a.rows() == 0) {
        IntVec nu(vars);
        nu[0] = 1;
        return nu;
    }
    if (ns.pure_congruence) {
        // shifting a single coordinate by the lcm of the moduli fixes all rows
        Int lcm = 1;
        for (const Int& d : ns.moduli)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
        IntVec nu(vars);
        nu[0] = lcm;
        return nu;
    }
    IntMatrix m = assemble_columns(ns, /*homogenize=*/false);
    std::optional<IntVec> best;
    auto has_var_part = [&](const IntVec& x) {
        for (std::size_t j = 0; j < vars; ++j)
            if (x[j] != 0) return true;
        return false;
    };
    for (const IntVec& x : cd_search(m, m.cols(), has_var_part)) {
        IntVec nu(x.begin(), x.begin() + vars);
        if (all_zero(nu)) continue;
        if (!best || IntVecLess{}(nu, *best)) best = std::move(nu);
    }
    return best;
}

}  // namespace qtorus
