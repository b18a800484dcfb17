#include "qtorus/bicharacter.hpp"

#include <algorithm>
#include <sstream>

namespace qtorus {

LambdaElement lambda_of(const QMatrix& q, const MonIdx& gamma, const MonIdx& delta) {
    if (gamma.size() != q.n() || delta.size() != q.n())
        throw std::invalid_argument("lambda_of: exponent vector length");
    LambdaElement out = identity_element(q.group());
    for (std::size_t i = 0; i < q.n(); ++i)
        for (std::size_t j = i + 1; j < q.n(); ++j) {
            Int e = gamma[i] * delta[j] - gamma[j] * delta[i];
            if (e == 0) continue;
            out = mul(q.group(), out, power(q.group(), q.upper(i, j), e));
        }
    return out;
}

namespace {

// Exponent rows of the linear conditions lambda(gamma, e_j) = 1: block j has
// one row per group generator, with the column for gamma_a holding the
// exponent of q_aj.
void central_condition_rows(const QMatrix& q, IntMatrix* rows, IntVec* moduli) {
    const LambdaGroup& g = q.group();
    const std::size_t l = g.free_rank, t = g.torsion_rank(), n = q.n();
    *rows = IntMatrix(n * (l + t), n);
    moduli->assign(n * (l + t), Int(0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t a = 0; a < n; ++a) {
            if (a == j) continue;
            LambdaElement e = q.entry(a, j);
            for (std::size_t s = 0; s < l; ++s) rows->at(j * (l + t) + s, a) = e.free[s];
            for (std::size_t m = 0; m < t; ++m)
                rows->at(j * (l + t) + l + m, a) = e.torsion[m];
        }
        for (std::size_t m = 0; m < t; ++m)
            (*moduli)[j * (l + t) + l + m] = g.torsion_orders[m];
    }
}

}  // namespace

std::vector<MonIdx> radical_basis(const QMatrix& q) {
    IntMatrix rows;
    IntVec moduli;
    central_condition_rows(q, &rows, &moduli);
    return kernel_basis_with_congruences(rows, moduli);
}

namespace {

// Odometer over [-bound, bound]^n in magnitude-ascending digit order
// (0, 1, -1, 2, -2, ...) with coordinate 0 cycling fastest, so small
// witnesses are found first and the first hit is deterministic.
class BoxOdometer {
public:
    BoxOdometer(std::size_t n, long bound) : idx_(n, 0), value_(n, 0) {
        digits_.push_back(0);
        for (long v = 1; v <= bound; ++v) {
            digits_.push_back(v);
            digits_.push_back(-v);
        }
    }

    const std::vector<long>& value() const { return value_; }

    bool advance() {
        std::size_t p = 0;
        while (p < idx_.size() && idx_[p] + 1 == digits_.size()) {
            idx_[p] = 0;
            value_[p] = 0;
            ++p;
        }
        if (p == idx_.size()) return false;
        ++idx_[p];
        value_[p] = digits_[idx_[p]];
        return true;
    }

private:
    std::vector<std::size_t> idx_;
    std::vector<long> value_;
    std::vector<long> digits_;
};

bool independent(const std::vector<long>& a, const std::vector<long>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return true;
    return false;
}

}  // namespace

std::optional<std::pair<MonIdx, MonIdx>> bounded_isotropic_pair_search(
    const QMatrix& q, long bound) {
    if (bound < 1) throw std::invalid_argument("bounded_isotropic_pair_search: bound");
    const LambdaGroup& g = q.group();
    const std::size_t n = q.n(), l = g.free_rank, t = g.torsion_rank();
    const std::size_t rows = l + t;

    // exponent vectors of all derived entries q_aj, flattened per (a, j)
    std::vector<IntVec> entry_exp(n * n, IntVec(rows));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t j = 0; j < n; ++j) {
            LambdaElement e = q.entry(a, j);
            IntVec& v = entry_exp[a * n + j];
            for (std::size_t s = 0; s < l; ++s) v[s] = e.free[s];
            for (std::size_t m = 0; m < t; ++m) v[l + m] = e.torsion[m];
        }

    std::vector<IntVec> w(rows, IntVec(n));  // w[r][j]: row r of lambda(gamma, e_j)
    mpz_t acc, rem;
    mpz_init(acc);
    mpz_init(rem);
    auto cleanup = [&]() {
        mpz_clear(acc);
        mpz_clear(rem);
    };

    BoxOdometer gamma(n, bound);
    while (gamma.advance()) {
        const std::vector<long>& gv = gamma.value();
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t j = 0; j < n; ++j) {
                Int& cell = w[r][j];
                cell = 0;
                for (std::size_t a = 0; a < n; ++a) {
                    if (gv[a] == 0 || a == j) continue;
                    cell += gv[a] * entry_exp[a * n + j][r];
                }
            }
        // The partners of gamma form a lattice of rank n - rank of the free
        // rows of w, and gamma itself lies in it; rank <= 1 leaves no
        // independent partner at any height, bounded or not.
        if (l > 0) {
            IntMatrix wfree(l, n);
            for (std::size_t r = 0; r < l; ++r)
                for (std::size_t j = 0; j < n; ++j) wfree.at(r, j) = w[r][j];
            if (n - integer_rank(wfree) <= 1) continue;
        }
        BoxOdometer delta(n, bound);
        while (delta.advance()) {
            const std::vector<long>& dv = delta.value();
            bool isotropic = true;
            for (std::size_t r = 0; r < rows && isotropic; ++r) {
                mpz_set_ui(acc, 0);
                for (std::size_t j = 0; j < n; ++j) {
                    long c = dv[j];
                    if (c > 0)
                        mpz_addmul_ui(acc, w[r][j].get_mpz_t(), static_cast<unsigned long>(c));
                    else if (c < 0)
                        mpz_submul_ui(acc, w[r][j].get_mpz_t(), static_cast<unsigned long>(-c));
                }
                if (r < l) {
                    if (mpz_sgn(acc) != 0) isotropic = false;
                } else {
                    mpz_fdiv_r(rem, acc, g.torsion_orders[r - l].get_mpz_t());
                    if (mpz_sgn(rem) != 0) isotropic = false;
                }
            }
            if (!isotropic || !independent(gv, dv)) continue;
            MonIdx mg(gv.begin(), gv.end()), md(dv.begin(), dv.end());
            cleanup();
            return std::make_pair(std::move(mg), std::move(md));
        }
    }
    cleanup();
    return std::nullopt;
}

AlternatingFormSet forms_of(const QMatrix& q) {
    const LambdaGroup& g = q.group();
    for (std::size_t i = 0; i < q.n(); ++i)
        for (std::size_t j = i + 1; j < q.n(); ++j)
            for (const Int& x : q.upper(i, j).torsion)
                if (x != 0)
                    throw std::invalid_argument("forms_of: torsion present in entries");
    AlternatingFormSet out;
    for (std::size_t s = 0; s < g.free_rank; ++s) {
        IntMatrix form(q.n(), q.n());
        for (std::size_t i = 0; i < q.n(); ++i)
            for (std::size_t j = i + 1; j < q.n(); ++j) {
                form.at(i, j) = q.upper(i, j).free[s];
                form.at(j, i) = -form.at(i, j);
            }
        out.forms.push_back(std::move(form));
    }
    return out;
}

IntPolynomial IntPolynomial::variable(std::size_t nvars, std::size_t index) {
    IntPolynomial p(nvars);
    std::vector<unsigned> e(nvars, 0);
    e.at(index) = 1;
    p.terms_.emplace(std::move(e), Int(1));
    return p;
}

IntPolynomial IntPolynomial::constant(std::size_t nvars, Int c) {
    IntPolynomial p(nvars);
    if (c != 0) p.terms_.emplace(std::vector<unsigned>(nvars, 0), std::move(c));
    return p;
}

void IntPolynomial::add_term(const std::vector<unsigned>& exps, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& rhs) const {
    IntPolynomial out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
    return out;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& rhs) const {
    IntPolynomial out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, -c);
    return out;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& rhs) const {
    IntPolynomial out(nvars_);
    std::vector<unsigned> e(nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : rhs.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

IntPolynomial IntPolynomial::pow(unsigned long e) const {
    IntPolynomial out = constant(nvars_, 1);
    for (unsigned long i = 0; i < e; ++i) out = out * *this;
    return out;
}

Int IntPolynomial::evaluate(const IntVec& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("evaluate: point length");
    Int out = 0;
    for (const auto& [e, c] : terms_) {
        Int term = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
        out += term;
    }
    return out;
}

Int IntPolynomial::content() const {
    Int g = 0;
    for (const auto& [e, c] : terms_)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

std::optional<unsigned> IntPolynomial::homogeneous_degree() const {
    std::optional<unsigned> deg;
    for (const auto& [e, c] : terms_) {
        unsigned d = 0;
        for (unsigned x : e) d += x;
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg;
}

std::string IntPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // leading (highest) terms first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Int a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool mono = false;
        std::ostringstream vars;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (mono) vars << "*";
            vars << "x" << (i + 1);
            if (e[i] > 1) vars << "^" << e[i];
            mono = true;
        }
        if (!mono)
            out << a.get_str();
        else if (a == 1)
            out << vars.str();
        else
            out << a.get_str() << "*" << vars.str();
    }
    return out.str();
}

namespace {

// Laplace expansion along the topmost remaining row, memoized on the set of
// remaining columns.
IntPolynomial det_rec(const std::vector<std::vector<IntPolynomial>>& m,
                      std::size_t row, unsigned mask,
                      std::map<unsigned, IntPolynomial>& memo, std::size_t nvars) {
    if (mask == 0) return IntPolynomial::constant(nvars, 1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    IntPolynomial out(nvars);
    int sign = 1;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (!(mask & (1u << j))) continue;
        if (!m[row][j].is_zero()) {
            IntPolynomial minor =
                det_rec(m, row + 1, mask & ~(1u << j), memo, nvars);
            IntPolynomial prod = m[row][j] * minor;
            out = (sign > 0) ? out + prod : out - prod;
        }
        sign = -sign;
    }
    memo.emplace(mask, out);
    return out;
}

}  // namespace

IntPolynomial pencil_determinant(const AlternatingFormSet& forms) {
    const std::size_t l = forms.forms.size();
    if (l == 0) return IntPolynomial(0);
    const std::size_t n = forms.forms[0].rows();
    for (const IntMatrix& g : forms.forms)
        if (g.rows() != n || g.cols() != n)
            throw std::invalid_argument("pencil_determinant: form shapes differ");
    if (n > 31) throw std::invalid_argument("pencil_determinant: rank too large");

    std::vector<std::vector<IntPolynomial>> m(
        n, std::vector<IntPolynomial>(n, IntPolynomial(l)));
    std::vector<unsigned> e(l, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t s = 0; s < l; ++s) {
                if (forms.forms[s].at(i, j) == 0) continue;
                e.assign(l, 0);
                e[s] = 1;
                m[i][j].add_term(e, forms.forms[s].at(i, j));
            }
    std::map<unsigned, IntPolynomial> memo;
    return det_rec(m, 0, (1u << n) - 1, memo, l);
}

CertificateVerdict pencil_anisotropy_certificate(const IntPolynomial& pdet) {
    if (pdet.is_zero()) return CertificateVerdict::not_certified;
    for (const auto& [e, c] : pdet.terms())
        if (c < 0) return CertificateVerdict::not_certified;
    auto deg = pdet.homogeneous_degree();
    if (!deg || *deg == 0 || *deg % 2 != 0) return CertificateVerdict::not_certified;
    const unsigned long k = *deg / 2;
    const Int c = pdet.content();

    IntPolynomial q(pdet.nvars());
    std::vector<unsigned> e(pdet.nvars(), 0);
    for (std::size_t s = 0; s < pdet.nvars(); ++s) {
        e.assign(pdet.nvars(), 0);
        e[s] = *deg;
        auto it = pdet.terms().find(e);
        if (it == pdet.terms().end()) return CertificateVerdict::not_certified;
        if (it->second % c != 0) return CertificateVerdict::not_certified;
        Int pure = it->second / c, root, rem;
        mpz_rootrem(root.get_mpz_t(), rem.get_mpz_t(), pure.get_mpz_t(), k);
        if (rem != 0) return CertificateVerdict::not_certified;
        e[s] = 2;
        q.add_term(e, root);
    }
    IntPolynomial expect = IntPolynomial::constant(pdet.nvars(), c) * q.pow(k);
    return expect == pdet ? CertificateVerdict::certified
                          : CertificateVerdict::not_certified;
}

QMatrix quaternion_example() {
    LambdaGroup g{3, {}};
    auto gen = [&](long a, long b, long c) {
        LambdaElement e = identity_element(g);
        e.free[0] = a;
        e.free[1] = b;
        e.free[2] = c;
        return e;
    };
    std::vector<LambdaElement> upper(6);
    upper[pair_rank(4, 0, 1)] = gen(-1, 0, 0);
    upper[pair_rank(4, 0, 2)] = gen(0, -1, 0);
    upper[pair_rank(4, 0, 3)] = gen(0, 0, -1);
    upper[pair_rank(4, 1, 2)] = gen(0, 0, -1);
    upper[pair_rank(4, 1, 3)] = gen(0, 1, 0);
    upper[pair_rank(4, 2, 3)] = gen(-1, 0, 0);
    return QMatrix(4, std::move(g), std::move(upper));
}

}  // namespace qtorus

