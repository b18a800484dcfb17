#include "qtorus/qmatrix.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace qtorus {

using nlohmann::json;

bool lex_less(const LambdaElement& a, const LambdaElement& b) {
    if (a.free != b.free)
        return std::lexicographical_compare(a.free.begin(), a.free.end(),
                                            b.free.begin(), b.free.end());
    return std::lexicographical_compare(a.torsion.begin(), a.torsion.end(),
                                        b.torsion.begin(), b.torsion.end());
}

LambdaElement identity_element(const LambdaGroup& g) {
    return LambdaElement{IntVec(g.free_rank), IntVec(g.torsion_rank())};
}

LambdaElement reduced(const LambdaGroup& g, LambdaElement e) {
    for (std::size_t m = 0; m < g.torsion_rank(); ++m)
        mpz_fdiv_r(e.torsion[m].get_mpz_t(), e.torsion[m].get_mpz_t(),
                   g.torsion_orders[m].get_mpz_t());
    return e;
}

LambdaElement mul(const LambdaGroup& g, const LambdaElement& a, const LambdaElement& b) {
    LambdaElement r = a;
    for (std::size_t i = 0; i < g.free_rank; ++i) r.free[i] += b.free[i];
    for (std::size_t m = 0; m < g.torsion_rank(); ++m) r.torsion[m] += b.torsion[m];
    return reduced(g, std::move(r));
}

LambdaElement inverse(const LambdaGroup& g, const LambdaElement& a) {
    LambdaElement r = a;
    for (Int& x : r.free) x = -x;
    for (Int& x : r.torsion) x = -x;
    return reduced(g, std::move(r));
}

LambdaElement power(const LambdaGroup& g, const LambdaElement& a, const Int& e) {
    LambdaElement r = a;
    for (Int& x : r.free) x *= e;
    for (Int& x : r.torsion) x *= e;
    return reduced(g, std::move(r));
}

bool is_identity(const LambdaElement& e) {
    for (const Int& x : e.free)
        if (x != 0) return false;
    for (const Int& x : e.torsion)
        if (x != 0) return false;
    return true;
}

std::size_t pair_rank(std::size_t n, std::size_t i, std::size_t j) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> pair_unrank(std::size_t n, std::size_t r) {
    for (std::size_t i = 0;; ++i) {
        std::size_t row = n - 1 - i;
        if (r < row) return {i, i + 1 + r};
        r -= row;
    }
}

QMatrix::QMatrix(std::size_t n, LambdaGroup group, std::vector<LambdaElement> upper)
    : n_(n), group_(std::move(group)), upper_(std::move(upper)) {
    if (n_ < 2) throw spec_error("rank n must be at least 2");
    for (const Int& d : group_.torsion_orders)
        if (d < 2) throw spec_error("torsion order must be at least 2");
    if (upper_.size() != n_ * (n_ - 1) / 2)
        throw spec_error("wrong number of upper entries");
    for (LambdaElement& e : upper_) {
        if (e.free.size() != group_.free_rank || e.torsion.size() != group_.torsion_rank())
            throw spec_error("wrong exponent-vector length");
        e = reduced(group_, std::move(e));
    }
}

const LambdaElement& QMatrix::upper(std::size_t i, std::size_t j) const {
    return upper_[pair_rank(n_, i, j)];
}

LambdaElement QMatrix::entry(std::size_t i, std::size_t j) const {
    if (i == j) return identity_element(group_);
    if (i < j) return upper(i, j);
    return inverse(group_, upper(j, i));
}

RelationsMatrixM relations_matrix(const QMatrix& q) {
    const std::size_t pairs = q.n() * (q.n() - 1) / 2;
    RelationsMatrixM m{IntMatrix(pairs, q.group().free_rank),
                       IntMatrix(pairs, q.group().torsion_rank())};
    for (std::size_t r = 0; r < pairs; ++r) {
        auto [i, j] = pair_unrank(q.n(), r);
        const LambdaElement& e = q.upper(i, j);
        for (std::size_t s = 0; s < q.group().free_rank; ++s)
            m.free_block.at(r, s) = e.free[s];
        for (std::size_t s = 0; s < q.group().torsion_rank(); ++s)
            m.torsion_block.at(r, s) = e.torsion[s];
    }
    return m;
}

namespace {

Int json_to_int(const json& v) {
    if (!v.is_number_integer()) throw spec_error("expected an integer");
    return Int(static_cast<long>(v.get<long long>()));
}

json int_to_json(const Int& v) {
    if (!v.fits_slong_p()) throw spec_error("exponent out of serializable range");
    return json(static_cast<long long>(v.get_si()));
}

IntVec json_to_vec(const json& v) {
    if (!v.is_array()) throw spec_error("expected an array of integers");
    IntVec out;
    for (const json& x : v) out.push_back(json_to_int(x));
    return out;
}

}  // namespace

QMatrix parse_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw spec_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw spec_error("top-level value must be an object");
    if (!doc.contains("n")) throw spec_error("missing key \"n\"");
    long long n_raw = 0;
    if (!doc["n"].is_number_integer() || (n_raw = doc["n"].get<long long>()) < 0)
        throw spec_error("\"n\" must be a nonnegative integer");
    if (n_raw < 2) throw spec_error("rank n must be at least 2");
    const std::size_t n = static_cast<std::size_t>(n_raw);

    if (!doc.contains("lambda") || !doc["lambda"].is_object())
        throw spec_error("missing \"lambda\" group declaration");
    const json& lam = doc["lambda"];
    if (!lam.contains("free_rank") || !lam["free_rank"].is_number_integer())
        throw spec_error("missing \"lambda.free_rank\"");
    long long fr = lam["free_rank"].get<long long>();
    if (fr < 0) throw spec_error("\"lambda.free_rank\" must be nonnegative");
    LambdaGroup group;
    group.free_rank = static_cast<std::size_t>(fr);
    if (lam.contains("torsion_orders")) group.torsion_orders = json_to_vec(lam["torsion_orders"]);
    for (const Int& d : group.torsion_orders)
        if (d < 2) throw spec_error("torsion order must be at least 2");

    if (!doc.contains("entries") || !doc["entries"].is_object())
        throw spec_error("missing \"entries\" object");
    const json& entries = doc["entries"];

    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<LambdaElement> upper(pairs, identity_element(group));
    std::vector<bool> seen(pairs, false);
    for (auto it = entries.begin(); it != entries.end(); ++it) {
        std::size_t i = 0, j = 0;
        char comma = 0;
        std::istringstream key(it.key());
        if (!(key >> i >> comma >> j) || comma != ',' || !key.eof())
            throw spec_error("bad entry key \"" + it.key() + "\" (expected \"i,j\")");
        if (i < 1 || j <= i || j > n)
            throw spec_error("entry key \"" + it.key() + "\" is not a pair 1 <= i < j <= n");
        const json& e = it.value();
        if (!e.is_object()) throw spec_error("entry \"" + it.key() + "\" must be an object");
        LambdaElement el = identity_element(group);
        if (e.contains("free")) el.free = json_to_vec(e["free"]);
        if (e.contains("torsion")) el.torsion = json_to_vec(e["torsion"]);
        if (el.torsion.empty()) el.torsion.resize(group.torsion_rank());
        if (el.free.size() != group.free_rank || el.torsion.size() != group.torsion_rank())
            throw spec_error("wrong exponent-vector length at entry \"" + it.key() + "\"");
        const std::size_t r = pair_rank(n, i - 1, j - 1);
        if (seen[r]) throw spec_error("duplicate entry \"" + it.key() + "\"");
        seen[r] = true;
        upper[r] = std::move(el);
    }
    for (std::size_t r = 0; r < pairs; ++r)
        if (!seen[r]) {
            auto [i, j] = pair_unrank(n, r);
            throw spec_error("missing entry (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ")");
        }
    return QMatrix(n, std::move(group), std::move(upper));
}

std::string serialize_spec(const QMatrix& q) {
    json doc;
    doc["n"] = q.n();
    doc["lambda"]["free_rank"] = q.group().free_rank;
    json orders = json::array();
    for (const Int& d : q.group().torsion_orders) orders.push_back(int_to_json(d));
    doc["lambda"]["torsion_orders"] = std::move(orders);
    json entries = json::object();
    for (std::size_t i = 0; i < q.n(); ++i)
        for (std::size_t j = i + 1; j < q.n(); ++j) {
            const LambdaElement& e = q.upper(i, j);
            json rec;
            json fr = json::array();
            for (const Int& x : e.free) fr.push_back(int_to_json(x));
            rec["free"] = std::move(fr);
            if (q.group().torsion_rank() > 0) {
                json tr = json::array();
                for (const Int& x : e.torsion) tr.push_back(int_to_json(x));
                rec["torsion"] = std::move(tr);
            }
            entries[std::to_string(i + 1) + "," + std::to_string(j + 1)] = std::move(rec);
        }
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
}

namespace {

// Z-basis of the lattice of multiplicative relations among the entries.
std::vector<IntVec> entry_relation_lattice(const QMatrix& q) {
    const std::size_t pairs = q.n() * (q.n() - 1) / 2;
    const LambdaGroup& g = q.group();
    IntMatrix gen(g.free_rank + g.torsion_rank(), pairs);
    IntVec moduli(g.free_rank + g.torsion_rank());
    for (std::size_t r = 0; r < pairs; ++r) {
        auto [i, j] = pair_unrank(q.n(), r);
        const LambdaElement& e = q.upper(i, j);
        for (std::size_t s = 0; s < g.free_rank; ++s) gen.at(s, r) = e.free[s];
        for (std::size_t m = 0; m < g.torsion_rank(); ++m)
            gen.at(g.free_rank + m, r) = e.torsion[m];
    }
    for (std::size_t m = 0; m < g.torsion_rank(); ++m)
        moduli[g.free_rank + m] = g.torsion_orders[m];
    return kernel_basis_with_congruences(gen, moduli);
}

}  // namespace

LambdaInvariants lambda_invariants(const QMatrix& q) {
    const std::size_t pairs = q.n() * (q.n() - 1) / 2;
    RelationsMatrixM m = relations_matrix(q);
    LambdaInvariants inv;
    inv.rank = integer_rank(m.free_block);

    // The subgroup generated by the entries is Z^pairs modulo the relation
    // lattice; it has torsion exactly when some invariant factor exceeds 1.
    std::vector<IntVec> rel = entry_relation_lattice(q);
    IntMatrix b(pairs, rel.size());
    for (std::size_t j = 0; j < rel.size(); ++j)
        for (std::size_t i = 0; i < pairs; ++i) b.at(i, j) = rel[j][i];
    SnfDecomposition s = smith_normal_form(b);
    inv.torsion_free = true;
    for (std::size_t i = 0; i < std::min(b.rows(), b.cols()); ++i)
        if (s.d.at(i, i) > 1) inv.torsion_free = false;
    return inv;
}

TorsionFreeReduction torsion_free_reduction(const QMatrix& q) {
    const LambdaGroup& g = q.group();
    // Exponent of the group generated by the entries' torsion components:
    // it annihilates every torsion component appearing in any power product.
    Int p = 1;
    for (std::size_t i = 0; i < q.n(); ++i)
        for (std::size_t j = i + 1; j < q.n(); ++j) {
            const LambdaElement& e = q.upper(i, j);
            for (std::size_t m = 0; m < g.torsion_rank(); ++m) {
                if (e.torsion[m] == 0) continue;
                Int gcd;
                mpz_gcd(gcd.get_mpz_t(), e.torsion[m].get_mpz_t(),
                        g.torsion_orders[m].get_mpz_t());
                Int ord = g.torsion_orders[m] / gcd;
                mpz_lcm(p.get_mpz_t(), p.get_mpz_t(), ord.get_mpz_t());
            }
        }
    const Int psq = p * p;
    std::vector<LambdaElement> upper;
    for (std::size_t r = 0; r < q.n() * (q.n() - 1) / 2; ++r) {
        auto [i, j] = pair_unrank(q.n(), r);
        upper.push_back(power(g, q.upper(i, j), psq));
    }
    return TorsionFreeReduction{QMatrix(q.n(), g, std::move(upper)), p};
}

std::optional<std::pair<std::size_t, std::size_t>> has_equal_rows(const QMatrix& q) {
    for (std::size_t i = 0; i < q.n(); ++i)
        for (std::size_t j = i + 1; j < q.n(); ++j) {
            // rows i and j agree iff q_ij = 1 and q_ir = q_jr off the pair
            if (!is_identity(q.upper(i, j))) continue;
            bool equal = true;
            for (std::size_t r = 0; r < q.n() && equal; ++r) {
                if (r == i || r == j) continue;
                if (!(q.entry(i, r) == q.entry(j, r))) equal = false;
            }
            if (equal) return std::make_pair(i, j);
        }
    return std::nullopt;
}

}  // namespace qtorus
