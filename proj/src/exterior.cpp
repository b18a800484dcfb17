#include "qtorus/exterior.hpp"

#include <algorithm>
#include <numeric>

#include "qtorus/errors.hpp"

namespace qtorus {

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < images.size(); ++i)
        if (images[i] != i) return false;
    return true;
}

Permutation Permutation::identity(std::size_t n) {
    Permutation p;
    p.images.resize(n);
    std::iota(p.images.begin(), p.images.end(), std::size_t{0});
    return p;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.images.resize(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) p.images[images[i]] = i;
    return p;
}

std::vector<std::vector<std::size_t>> Permutation::cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (seen[i] || images[i] == i) continue;
        std::vector<std::size_t> cyc;
        for (std::size_t j = i; !seen[j]; j = images[j]) {
            seen[j] = true;
            cyc.push_back(j);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

IntMatrix permutation_matrix(const Permutation& sigma) {
    const std::size_t n = sigma.n();
    IntMatrix p(n, n);
    for (std::size_t j = 0; j < n; ++j) p.at(sigma(j), j) = 1;
    return p;
}

IntMatrix exterior_square(const IntMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("exterior_square: matrix not square");
    const std::size_t n = a.rows();
    const PairIndexing pairs{n};
    const std::size_t big = pairs.count();
    IntMatrix e(big, big);
    for (std::size_t r = 0; r < big; ++r) {
        auto [i, j] = pairs.unrank(r);
        for (std::size_t c = 0; c < big; ++c) {
            auto [k, l] = pairs.unrank(c);
            e.at(r, c) = a.at(i, k) * a.at(j, l) - a.at(i, l) * a.at(j, k);
        }
    }
    return e;
}

bool stab_membership(const IntMatrix& a, const LambdaGroup& group,
                     const RelationsMatrixM& m) {
    if (!a.is_square()) throw std::invalid_argument("stab_membership: matrix not square");
    const std::size_t n = a.rows();
    if (m.free_block.rows() != n * (n - 1) / 2)
        throw std::invalid_argument("stab_membership: relations matrix row count");
    Int det = a.determinant();
    if (det != 1 && det != -1) return false;
    IntMatrix e = exterior_square(a);
    if (!(e * m.free_block == m.free_block)) return false;
    IntMatrix t = e * m.torsion_block;
    for (std::size_t s = 0; s < group.torsion_rank(); ++s)
        for (std::size_t r = 0; r < t.rows(); ++r) {
            Int diff = t.at(r, s) - m.torsion_block.at(r, s);
            if (diff % group.torsion_orders[s] != 0) return false;
        }
    return true;
}

bool is_admissible_permutation(const QMatrix& q, const Permutation& sigma) {
    if (sigma.n() != q.n())
        throw std::invalid_argument("is_admissible_permutation: size mismatch");
    for (std::size_t i = 0; i < q.n(); ++i)
        for (std::size_t j = i + 1; j < q.n(); ++j)
            if (!(q.entry(sigma(i), sigma(j)) == q.upper(i, j))) return false;
    return true;
}

std::vector<Permutation> permutation_symmetries(const QMatrix& q, std::size_t cap) {
    if (q.n() > cap)
        throw cap_error("permutation enumeration cap exceeded (n = " +
                        std::to_string(q.n()) + ", cap = " + std::to_string(cap) + ")");
    std::vector<Permutation> out;
    Permutation sigma = Permutation::identity(q.n());
    do {
        if (is_admissible_permutation(q, sigma)) out.push_back(sigma);
    } while (std::next_permutation(sigma.images.begin(), sigma.images.end()));
    return out;
}

namespace {

// image of the signed basis bivector (r, sign) under wedge^2 P
std::pair<std::size_t, int> signed_image(const PairIndexing& pairs,
                                         const Permutation& sigma, std::size_t r,
                                         int sign) {
    auto [i, j] = pairs.unrank(r);
    std::size_t a = sigma(i), b = sigma(j);
    if (a < b) return {pairs.rank(a, b), sign};
    return {pairs.rank(b, a), -sign};
}

// multiplicative order of wedge^2 P, found by iterating the basis action
std::size_t wedge_order(const PairIndexing& pairs, const Permutation& sigma) {
    const std::size_t big = pairs.count();
    std::size_t cap = 1;
    for (std::size_t k = 2; k <= sigma.n(); ++k) cap = std::lcm(cap, k);
    cap *= cap;
    std::vector<std::size_t> pos(big);
    std::vector<int> sign(big, 1);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    for (std::size_t m = 1; m <= cap; ++m) {
        bool back = true;
        for (std::size_t r = 0; r < big; ++r) {
            auto [p, s] = signed_image(pairs, sigma, pos[r], sign[r]);
            pos[r] = p;
            sign[r] = s;
            if (p != r || s != 1) back = false;
        }
        if (back) return m;
    }
    throw cap_error("wedge-square order iteration cap exceeded");
}

}  // namespace

OrbitData orbit_data(const Permutation& sigma, std::size_t n) {
    const PairIndexing pairs{n};
    const std::size_t big = pairs.count();
    const std::size_t m = wedge_order(pairs, sigma);

    OrbitData out;
    std::vector<IntVec> sums;
    for (std::size_t r = 0; r < big; ++r) {
        IntVec sum(big);
        std::size_t p = r;
        int s = 1;
        for (std::size_t t = 0; t < m; ++t) {
            auto [np, ns] = signed_image(pairs, sigma, p, s);
            p = np;
            s = ns;
            sum[p] += s;
        }
        if (std::find(sums.begin(), sums.end(), sum) == sums.end())
            sums.push_back(std::move(sum));
    }
    out.orbit_sums = std::move(sums);

    // orbits of <sigma> on the 2N signed basis bivectors
    std::vector<bool> seen(2 * big, false);
    std::size_t count = 0;
    for (std::size_t start = 0; start < 2 * big; ++start) {
        if (seen[start]) continue;
        ++count;
        std::size_t p = start % big;
        int s = start < big ? 1 : -1;
        for (;;) {
            seen[(s == 1 ? 0 : big) + p] = true;
            auto [np, ns] = signed_image(pairs, sigma, p, s);
            p = np;
            s = ns;
            if (seen[(s == 1 ? 0 : big) + p]) break;
        }
    }
    out.orbit_count = count;
    return out;
}

std::size_t fix_rank(const Permutation& sigma, std::size_t n) {
    const std::size_t big = n * (n - 1) / 2;
    IntMatrix diff = exterior_square(permutation_matrix(sigma)) - IntMatrix::identity(big);
    return big - integer_rank(diff);
}

}  // namespace qtorus
