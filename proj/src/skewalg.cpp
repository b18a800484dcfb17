#include "qtorus/skewalg.hpp"

#include <algorithm>

#include "qtorus/errors.hpp"

namespace qtorus {

AutomorphismSpec make_scalar_spec() { return AutomorphismSpec{AutKind::scalar, {}, 0, {}, false}; }

AutomorphismSpec make_monomial_spec(Permutation sigma) {
    return AutomorphismSpec{AutKind::monomial, std::move(sigma), 0, {}, false};
}

AutomorphismSpec make_translation_spec(std::size_t k, bool negate) {
    return AutomorphismSpec{AutKind::translation, {}, k, {}, negate};
}

AutomorphismSpec make_exp_derivation_spec(std::size_t i, MonIdx nu, bool negate) {
    return AutomorphismSpec{AutKind::exp_derivation, {}, i, std::move(nu), negate};
}

AutomorphismSpec canonical_inverse(const AutomorphismSpec& spec) {
    AutomorphismSpec inv = spec;
    switch (spec.kind) {
        case AutKind::scalar:
            break;  // tags invert on expansion
        case AutKind::monomial:
            inv.sigma = spec.sigma.inverse();
            break;
        case AutKind::translation:
        case AutKind::exp_derivation:
            inv.negate = !spec.negate;
            break;
    }
    return inv;
}

std::string aut_kind_name(AutKind kind) {
    switch (kind) {
        case AutKind::scalar: return "scalar";
        case AutKind::monomial: return "monomial";
        case AutKind::translation: return "translation";
        case AutKind::exp_derivation: return "exp_derivation";
    }
    return "?";
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::rigid: return "rigid";
        case Verdict::non_rigid: return "non_rigid";
        case Verdict::hypotheses_violated: return "hypotheses_violated";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

Scalar Scalar::unit(LambdaElement e, Rat c) {
    Scalar s;
    if (c != 0) s.terms_.emplace(std::move(e), std::move(c));
    return s;
}

void Scalar::add_term(const LambdaElement& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Scalar s_add(const Scalar& a, const Scalar& b) {
    Scalar out = a;
    for (const auto& [e, c] : b.terms()) out.add_term(e, c);
    return out;
}

Scalar s_neg(const Scalar& a) {
    Scalar out;
    for (const auto& [e, c] : a.terms()) out.add_term(e, -c);
    return out;
}

Scalar s_mul(const LambdaGroup& g, const Scalar& a, const Scalar& b) {
    Scalar out;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) out.add_term(mul(g, ea, eb), ca * cb);
    return out;
}

SkewAlgebra::SkewAlgebra(QMatrix q) : q_(std::move(q)) {}

LambdaElement SkewAlgebra::straightening_scalar(const MonIdx& gamma,
                                                const MonIdx& delta) const {
    if (gamma.size() != n() || delta.size() != n())
        throw std::invalid_argument("straightening_scalar: exponent length");
    // moving X_i^(delta_i) left past X_j^(gamma_j) for j > i collects
    // q_ji^(gamma_j delta_i) = q_ij^(-gamma_j delta_i)
    LambdaElement s = identity_element(group());
    for (std::size_t i = 0; i < n(); ++i)
        for (std::size_t j = i + 1; j < n(); ++j) {
            Int e = -(gamma[j] * delta[i]);
            if (e == 0) continue;
            s = mul(group(), s, power(group(), q_.upper(i, j), e));
        }
    return s;
}

LambdaElement SkewAlgebra::monomial_commutator(const MonIdx& gamma,
                                               const MonIdx& delta) const {
    return mul(group(), straightening_scalar(gamma, delta),
               inverse(group(), straightening_scalar(delta, gamma)));
}

SkewPoly SkewAlgebra::one() const {
    return monomial(MonIdx(n()), Scalar::unit(identity_element(group())));
}

SkewPoly SkewAlgebra::monomial(MonIdx gamma, Scalar c) const {
    SkewPoly f;
    if (!c.is_zero()) f.terms.emplace(std::move(gamma), std::move(c));
    return f;
}

SkewPoly SkewAlgebra::generator(std::size_t i) const {
    MonIdx g(n());
    g.at(i) = 1;
    return monomial(std::move(g), Scalar::unit(identity_element(group())));
}

SkewPoly SkewAlgebra::add(const SkewPoly& f, const SkewPoly& g) const {
    SkewPoly out = f;
    for (const auto& [m, c] : g.terms) {
        auto it = out.terms.find(m);
        if (it == out.terms.end()) {
            out.terms.emplace(m, c);
            continue;
        }
        it->second = s_add(it->second, c);
        if (it->second.is_zero()) out.terms.erase(it);
    }
    return out;
}

SkewPoly SkewAlgebra::sub(const SkewPoly& f, const SkewPoly& g) const {
    SkewPoly neg;
    for (const auto& [m, c] : g.terms) neg.terms.emplace(m, s_neg(c));
    return add(f, neg);
}

SkewPoly SkewAlgebra::scale(const Scalar& c, const SkewPoly& f) const {
    SkewPoly out;
    for (const auto& [m, a] : f.terms) {
        Scalar prod = s_mul(group(), c, a);
        if (!prod.is_zero()) out.terms.emplace(m, std::move(prod));
    }
    return out;
}

SkewPoly SkewAlgebra::multiply(const SkewPoly& f, const SkewPoly& g) const {
    SkewPoly out;
    MonIdx key(n());
    for (const auto& [mf, cf] : f.terms)
        for (const auto& [mg, cg] : g.terms) {
            for (std::size_t i = 0; i < n(); ++i) key[i] = mf[i] + mg[i];
            Scalar c = s_mul(group(), cf, cg);
            c = s_mul(group(), c, Scalar::unit(straightening_scalar(mf, mg)));
            auto it = out.terms.find(key);
            if (it == out.terms.end()) {
                if (!c.is_zero()) out.terms.emplace(key, std::move(c));
                continue;
            }
            it->second = s_add(it->second, c);
            if (it->second.is_zero()) out.terms.erase(it);
        }
    return out;
}

SkewPoly SkewAlgebra::pow(const SkewPoly& f, const Int& e) const {
    if (e < 0) throw std::invalid_argument("pow: negative exponent");
    SkewPoly out = one();
    for (Int i = 0; i < e; ++i) out = multiply(out, f);
    return out;
}

SkewPoly SkewAlgebra::substitute(const SkewPoly& f,
                                 const std::vector<SkewPoly>& images) const {
    if (images.size() != n()) throw std::invalid_argument("substitute: image count");
    SkewPoly out;
    for (const auto& [m, c] : f.terms) {
        SkewPoly term = one();
        for (std::size_t j = 0; j < n(); ++j) {
            if (m[j] < 0) throw std::invalid_argument("substitute: negative exponent");
            term = multiply(term, pow(images[j], m[j]));
        }
        out = add(out, scale(c, term));
    }
    return out;
}

SkewPoly SkewAlgebra::derivation_apply(std::size_t i, const MonIdx& nu,
                                       const SkewPoly& f) const {
    SkewPoly out;
    for (const auto& [m, c] : f.terms) {
        if (m[i] == 0) continue;
        if (m[i] < 0) throw std::invalid_argument("derivation_apply: negative exponent");
        // product rule over X_1^(m_1) ... X_n^(m_n): one summand per X_i slot
        MonIdx prefix(n()), suffix(n());
        for (std::size_t a = 0; a < i; ++a) prefix[a] = m[a];
        for (std::size_t a = i + 1; a < n(); ++a) suffix[a] = m[a];
        for (Int t = 0; t < m[i]; ++t) {
            prefix[i] = t;
            suffix[i] = m[i] - 1 - t;
            SkewPoly piece = multiply(monomial(prefix, Scalar::unit(identity_element(group()))),
                                      monomial(nu, Scalar::unit(identity_element(group()))));
            piece = multiply(piece, monomial(suffix, Scalar::unit(identity_element(group()))));
            out = add(out, scale(c, piece));
        }
    }
    return out;
}

bool SkewAlgebra::verify_endomorphism(const std::vector<SkewPoly>& images) const {
    if (images.size() != n()) throw std::invalid_argument("verify_endomorphism: image count");
    for (std::size_t i = 0; i < n(); ++i)
        for (std::size_t j = i + 1; j < n(); ++j) {
            SkewPoly lhs = multiply(images[i], images[j]);
            SkewPoly rhs = scale(Scalar::unit(q_.upper(i, j)), multiply(images[j], images[i]));
            if (!sub(lhs, rhs).is_zero()) return false;
        }
    return true;
}

bool SkewAlgebra::verify_derivation(std::size_t i, const MonIdx& nu) const {
    if (nu.size() != n() || i >= n())
        throw std::invalid_argument("verify_derivation: arguments");
    if (nu[i] != 0) throw std::invalid_argument("verify_derivation: nu_i must vanish");
    for (const Int& x : nu)
        if (x < 0) throw std::invalid_argument("verify_derivation: nu must be nonnegative");

    std::vector<SkewPoly> d_images(n());
    for (std::size_t j = 0; j < n(); ++j)
        d_images[j] = (j == i) ? monomial(nu, Scalar::unit(identity_element(group())))
                               : zero();
    // D annihilates X_i X_j - q_ij X_j X_i via the Leibniz rule
    for (std::size_t a = 0; a < n(); ++a)
        for (std::size_t b = a + 1; b < n(); ++b) {
            SkewPoly lhs = add(multiply(d_images[a], generator(b)),
                               multiply(generator(a), d_images[b]));
            SkewPoly rhs = add(multiply(d_images[b], generator(a)),
                               multiply(generator(b), d_images[a]));
            if (!sub(lhs, scale(Scalar::unit(q_.upper(a, b)), rhs)).is_zero())
                return false;
        }
    // D^2 = 0 on generators
    for (std::size_t j = 0; j < n(); ++j)
        if (!derivation_apply(i, nu, d_images[j]).is_zero()) return false;
    return true;
}

QMatrix extend_with_tags(const QMatrix& q, std::size_t tags) {
    LambdaGroup g = q.group();
    g.free_rank += tags;
    std::vector<LambdaElement> upper;
    for (std::size_t i = 0; i < q.n(); ++i)
        for (std::size_t j = i + 1; j < q.n(); ++j) {
            LambdaElement e = q.upper(i, j);
            e.free.resize(g.free_rank);
            upper.push_back(std::move(e));
        }
    // restore pair order: the loop above already emits in pair_rank order
    return QMatrix(q.n(), std::move(g), std::move(upper));
}

LambdaElement tag_element(const LambdaGroup& extended, std::size_t base_free_rank,
                          std::size_t t) {
    LambdaElement e = identity_element(extended);
    e.free.at(base_free_rank + t) = 1;
    return e;
}

namespace {

std::size_t tags_for(const AutomorphismSpec& spec, std::size_t n) {
    switch (spec.kind) {
        case AutKind::scalar:
        case AutKind::monomial:
            return n;
        case AutKind::translation:
            return 1;
        case AutKind::exp_derivation:
            return 0;
    }
    return 0;
}

void validate_spec_shape(const AutomorphismSpec& spec, std::size_t n) {
    switch (spec.kind) {
        case AutKind::scalar:
            break;
        case AutKind::monomial: {
            if (spec.sigma.n() != n) throw spec_error("monomial witness: permutation size");
            std::vector<bool> hit(n, false);
            for (std::size_t v : spec.sigma.images) {
                if (v >= n || hit[v]) throw spec_error("monomial witness: not a permutation");
                hit[v] = true;
            }
            break;
        }
        case AutKind::translation:
            if (spec.index >= n) throw spec_error("translation witness: index out of range");
            break;
        case AutKind::exp_derivation:
            if (spec.index >= n || spec.nu.size() != n)
                throw spec_error("derivation witness: arguments out of range");
            if (spec.nu[spec.index] != 0)
                throw spec_error("derivation witness: nu_i must vanish");
            for (const Int& x : spec.nu)
                if (x < 0) throw spec_error("derivation witness: nu must be nonnegative");
            break;
    }
}

std::vector<SkewPoly> expand_images(const SkewAlgebra& alg, const AutomorphismSpec& spec,
                                    std::size_t base_free, bool inverse_role) {
    const std::size_t n = alg.n();
    std::vector<SkewPoly> img(n);
    auto tag_unit = [&](std::size_t t, bool inverted) {
        LambdaElement e = tag_element(alg.group(), base_free, t);
        return inverted ? qtorus::inverse(alg.group(), e) : e;
    };
    switch (spec.kind) {
        case AutKind::scalar:
            for (std::size_t i = 0; i < n; ++i) {
                MonIdx m(n);
                m[i] = 1;
                img[i] = alg.monomial(std::move(m),
                                      Scalar::unit(tag_unit(i, inverse_role)));
            }
            break;
        case AutKind::monomial:
            for (std::size_t i = 0; i < n; ++i) {
                MonIdx m(n);
                m[spec.sigma(i)] = 1;
                // forward: X_i -> k_i X_sigma(i); inverse: X_i -> k_tau(i)^-1 X_tau(i)
                std::size_t t = inverse_role ? spec.sigma(i) : i;
                img[i] = alg.monomial(std::move(m),
                                      Scalar::unit(tag_unit(t, inverse_role)));
            }
            break;
        case AutKind::translation: {
            for (std::size_t i = 0; i < n; ++i) img[i] = alg.generator(i);
            Rat sign = spec.negate ? -1 : 1;
            img[spec.index] = alg.add(
                img[spec.index],
                alg.monomial(MonIdx(n), Scalar::unit(tag_unit(0, false), sign)));
            break;
        }
        case AutKind::exp_derivation: {
            for (std::size_t i = 0; i < n; ++i) img[i] = alg.generator(i);
            Rat sign = spec.negate ? -1 : 1;
            img[spec.index] = alg.add(
                img[spec.index],
                alg.monomial(spec.nu, Scalar::unit(identity_element(alg.group()), sign)));
            break;
        }
    }
    return img;
}

}  // namespace

PairVerification verify_automorphism_pair_detail(const QMatrix& q,
                                                 const AutomorphismSpec& forward,
                                                 const AutomorphismSpec& inverse) {
    if (forward.kind != inverse.kind)
        throw spec_error("witness pair: kinds differ");
    validate_spec_shape(forward, q.n());
    validate_spec_shape(inverse, q.n());

    const std::size_t base_free = q.group().free_rank;
    SkewAlgebra alg(extend_with_tags(q, tags_for(forward, q.n())));
    std::vector<SkewPoly> fwd = expand_images(alg, forward, base_free, false);
    std::vector<SkewPoly> inv = expand_images(alg, inverse, base_free, true);

    if (!alg.verify_endomorphism(fwd))
        return {false, "forward images violate a defining relation"};
    if (!alg.verify_endomorphism(inv))
        return {false, "inverse images violate a defining relation"};
    for (std::size_t j = 0; j < q.n(); ++j) {
        if (!(alg.substitute(inv[j], fwd) == alg.generator(j)))
            return {false, "forward o inverse does not fix X_" + std::to_string(j + 1)};
        if (!(alg.substitute(fwd[j], inv) == alg.generator(j)))
            return {false, "inverse o forward does not fix X_" + std::to_string(j + 1)};
    }
    return {true, ""};
}

bool verify_automorphism_pair(const QMatrix& q, const AutomorphismSpec& forward,
                              const AutomorphismSpec& inverse) {
    return verify_automorphism_pair_detail(q, forward, inverse).ok;
}

}  // namespace qtorus
