#pragma once

// Prime-degree Velu isogenies, chains of them, and the exhaustive
// torsion-point recovery oracle.
//
// The oracle enumerates every non-backtracking walk of length e from E0 in
// canonical kernel order and returns the first walk whose codomain is
// isomorphic to E1 and which, composed with the isomorphism, maps P to P1.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "isoshare/bits.hpp"
#include "isoshare/curve.hpp"
#include "isoshare/error.hpp"
#include "isoshare/prime_field.hpp"

namespace isoshare {

class IsogenyStep {
public:
    IsogenyStep(CurveSpec domain, CurveSpec codomain, CurvePoint generator, std::uint64_t degree,
                std::vector<CurvePoint> kernel)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), generator_(generator), degree_(degree),
          kernel_(std::move(kernel)) {}

    const CurveSpec& domain() const { return domain_; }
    const CurveSpec& codomain() const { return codomain_; }
    const CurvePoint& kernel_generator() const { return generator_; }
    std::uint64_t degree() const { return degree_; }
    /// The nonzero kernel points K, 2K, ..., (l-1)K.
    const std::vector<CurvePoint>& kernel() const { return kernel_; }

    /// phi(P) = (x_P + sum (x_{P+Q} - x_Q), y_P + sum (y_{P+Q} - y_Q)) over Q in ker \ {O}.
    CurvePoint evaluate(const CurvePoint& P) const {
        require_on_curve(domain_, P);
        if (P.infinity) return P;
        for (const auto& Q : kernel_)
            if (Q == P) return CurvePoint::identity();
        Fp2 X = P.x, Y = P.y;
        for (const auto& Q : kernel_) {
            auto R = detail::add_unchecked(domain_, P, Q);
            X += R.x - Q.x;
            Y += R.y - Q.y;
        }
        return CurvePoint::affine(X, Y);
    }

private:
    CurveSpec domain_, codomain_;
    CurvePoint generator_;
    std::uint64_t degree_;
    std::vector<CurvePoint> kernel_;
};

/// Velu step with kernel <K>; K must have exact prime order `ell`.
inline IsogenyStep velu_step(const CurveSpec& E, const CurvePoint& K, std::uint64_t ell) {
    require_on_curve(E, K);
    if (!is_prime(ell)) fail(ErrorKind::bad_kernel, "isogeny degree " + std::to_string(ell) + " is not prime");
    if (K.infinity || !detail::mul_unchecked(E, ell, K).infinity)
        fail(ErrorKind::bad_kernel, "kernel generator does not have order " + std::to_string(ell));

    std::vector<CurvePoint> kernel;
    CurvePoint Q = K;
    for (std::uint64_t i = 1; i < ell; ++i) {
        kernel.push_back(Q);
        Q = detail::add_unchecked(E, Q, K);
    }

    const auto p = E.p();
    const Fp2 three = Fp2::from_int(3, p), four = Fp2::from_int(4, p);
    Fp2 v = Fp2::zero(p), w = Fp2::zero(p);
    // One representative per {Q, -Q}: the first half of the multiples.
    const std::uint64_t reps = ell == 2 ? 1 : (ell - 1) / 2;
    for (std::uint64_t i = 0; i < reps; ++i) {
        const auto& R = kernel[i];
        Fp2 gx = three * R.x.square() + E.a();
        Fp2 vq = R.y.is_zero() ? gx : gx + gx;
        Fp2 uq = four * R.y.square();
        v += vq;
        w += uq + R.x * vq;
    }
    CurveSpec codomain(E.a() - Fp2::from_int(5, p) * v, E.b() - Fp2::from_int(7, p) * w);
    return IsogenyStep(E, std::move(codomain), K, ell, std::move(kernel));
}

/// Applies (x, y) -> (u^2 x, u^3 y), which maps y^2 = x^3 + ax + b onto
/// y^2 = x^3 + u^4 a x + u^6 b.
inline CurvePoint apply_isomorphism(const Fp2& u, const CurvePoint& P) {
    if (P.infinity) return P;
    Fp2 u2 = u.square();
    return CurvePoint::affine(u2 * P.x, u2 * u * P.y);
}

inline CurveSpec isomorphic_curve(const CurveSpec& E, const Fp2& u) {
    Fp2 u2 = u.square(), u4 = u2.square();
    return CurveSpec(u4 * E.a(), u4 * u2 * E.b());
}

/// Every u with u^4 a = a1 and u^6 b = b1, sorted by (c0, c1).
inline std::vector<Fp2> isomorphisms(const CurveSpec& E, const CurveSpec& E1) {
    std::vector<Fp2> out;
    if (!(j_invariant(E) == j_invariant(E1))) return out;
    std::vector<Fp2> squares; // candidates for u^2
    if (!E.a().is_zero() && !E.b().is_zero()) {
        squares.push_back((E1.b() / E.b()) / (E1.a() / E.a()));
    } else if (E.b().is_zero()) {
        if (auto s = fp2_sqrt(E1.a() / E.a())) {
            squares.push_back(*s);
            squares.push_back(-*s);
        }
    } else {
        squares = fp2_cube_roots(E1.b() / E.b());
    }
    for (const auto& s : squares) {
        auto r = fp2_sqrt(s);
        if (!r) continue;
        for (const auto& u : {*r, -*r}) {
            Fp2 u2 = u.square(), u4 = u2.square();
            if (u4 * E.a() == E1.a() && u4 * u2 * E.b() == E1.b() &&
                std::find(out.begin(), out.end(), u) == out.end())
                out.push_back(u);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

class IsogenyChain {
public:
    explicit IsogenyChain(CurveSpec domain)
        : domain_(domain), codomain_(domain), isomorphism_(Fp2::one(domain.p())) {}

    const CurveSpec& domain() const { return domain_; }
    /// Final curve, after the trailing isomorphism.
    const CurveSpec& codomain() const { return codomain_; }
    const std::vector<IsogenyStep>& steps() const { return steps_; }
    const Fp2& isomorphism() const { return isomorphism_; }
    std::size_t length() const { return steps_.size(); }

    std::uint64_t degree() const {
        std::uint64_t d = 1;
        for (const auto& s : steps_) d *= s.degree();
        return d;
    }

    /// Appends a step; only valid before an isomorphism is attached.
    void append(IsogenyStep step) {
        if (!isomorphism_.is_one()) fail(ErrorKind::invalid_argument, "cannot extend a chain after its isomorphism");
        if (!(step.domain() == codomain_)) fail(ErrorKind::not_on_curve, "step domain does not match chain codomain");
        codomain_ = step.codomain();
        steps_.push_back(std::move(step));
    }

    void set_isomorphism(const Fp2& u) {
        CurveSpec base = steps_.empty() ? domain_ : steps_.back().codomain();
        codomain_ = isomorphic_curve(base, u);
        isomorphism_ = u;
    }

    /// Step codomains before the final isomorphism.
    std::vector<Fp2> j_invariants() const {
        std::vector<Fp2> out;
        for (const auto& s : steps_) out.push_back(j_invariant(s.codomain()));
        return out;
    }

private:
    CurveSpec domain_;
    CurveSpec codomain_;
    std::vector<IsogenyStep> steps_;
    Fp2 isomorphism_;
};

inline CurvePoint evaluate_chain(const IsogenyChain& chain, const CurvePoint& P) {
    require_on_curve(chain.domain(), P);
    CurvePoint R = P;
    for (const auto& step : chain.steps()) R = step.evaluate(R);
    return apply_isomorphism(chain.isomorphism(), R);
}

/// e records of (kernel x, kernel y), domain to codomain.
inline Bits serialize_chain(const IsogenyChain& chain) {
    Bits out;
    for (const auto& s : chain.steps()) {
        serialize(out, s.kernel_generator().x);
        serialize(out, s.kernel_generator().y);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Kernels of degree-l steps

/// Smallest nonzero multiple of K under the canonical serialization order.
inline CurvePoint canonical_generator(const CurveSpec& E, const CurvePoint& K, std::uint64_t ell) {
    CurvePoint best = K, Q = K;
    for (std::uint64_t i = 2; i < ell; ++i) {
        Q = detail::add_unchecked(E, Q, K);
        if (canonical_key(Q) < canonical_key(best)) best = Q;
    }
    return best;
}

/// Basis of E[l]; requires l | p + 1 so the full l-torsion is rational.
inline std::pair<CurvePoint, CurvePoint> torsion_basis(const CurveSpec& E, std::uint64_t ell) {
    if (!is_prime(ell) || E.group_exponent() % ell != 0)
        fail(ErrorKind::no_such_order, std::to_string(ell) + " is not a prime dividing p+1");
    // Fixed seed: the set of subgroups does not depend on which basis is found.
    std::mt19937_64 rng(0x7415b);
    const std::uint64_t cofactor = E.group_exponent() / ell;
    auto in_span = [&](const CurvePoint& A, const CurvePoint& B) {
        CurvePoint Q = A;
        for (std::uint64_t i = 1; i < ell; ++i, Q = detail::add_unchecked(E, Q, A))
            if (Q == B) return true;
        return false;
    };
    CurvePoint A;
    for (int tries = 0; tries < 4096; ++tries) {
        auto Q = detail::mul_unchecked(E, cofactor, random_point(E, rng));
        if (Q.infinity) continue;
        if (A.infinity) {
            A = Q;
            continue;
        }
        if (!in_span(A, Q)) return {A, Q};
    }
    fail(ErrorKind::no_such_order, "could not find an l-torsion basis; is the curve supersingular?");
}

/// Canonical generators of the l + 1 cyclic subgroups of order l, sorted.
inline std::vector<CurvePoint> cyclic_subgroups(const CurveSpec& E, std::uint64_t ell) {
    auto [A, B] = torsion_basis(E, ell);
    std::vector<CurvePoint> gens;
    gens.push_back(canonical_generator(E, B, ell));
    CurvePoint G = A;
    for (std::uint64_t j = 0; j < ell; ++j, G = detail::add_unchecked(E, G, B))
        gens.push_back(canonical_generator(E, G, ell));
    std::sort(gens.begin(), gens.end(),
              [](const CurvePoint& l, const CurvePoint& r) { return canonical_key(l) < canonical_key(r); });
    return gens;
}

/// Canonical generator of the kernel of the dual of `step`.
inline CurvePoint dual_kernel(const IsogenyStep& step) {
    auto [A, B] = torsion_basis(step.domain(), step.degree());
    const auto& kernel = step.kernel();
    bool a_in_kernel = std::find(kernel.begin(), kernel.end(), A) != kernel.end();
    auto image = step.evaluate(a_in_kernel ? B : A);
    return canonical_generator(step.codomain(), image, step.degree());
}

/// Kernel choices for the next step of a non-backtracking walk.
inline std::vector<CurvePoint> walk_choices(const CurveSpec& E, std::uint64_t ell, const IsogenyStep* previous) {
    auto gens = cyclic_subgroups(E, ell);
    if (previous) {
        auto dual = dual_kernel(*previous);
        std::erase(gens, dual);
    }
    return gens;
}

/// Non-backtracking walk of e steps of degree l, deterministic in `seed`.
inline IsogenyChain random_walk(const CurveSpec& E0, std::uint64_t ell, unsigned e, std::uint64_t seed) {
    if (!is_prime(ell) || E0.group_exponent() % ell != 0)
        fail(ErrorKind::no_such_order, std::to_string(ell) + " is not a prime dividing p+1");
    std::mt19937_64 rng(seed);
    IsogenyChain chain(E0);
    for (unsigned i = 0; i < e; ++i) {
        const IsogenyStep* prev = chain.steps().empty() ? nullptr : &chain.steps().back();
        auto choices = walk_choices(chain.codomain(), ell, prev);
        auto K = choices[rng() % choices.size()];
        chain.append(velu_step(chain.codomain(), K, ell));
    }
    return chain;
}

namespace detail {

struct RecoverySearch {
    const CurveSpec& target;
    const CurvePoint& target_point;
    std::uint64_t ell;
    unsigned depth;

    // Depth-first over canonical kernel order, so the first match is the
    // lexicographically smallest chain.
    std::optional<IsogenyChain> search(IsogenyChain& chain, const CurvePoint& image) const {
        if (chain.length() == depth) {
            for (const auto& u : isomorphisms(chain.codomain(), target)) {
                if (apply_isomorphism(u, image) == target_point) {
                    IsogenyChain found = chain;
                    found.set_isomorphism(u);
                    return found;
                }
            }
            return std::nullopt;
        }
        const IsogenyStep* prev = chain.steps().empty() ? nullptr : &chain.steps().back();
        for (const auto& K : walk_choices(chain.codomain(), ell, prev)) {
            auto step = velu_step(chain.codomain(), K, ell);
            auto next_image = step.evaluate(image);
            IsogenyChain extended = chain;
            extended.append(std::move(step));
            if (auto hit = search(extended, next_image)) return hit;
        }
        return std::nullopt;
    }
};

} // namespace detail

/// Finds a degree l^e chain J from E0 with J(P) = P1 on E1 (after the
/// matching isomorphism). Exhaustive; stands in for a polynomial-time
/// torsion-point solver behind the same interface.
inline IsogenyChain recover_isogeny(const CurveSpec& E0, const CurveSpec& E1, const CurvePoint& P,
                                    const CurvePoint& P1, std::uint64_t ell, unsigned e) {
    require_on_curve(E0, P);
    require_on_curve(E1, P1);
    if (e > 0 && (!is_prime(ell) || E0.group_exponent() % ell != 0))
        fail(ErrorKind::no_such_order, std::to_string(ell) + " is not a prime dividing p+1");
    if (e > 0 && !P.infinity && point_order(E0, P) % ell == 0)
        fail(ErrorKind::invalid_argument, "torsion order must be coprime to the isogeny degree");
    IsogenyChain root(E0);
    detail::RecoverySearch search{E1, P1, ell, e};
    if (auto found = search.search(root, P)) return std::move(*found);
    fail(ErrorKind::no_isogeny_found, "no non-backtracking " + std::to_string(ell) + "^" + std::to_string(e) +
                                          " walk maps P to P1");
}

} // namespace isoshare
