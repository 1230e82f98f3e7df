#pragma once

// Element-wise stable range one on finite rings: decision, witness search
// and the finite instantiations of the generic certificate constructions.

#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srone/certificate.hpp"
#include "srone/ring.hpp"

namespace srone {

/// Ops policy over a finite ring.
struct FiniteOps {
    const Ring* ring;

    explicit FiniteOps(const Ring& r) : ring(&r) {}

    Element add(Element a, Element b) const { return ring->add(a, b); }
    Element sub(Element a, Element b) const { return ring->sub(a, b); }
    Element neg(Element a) const { return ring->neg(a); }
    Element mul(Element a, Element b) const { return ring->mul(a, b); }
    Element zero() const { return ring->zero(); }
    Element one() const { return ring->one(); }
    bool equal(Element a, Element b) const { return a == b; }
    std::string format(Element a) const { return ring->format(a); }
};

using FiniteCertificate = Certificate<Element>;

/// Per-ring state for stable range questions: witness sets for every variant,
/// computed once and shared read-only.
class SrContext {
public:
    explicit SrContext(RingPtr ring) : ring_(std::move(ring)), ops_(*ring_) {}

    const Ring& ring() const noexcept { return *ring_; }
    const RingPtr& ring_ptr() const noexcept { return ring_; }
    const FiniteOps& ops() const noexcept { return ops_; }

    const std::vector<char>& regular_flags() const {
        std::call_once(reg_once_, [this] {
            const Ring& R = *ring_;
            regular_.assign(R.order(), 0);
            for (Element a = 0; a < R.order(); ++a)
                for (Element x = 0; x < R.order(); ++x)
                    if (R.mul(R.mul(a, x), a) == a) {
                        regular_[a] = 1;
                        break;
                    }
        });
        return regular_;
    }

    /// Sorted witness set for a variant (all of R for `full`).
    const std::vector<Element>& witnesses(Variant v) const {
        auto idx = static_cast<std::size_t>(v);
        std::call_once(set_once_[idx], [this, v, idx] {
            const Ring& R = *ring_;
            auto& out = sets_[idx];
            switch (v) {
                case Variant::full:
                    out.resize(R.order());
                    for (Element a = 0; a < R.order(); ++a) out[a] = a;
                    break;
                case Variant::unit: out = R.units(); break;
                case Variant::idempotent: out = R.idempotents(); break;
                case Variant::regular: {
                    const auto& reg = regular_flags();
                    for (Element a = 0; a < R.order(); ++a)
                        if (reg[a]) out.push_back(a);
                    break;
                }
                case Variant::square: {
                    std::vector<char> seen(R.order(), 0);
                    for (Element c = 0; c < R.order(); ++c) seen[R.mul(c, c)] = 1;
                    for (Element a = 0; a < R.order(); ++a)
                        if (seen[a]) out.push_back(a);
                    break;
                }
            }
        });
        return sets_[idx];
    }

    bool in_witness_set(Element b, Variant v) const {
        const auto& w = witnesses(v);
        return std::binary_search(w.begin(), w.end(), b);
    }

    /// For all x there is b in the variant's witness set with
    /// a + b - axb (right) or a + b - bxa (left) a unit.
    bool has_sr1(Element a, Side side, Variant variant = Variant::full) const {
        const Ring& R = *ring_;
        const auto& W = witnesses(variant);
        std::vector<char> seen(R.order(), 0);
        for (Element x = 0; x < R.order(); ++x) {
            Element t = side == Side::right ? R.sub(R.one(), R.mul(a, x)) : R.sub(R.one(), R.mul(x, a));
            if (seen[t]) continue;
            seen[t] = 1;
            bool found = false;
            for (Element b : W) {
                Element u = side == Side::right ? R.add(a, R.mul(t, b)) : R.add(a, R.mul(b, t));
                if (R.is_unit(u)) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    }

    /// Witness b for (a, x): a unit takes b = 0, an idempotent e takes
    /// b = 1 - e, otherwise the least witness in index order.
    std::optional<FiniteCertificate> sr1_witness(Element a, Element x, Side side,
                                                 Variant variant = Variant::full) const {
        const Ring& R = *ring_;
        auto make = [&](Element b, const char* path) {
            FiniteCertificate c;
            c.mode = Mode::form3;
            c.side = side;
            c.variant = variant;
            c.a = a;
            c.t_or_x = x;
            c.b = b;
            c.u = unit_expression(ops_, Mode::form3, side, a, x, b);
            c.u_inv = R.unit_inverse(c.u);
            c.path = path;
            require_valid(ops_, c);
            return c;
        };
        if (R.is_unit(a) && in_witness_set(0, variant)) return make(0, "unit");
        if (R.is_idempotent(a)) {
            Element f = R.sub(R.one(), a);
            if (in_witness_set(f, variant)) {
                FiniteCertificate c = make(f, "idempotent");
                // 1 - exf (right) or 1 - fxe (left), inverse 1 + exf / 1 + fxe
                Element n = side == Side::right ? R.mul(R.mul(a, x), f) : R.mul(R.mul(f, x), a);
                if (c.u != R.sub(R.one(), n) || c.u_inv != R.add(R.one(), n))
                    throw CertificateError("idempotent witness does not have the closed form");
                return c;
            }
        }
        for (Element b : witnesses(variant)) {
            Element u = unit_expression(ops_, Mode::form3, side, a, x, b);
            if (R.is_unit(u)) return make(b, "search");
        }
        return std::nullopt;
    }

    /// Some (x, y) with a*x + t*y = 1 (right) or x*a + y*t = 1 (left).
    std::optional<std::pair<Element, Element>> comaximal(Element a, Element t, Side side = Side::right) const {
        const Ring& R = *ring_;
        std::vector<Element> pre(R.order(), kNone);
        for (Element x = 0; x < R.order(); ++x) {
            Element v = side == Side::right ? R.mul(a, x) : R.mul(x, a);
            if (pre[v] == kNone) pre[v] = x;
        }
        for (Element y = 0; y < R.order(); ++y) {
            Element ty = side == Side::right ? R.mul(t, y) : R.mul(y, t);
            Element need = R.sub(R.one(), ty);
            if (pre[need] != kNone) return std::pair{pre[need], y};
        }
        return std::nullopt;
    }

    /// Right pair certificate a + t*b = u given a*x + t*y = 1.
    std::optional<FiniteCertificate> pair_witness_with(Element a, Element t, Element x, Element y) const {
        const Ring& R = *ring_;
        if (R.add(R.mul(a, x), R.mul(t, y)) != R.one()) throw PreconditionError("pair_witness: a*x + t*y != 1");
        auto make = [&](Element b, const char* path) {
            FiniteCertificate c;
            c.mode = Mode::pair;
            c.side = Side::right;
            c.a = a;
            c.t_or_x = t;
            c.b = b;
            c.u = R.add(a, R.mul(t, b));
            c.u_inv = R.unit_inverse(c.u);
            c.path = path;
            require_valid(ops_, c);
            return c;
        };
        if (R.is_unit(a)) return make(0, "unit");
        if (R.is_idempotent(a)) return make(R.mul(y, R.sub(R.one(), a)), "idempotent");
        for (Element b = 0; b < R.order(); ++b)
            if (R.is_unit(R.add(a, R.mul(t, b)))) return make(b, "search");
        return std::nullopt;
    }

    /// Right pair certificate for a against t. Throws PreconditionError when
    /// aR + tR != R; empty when no b makes a + tb a unit.
    std::optional<FiniteCertificate> pair_witness(Element a, Element t) const {
        auto xy = comaximal(a, t);
        if (!xy) throw PreconditionError("pair_witness: aR + tR != R");
        return pair_witness_with(a, t, xy->first, xy->second);
    }

    PairOracle<Element> pair_oracle() const {
        return [this](std::size_t, const Element& a, const Element& t, const Element& x, const Element& y) {
            auto c = pair_witness_with(a, t, x, y);
            if (!c) throw CertificateError("pair oracle: factor " + ring_->format(a) + " has no witness");
            return *c;
        };
    }

private:
    static constexpr Element kNone = ~Element(0);

    RingPtr ring_;
    FiniteOps ops_;
    mutable std::once_flag reg_once_;
    mutable std::vector<char> regular_;
    mutable std::once_flag set_once_[5];
    mutable std::vector<Element> sets_[5];
};

inline bool has_sr1(const RingPtr& ring, Element a, Side side = Side::right, Variant variant = Variant::full) {
    return SrContext(ring).has_sr1(a, side, variant);
}

inline std::optional<FiniteCertificate> sr1_witness(const RingPtr& ring, Element a, Element x, Side side = Side::right,
                                                    Variant variant = Variant::full) {
    return SrContext(ring).sr1_witness(a, x, side, variant);
}

inline std::optional<FiniteCertificate> pair_witness(const RingPtr& ring, Element a, Element t) {
    return SrContext(ring).pair_witness(a, t);
}

/// Corner oracle backed by exhaustive search in eRe.
class FiniteCornerOracle {
public:
    FiniteCornerOracle(const RingPtr& parent, Element e) : parent_(parent), corner_(make_corner(parent, e)), ctx_(corner_) {}

    const RingPtr& corner() const noexcept { return corner_; }

    CornerWitness<Element> operator()(const Element& a, const Element& w) const {
        auto ca = corner_->restrict(a), cw = corner_->restrict(w);
        if (!ca || !cw) throw PreconditionError("corner oracle: argument outside eRe");
        auto c = ctx_.sr1_witness(*ca, *cw, Side::right);
        if (!c) throw CertificateError("corner oracle: " + parent_->format(a) + " has no witness in eRe");
        return {corner_->embed(c->b), corner_->embed(c->u), corner_->embed(c->u_inv)};
    }

private:
    RingPtr parent_;
    RingPtr corner_;
    SrContext ctx_;
};

/// Schur reduction of M = [[1,a],[b,c]] over M(2,S): M is sr-one in M(2,S)
/// iff c - ba is sr-one in S.
struct SchurReduction {
    Element complement;
    bool sr;
};

inline SchurReduction schur_reduce(const SrContext& s, Element a, Element b, Element c) {
    const Ring& S = s.ring();
    Element d = S.sub(c, S.mul(b, a));
    return {d, s.has_sr1(d, Side::right)};
}

}  // namespace srone
