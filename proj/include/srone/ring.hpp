#pragma once

/**
 * @file ring.hpp
 * @brief Finite rings with indexed carriers.
 *
 * Every finite ring is described by a Ring: the carrier is {0, ..., order-1},
 * the operations are total functions on those indices and element 0 is
 * always the additive identity. Rings are immutable once built and are
 * shared through RingPtr, so derived rings (matrix rings, corners,
 * quotients, ...) keep their component rings alive.
 *
 * Operation results are computed structurally from the component rings.
 * Rings of order <= kTableLimit additionally cache flat addition and
 * multiplication tables, their unit group and their idempotents at
 * construction time. Larger rings compute those caches on first use.
 *
 * Index encoding (mixed radix, first coordinate most significant):
 *   Z/n         least nonnegative residue
 *   M(k,B)      row-major over the k*k entries, radix |B|
 *   T(k,B)      row-major over the entries on or above the diagonal
 *   A x B x ..  coordinates in the listed order
 *   corner / quotient   rank of the (least) parent representative
 *   op(R)       same indices as R
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srone/error.hpp"
#include "srone/literal.hpp"

namespace srone {

using Element = std::uint32_t;

enum class RingKind { modular, matrix, triangular, product, corner, opposite, quotient };

inline constexpr std::uint32_t kTableLimit = 4096;
/// Rings up to this order get exhaustive triple axiom checks.
inline constexpr std::uint32_t kExhaustiveTripleLimit = 256;
inline constexpr std::uint32_t kAxiomSamples = 100000;

inline const char* to_string(RingKind k) {
    switch (k) {
        case RingKind::modular: return "modular";
        case RingKind::matrix: return "matrix";
        case RingKind::triangular: return "triangular";
        case RingKind::product: return "product";
        case RingKind::corner: return "corner";
        case RingKind::opposite: return "opposite";
        case RingKind::quotient: return "quotient";
    }
    return "?";
}

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

namespace detail {

/// Deterministic generator for sampled axiom checks.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t operator()() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return (*this)() % n; }
};

struct Structure {
    virtual ~Structure() = default;
    virtual std::uint32_t order() const = 0;
    virtual Element add(Element a, Element b) const = 0;
    virtual Element neg(Element a) const = 0;
    virtual Element mul(Element a, Element b) const = 0;
    virtual Element one() const = 0;
    virtual void format(Element a, std::string& out) const = 0;
    virtual Element decode(const LiteralNode& lit) const = 0;
};

}  // namespace detail

/// Shape of a matrix or upper-triangular ring over a base ring.
struct MatrixShape {
    int k = 0;
    bool triangular = false;
    RingPtr base;
};

class Ring {
public:
    Ring(std::string id, RingKind kind, std::shared_ptr<const detail::Structure> s)
        : id_(std::move(id)), kind_(kind), s_(std::move(s)), n_(s_->order()), one_(s_->one()) {}

    Ring(const Ring&) = delete;
    Ring& operator=(const Ring&) = delete;

    const std::string& id() const noexcept { return id_; }
    RingKind kind() const noexcept { return kind_; }
    std::uint32_t order() const noexcept { return n_; }
    Element zero() const noexcept { return 0; }
    Element one() const noexcept { return one_; }

    Element add(Element a, Element b) const {
        return tabled_ ? add_[std::size_t(a) * n_ + b] : s_->add(a, b);
    }
    Element mul(Element a, Element b) const {
        return tabled_ ? mul_[std::size_t(a) * n_ + b] : s_->mul(a, b);
    }
    Element neg(Element a) const { return tabled_ ? neg_[a] : s_->neg(a); }
    Element sub(Element a, Element b) const { return add(a, neg(b)); }
    Element mul(Element a, Element b, Element c) const { return mul(mul(a, b), c); }

    bool is_unit(Element a) const {
        ensure_units();
        return inverse_[a] != kNone;
    }
    std::optional<Element> inverse(Element a) const {
        ensure_units();
        if (inverse_[a] == kNone) return std::nullopt;
        return inverse_[a];
    }
    /// Inverse of a known unit; throws PreconditionError otherwise.
    Element unit_inverse(Element a) const {
        ensure_units();
        if (inverse_[a] == kNone) throw PreconditionError("element " + format(a) + " is not a unit");
        return inverse_[a];
    }
    const std::vector<Element>& units() const {
        ensure_units();
        return units_;
    }
    const std::vector<Element>& idempotents() const {
        std::call_once(idem_once_, [this] {
            for (Element a = 0; a < n_; ++a)
                if (mul(a, a) == a) idempotents_.push_back(a);
        });
        return idempotents_;
    }
    bool is_idempotent(Element a) const { return mul(a, a) == a; }

    bool commutative() const {
        std::call_once(comm_once_, [this] {
            commutative_ = true;
            if (std::uint64_t(n_) * n_ <= std::uint64_t(kTableLimit) * kTableLimit) {
                for (Element a = 0; a < n_ && commutative_; ++a)
                    for (Element b = a + 1; b < n_; ++b)
                        if (mul(a, b) != mul(b, a)) {
                            commutative_ = false;
                            break;
                        }
            } else {
                detail::SplitMix64 rng(0xc0ffee);
                for (std::uint32_t i = 0; i < kAxiomSamples; ++i) {
                    Element a = Element(rng.below(n_)), b = Element(rng.below(n_));
                    if (mul(a, b) != mul(b, a)) {
                        commutative_ = false;
                        break;
                    }
                }
            }
        });
        return commutative_;
    }
    bool is_central(Element a) const {
        for (Element r = 0; r < n_; ++r)
            if (mul(a, r) != mul(r, a)) return false;
        return true;
    }

    bool has_involution() const noexcept { return !star_.empty(); }
    Element star(Element a) const {
        if (star_.empty()) throw PreconditionError("ring " + id_ + " has no involution");
        return star_[a];
    }

    std::string format(Element a) const {
        std::string out;
        s_->format(a, out);
        return out;
    }
    void format_to(Element a, std::string& out) const { s_->format(a, out); }
    Element decode(const LiteralNode& lit) const { return s_->decode(lit); }
    Element parse(std::string_view literal) const { return decode(parse_literal(literal)); }

    /// Matrix / triangular shape, or nullopt for other kinds.
    std::optional<MatrixShape> matrix_shape() const;
    /// All k*k entries of a matrix-kind element (zeros below the diagonal for T).
    std::vector<Element> entries(Element a) const;
    /// Matrix-kind element from k*k base entries.
    Element from_entries(std::span<const Element> entries) const;

    /// Parent ring for corner / opposite / quotient kinds.
    RingPtr parent() const;
    /// Corner kind: the parent element for a corner index.
    Element embed(Element a) const;
    /// Corner kind: the corner index of a parent element of eRe.
    std::optional<Element> restrict(Element parent_element) const;
    /// Quotient kind: image of a parent element.
    Element project(Element parent_element) const;

    const detail::Structure& structure() const noexcept { return *s_; }
    std::shared_ptr<const detail::Structure> structure_ptr() const noexcept { return s_; }

    bool has_tables() const noexcept { return tabled_; }

    /// Builds tables and caches then runs the axiom checks. Called by every builder.
    void finalize() {
        if (n_ <= kTableLimit) {
            const std::size_t n = n_;
            add_.resize(n * n);
            mul_.resize(n * n);
            neg_.resize(n);
            for (Element a = 0; a < n_; ++a) {
                neg_[a] = static_cast<std::uint16_t>(s_->neg(a));
                for (Element b = 0; b < n_; ++b) {
                    add_[a * n + b] = static_cast<std::uint16_t>(s_->add(a, b));
                    mul_[a * n + b] = static_cast<std::uint16_t>(s_->mul(a, b));
                }
            }
            tabled_ = true;
        }
        validate_axioms();
        if (n_ <= kTableLimit) {
            units();
            idempotents();
            commutative();
        }
    }

    /// Copies the operation tables of an already validated ring on the same structure.
    void adopt(const Ring& other) {
        if (other.s_ != s_) throw PreconditionError("adopt needs the same structure");
        tabled_ = other.tabled_;
        add_ = other.add_;
        mul_ = other.mul_;
        neg_ = other.neg_;
        if (n_ <= kTableLimit) {
            units();
            idempotents();
            commutative();
        }
    }

    void set_involution(std::vector<Element> star) {
        star_ = std::move(star);
        validate_involution();
    }

private:
    static constexpr Element kNone = ~Element(0);

    void ensure_units() const {
        std::call_once(units_once_, [this] {
            inverse_.assign(n_, kNone);
            for (Element a = 0; a < n_; ++a) {
                if (inverse_[a] != kNone) continue;
                for (Element b = 0; b < n_; ++b) {
                    if (mul(a, b) == one_ && mul(b, a) == one_) {
                        inverse_[a] = b;
                        inverse_[b] = a;
                        break;
                    }
                }
            }
            for (Element a = 0; a < n_; ++a)
                if (inverse_[a] != kNone) units_.push_back(a);
        });
    }

    void fail(const std::string& what) const { throw AxiomViolation(id_ + ": " + what); }

    void check_triple(Element a, Element b, Element c) const {
        if (add(add(a, b), c) != add(a, add(b, c))) fail("addition is not associative");
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail("multiplication is not associative");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) fail("left distributivity fails");
        if (mul(add(a, b), c) != add(mul(a, c), mul(b, c))) fail("right distributivity fails");
    }

    void check_pair(Element a, Element b) const {
        if (add(a, b) != add(b, a)) fail("addition is not commutative");
    }

    void check_single(Element a) const {
        if (add(a, 0) != a) fail("0 is not an additive identity");
        if (add(a, neg(a)) != 0) fail("negation is not an additive inverse");
        if (mul(a, one_) != a || mul(one_, a) != a) fail("1 is not a two-sided identity");
    }

    void validate_axioms() const {
        if (n_ < 2) fail("the zero ring is not allowed");
        if (one_ == 0) fail("1 = 0");
        for (Element a = 0; a < n_; ++a) check_single(a);
        if (n_ <= kExhaustiveTripleLimit) {
            for (Element a = 0; a < n_; ++a)
                for (Element b = 0; b < n_; ++b) {
                    check_pair(a, b);
                    for (Element c = 0; c < n_; ++c) check_triple(a, b, c);
                }
            return;
        }
        if (n_ <= kTableLimit) {
            for (Element a = 0; a < n_; ++a)
                for (Element b = 0; b < n_; ++b) check_pair(a, b);
        }
        detail::SplitMix64 rng(0x5eed0000ULL + n_);
        for (std::uint32_t i = 0; i < kAxiomSamples; ++i) {
            Element a = Element(rng.below(n_)), b = Element(rng.below(n_)), c = Element(rng.below(n_));
            check_pair(a, b);
            check_triple(a, b, c);
        }
    }

    void validate_involution() const {
        if (star_.size() != n_) fail("involution table has the wrong size");
        if (star_[one_] != one_) fail("involution does not fix 1");
        auto check = [&](Element a, Element b) {
            if (add(star_[a], star_[b]) != star_[add(a, b)]) fail("involution is not additive");
            if (mul(star_[b], star_[a]) != star_[mul(a, b)]) fail("involution is not an anti-homomorphism");
        };
        for (Element a = 0; a < n_; ++a)
            if (star_[star_[a]] != a) fail("involution is not of order two");
        if (n_ <= kTableLimit) {
            for (Element a = 0; a < n_; ++a)
                for (Element b = 0; b < n_; ++b) check(a, b);
        } else {
            detail::SplitMix64 rng(0x57a7ULL);
            for (std::uint32_t i = 0; i < kAxiomSamples; ++i) check(Element(rng.below(n_)), Element(rng.below(n_)));
        }
    }

    std::string id_;
    RingKind kind_;
    std::shared_ptr<const detail::Structure> s_;
    std::uint32_t n_;
    Element one_;

    bool tabled_ = false;
    std::vector<std::uint16_t> add_, mul_, neg_;
    std::vector<Element> star_;

    mutable std::once_flag units_once_, idem_once_, comm_once_;
    mutable std::vector<Element> inverse_;
    mutable std::vector<Element> units_;
    mutable std::vector<Element> idempotents_;
    mutable bool commutative_ = false;
};

// ---------------------------------------------------------------------------
// Structures

namespace detail {

inline std::uint32_t checked_order(std::uint64_t order, const std::string& what) {
    if (order > (std::uint64_t(1) << 31)) throw PreconditionError(what + " is too large to enumerate");
    return static_cast<std::uint32_t>(order);
}

struct ModularStructure final : Structure {
    std::uint32_t n;
    explicit ModularStructure(std::uint32_t modulus) : n(modulus) {}

    std::uint32_t order() const override { return n; }
    Element add(Element a, Element b) const override { return Element((std::uint64_t(a) + b) % n); }
    Element neg(Element a) const override { return a == 0 ? 0 : n - a; }
    Element mul(Element a, Element b) const override { return Element((std::uint64_t(a) * b) % n); }
    Element one() const override { return 1 % n; }
    void format(Element a, std::string& out) const override { out += std::to_string(a); }
    Element decode(const LiteralNode& lit) const override {
        if (lit.kind != LiteralNode::Kind::integer)
            throw ParseError("expected an integer residue for Z/" + std::to_string(n), lit.offset);
        if (lit.value < 0 || lit.value >= std::int64_t(n))
            throw ParseError("residue " + std::to_string(lit.value) + " out of range for Z/" + std::to_string(n),
                             lit.offset);
        return Element(lit.value);
    }
};

struct MatrixStructure final : Structure {
    RingPtr base;
    int k;
    bool triangular;
    std::vector<std::pair<int, int>> positions;  // stored entries, row-major
    std::vector<int> slot;                       // k*k -> index into positions or -1
    std::uint32_t radix;
    std::uint32_t n;

    MatrixStructure(RingPtr b, int size, bool upper) : base(std::move(b)), k(size), triangular(upper) {
        if (k < 1) throw PreconditionError("matrix size must be at least 1");
        slot.assign(std::size_t(k) * k, -1);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (!triangular || i <= j) {
                    slot[i * k + j] = int(positions.size());
                    positions.emplace_back(i, j);
                }
        radix = base->order();
        std::uint64_t ord = 1;
        for (std::size_t i = 0; i < positions.size(); ++i) {
            ord *= radix;
            if (ord > (std::uint64_t(1) << 31)) throw PreconditionError("matrix ring is too large to enumerate");
        }
        n = std::uint32_t(ord);
    }

    std::uint32_t order() const override { return n; }

    void digits(Element a, Element* out) const {
        for (std::size_t p = positions.size(); p-- > 0;) {
            out[p] = a % radix;
            a /= radix;
        }
    }
    Element encode(const Element* d) const {
        std::uint64_t v = 0;
        for (std::size_t p = 0; p < positions.size(); ++p) v = v * radix + d[p];
        return Element(v);
    }
    void full(Element a, std::vector<Element>& m) const {
        m.assign(std::size_t(k) * k, 0);
        std::array<Element, 64> d{};
        std::vector<Element> big;
        Element* dp = d.data();
        if (positions.size() > d.size()) {
            big.resize(positions.size());
            dp = big.data();
        }
        digits(a, dp);
        for (std::size_t p = 0; p < positions.size(); ++p)
            m[positions[p].first * k + positions[p].second] = dp[p];
    }
    Element from_full(const std::vector<Element>& m) const {
        std::vector<Element> d(positions.size());
        for (std::size_t p = 0; p < positions.size(); ++p) d[p] = m[positions[p].first * k + positions[p].second];
        return encode(d.data());
    }

    Element add(Element a, Element b) const override {
        std::vector<Element> x, y;
        full(a, x);
        full(b, y);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = base->add(x[i], y[i]);
        return from_full(x);
    }
    Element neg(Element a) const override {
        std::vector<Element> x;
        full(a, x);
        for (auto& v : x) v = base->neg(v);
        return from_full(x);
    }
    Element mul(Element a, Element b) const override {
        std::vector<Element> x, y, z(std::size_t(k) * k, 0);
        full(a, x);
        full(b, y);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                Element acc = 0;
                for (int l = 0; l < k; ++l) acc = base->add(acc, base->mul(x[i * k + l], y[l * k + j]));
                z[i * k + j] = acc;
            }
        return from_full(z);
    }
    Element one() const override {
        std::vector<Element> m(std::size_t(k) * k, 0);
        for (int i = 0; i < k; ++i) m[i * k + i] = base->one();
        return from_full(m);
    }
    void format(Element a, std::string& out) const override {
        std::vector<Element> m;
        full(a, m);
        out += '[';
        for (int i = 0; i < k; ++i) {
            if (i) out += ',';
            out += '[';
            for (int j = 0; j < k; ++j) {
                if (j) out += ',';
                base->format_to(m[i * k + j], out);
            }
            out += ']';
        }
        out += ']';
    }
    Element decode(const LiteralNode& lit) const override {
        std::vector<Element> m(std::size_t(k) * k, 0);
        if (lit.kind == LiteralNode::Kind::matrix_unit) {
            if (lit.row < 1 || lit.row > k || lit.col < 1 || lit.col > k)
                throw ParseError("matrix unit out of range", lit.offset);
            m[(lit.row - 1) * k + (lit.col - 1)] = base->one();
        } else {
            if (lit.kind != LiteralNode::Kind::list || lit.items.size() != std::size_t(k))
                throw ParseError("expected a list of " + std::to_string(k) + " rows", lit.offset);
            for (int i = 0; i < k; ++i) {
                const auto& row = lit.items[i];
                if (row.kind != LiteralNode::Kind::list || row.items.size() != std::size_t(k))
                    throw ParseError("expected a row of " + std::to_string(k) + " entries", row.offset);
                for (int j = 0; j < k; ++j) m[i * k + j] = base->decode(row.items[j]);
            }
        }
        if (triangular)
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < i; ++j)
                    if (m[i * k + j] != 0) throw ParseError("entry below the diagonal must be zero", lit.offset);
        return from_full(m);
    }
};

struct ProductStructure final : Structure {
    std::vector<RingPtr> parts;
    std::vector<std::uint32_t> radix;
    std::uint32_t n;

    explicit ProductStructure(std::vector<RingPtr> components) : parts(std::move(components)) {
        std::uint64_t ord = 1;
        for (const auto& p : parts) {
            radix.push_back(p->order());
            ord *= p->order();
            if (ord > (std::uint64_t(1) << 31)) throw PreconditionError("product ring is too large to enumerate");
        }
        n = std::uint32_t(ord);
    }

    std::uint32_t order() const override { return n; }

    void split(Element a, std::vector<Element>& out) const {
        out.resize(parts.size());
        for (std::size_t i = parts.size(); i-- > 0;) {
            out[i] = a % radix[i];
            a /= radix[i];
        }
    }
    Element join(const std::vector<Element>& c) const {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) v = v * radix[i] + c[i];
        return Element(v);
    }
    template <class F>
    Element zip(Element a, Element b, F f) const {
        std::vector<Element> x, y;
        split(a, x);
        split(b, y);
        for (std::size_t i = 0; i < parts.size(); ++i) x[i] = f(*parts[i], x[i], y[i]);
        return join(x);
    }

    Element add(Element a, Element b) const override {
        return zip(a, b, [](const Ring& r, Element x, Element y) { return r.add(x, y); });
    }
    Element mul(Element a, Element b) const override {
        return zip(a, b, [](const Ring& r, Element x, Element y) { return r.mul(x, y); });
    }
    Element neg(Element a) const override {
        return zip(a, a, [](const Ring& r, Element x, Element) { return r.neg(x); });
    }
    Element one() const override {
        std::vector<Element> c;
        for (const auto& p : parts) c.push_back(p->one());
        return join(c);
    }
    void format(Element a, std::string& out) const override {
        std::vector<Element> c;
        split(a, c);
        out += '(';
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) out += ',';
            parts[i]->format_to(c[i], out);
        }
        out += ')';
    }
    Element decode(const LiteralNode& lit) const override {
        if (lit.kind != LiteralNode::Kind::tuple || lit.items.size() != parts.size())
            throw ParseError("expected a tuple of " + std::to_string(parts.size()) + " coordinates", lit.offset);
        std::vector<Element> c(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) c[i] = parts[i]->decode(lit.items[i]);
        return join(c);
    }
};

/// Shared machinery for rings whose carrier is a subset of (or a set of
/// representatives in) a parent ring.
struct IndexedSubsetStructure : Structure {
    RingPtr parent;
    std::vector<Element> carrier;  // sorted parent elements
    std::vector<Element> position;  // parent element -> index or kNone

    static constexpr Element kNone = ~Element(0);

    std::uint32_t order() const override { return std::uint32_t(carrier.size()); }
    void format(Element a, std::string& out) const override { parent->format_to(carrier[a], out); }
};

struct CornerStructure final : IndexedSubsetStructure {
    Element e;

    CornerStructure(RingPtr p, Element idem) : e(idem) {
        parent = std::move(p);
        position.assign(parent->order(), kNone);
        for (Element r = 0; r < parent->order(); ++r) {
            Element ere = parent->mul(parent->mul(e, r), e);
            position[ere] = 0;
        }
        for (Element r = 0; r < parent->order(); ++r)
            if (position[r] != kNone) {
                position[r] = Element(carrier.size());
                carrier.push_back(r);
            }
    }

    Element add(Element a, Element b) const override { return position[parent->add(carrier[a], carrier[b])]; }
    Element neg(Element a) const override { return position[parent->neg(carrier[a])]; }
    Element mul(Element a, Element b) const override { return position[parent->mul(carrier[a], carrier[b])]; }
    Element one() const override { return position[e]; }
    Element decode(const LiteralNode& lit) const override {
        Element r = parent->decode(lit);
        if (position[r] == kNone) throw ParseError("element is not in the corner ring", lit.offset);
        return position[r];
    }
};

struct QuotientStructure final : IndexedSubsetStructure {
    std::vector<Element> ideal;
    std::vector<Element> canon;  // parent element -> quotient index

    QuotientStructure(RingPtr p, std::vector<Element> ideal_elements) : ideal(std::move(ideal_elements)) {
        parent = std::move(p);
        const std::uint32_t n = parent->order();
        std::vector<Element> rep(n, kNone);
        for (Element r = 0; r < n; ++r) {
            if (rep[r] != kNone) continue;
            // r is the least member of its coset since cosets are visited in index order
            for (Element j : ideal) rep[parent->add(r, j)] = r;
        }
        position.assign(n, kNone);
        canon.assign(n, kNone);
        for (Element r = 0; r < n; ++r)
            if (rep[r] == r) {
                position[r] = Element(carrier.size());
                carrier.push_back(r);
            }
        for (Element r = 0; r < n; ++r) canon[r] = position[rep[r]];
    }

    Element add(Element a, Element b) const override { return canon[parent->add(carrier[a], carrier[b])]; }
    Element neg(Element a) const override { return canon[parent->neg(carrier[a])]; }
    Element mul(Element a, Element b) const override { return canon[parent->mul(carrier[a], carrier[b])]; }
    Element one() const override { return canon[parent->one()]; }
    Element decode(const LiteralNode& lit) const override { return canon[parent->decode(lit)]; }
};

struct OppositeStructure final : Structure {
    RingPtr parent;
    explicit OppositeStructure(RingPtr p) : parent(std::move(p)) {}

    std::uint32_t order() const override { return parent->order(); }
    Element add(Element a, Element b) const override { return parent->add(a, b); }
    Element neg(Element a) const override { return parent->neg(a); }
    Element mul(Element a, Element b) const override { return parent->mul(b, a); }
    Element one() const override { return parent->one(); }
    void format(Element a, std::string& out) const override { parent->format_to(a, out); }
    Element decode(const LiteralNode& lit) const override { return parent->decode(lit); }
};

inline RingPtr finish(std::string id, RingKind kind, std::shared_ptr<const Structure> s) {
    auto r = std::make_shared<Ring>(std::move(id), kind, std::move(s));
    r->finalize();
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Ring accessors that depend on the concrete structures

inline std::optional<MatrixShape> Ring::matrix_shape() const {
    if (auto m = dynamic_cast<const detail::MatrixStructure*>(s_.get())) return MatrixShape{m->k, m->triangular, m->base};
    return std::nullopt;
}

inline std::vector<Element> Ring::entries(Element a) const {
    auto m = dynamic_cast<const detail::MatrixStructure*>(s_.get());
    if (!m) throw PreconditionError(id_ + " is not a matrix ring");
    std::vector<Element> out;
    m->full(a, out);
    return out;
}

inline Element Ring::from_entries(std::span<const Element> entries) const {
    auto m = dynamic_cast<const detail::MatrixStructure*>(s_.get());
    if (!m) throw PreconditionError(id_ + " is not a matrix ring");
    if (entries.size() != std::size_t(m->k) * m->k) throw PreconditionError("wrong number of matrix entries");
    std::vector<Element> full(entries.begin(), entries.end());
    if (m->triangular)
        for (int i = 0; i < m->k; ++i)
            for (int j = 0; j < i; ++j)
                if (full[i * m->k + j] != 0) throw PreconditionError("entry below the diagonal must be zero");
    return m->from_full(full);
}

inline RingPtr Ring::parent() const {
    if (auto c = dynamic_cast<const detail::IndexedSubsetStructure*>(s_.get())) return c->parent;
    if (auto o = dynamic_cast<const detail::OppositeStructure*>(s_.get())) return o->parent;
    return nullptr;
}

inline Element Ring::embed(Element a) const {
    auto c = dynamic_cast<const detail::CornerStructure*>(s_.get());
    if (!c) throw PreconditionError(id_ + " is not a corner ring");
    return c->carrier[a];
}

inline std::optional<Element> Ring::restrict(Element parent_element) const {
    auto c = dynamic_cast<const detail::CornerStructure*>(s_.get());
    if (!c) throw PreconditionError(id_ + " is not a corner ring");
    Element p = c->position[parent_element];
    if (p == detail::IndexedSubsetStructure::kNone) return std::nullopt;
    return p;
}

inline Element Ring::project(Element parent_element) const {
    auto q = dynamic_cast<const detail::QuotientStructure*>(s_.get());
    if (!q) throw PreconditionError(id_ + " is not a quotient ring");
    return q->canon[parent_element];
}

// ---------------------------------------------------------------------------
// Builders

inline RingPtr make_modular(std::uint32_t n) {
    if (n < 2) throw PreconditionError("Z/n needs n >= 2");
    return detail::finish("Z/" + std::to_string(n), RingKind::modular, std::make_shared<detail::ModularStructure>(n));
}

inline RingPtr make_matrix(int k, RingPtr base) {
    std::string id = "M(" + std::to_string(k) + "," + base->id() + ")";
    return detail::finish(std::move(id), RingKind::matrix, std::make_shared<detail::MatrixStructure>(base, k, false));
}

inline RingPtr make_triangular(int k, RingPtr base) {
    std::string id = "T(" + std::to_string(k) + "," + base->id() + ")";
    return detail::finish(std::move(id), RingKind::triangular,
                          std::make_shared<detail::MatrixStructure>(base, k, true));
}

inline RingPtr make_product(std::vector<RingPtr> parts) {
    if (parts.size() < 2) throw PreconditionError("a product needs at least two factors");
    std::string id;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) id += " x ";
        id += parts[i]->id();
    }
    return detail::finish(std::move(id), RingKind::product, std::make_shared<detail::ProductStructure>(std::move(parts)));
}

inline RingPtr make_corner(RingPtr parent, Element e) {
    if (!parent->is_idempotent(e)) throw PreconditionError("corner element " + parent->format(e) + " is not idempotent");
    if (e == parent->zero()) throw PreconditionError("the corner at 0 is the zero ring");
    std::string id = "corner(" + parent->id() + "," + parent->format(e) + ")";
    return detail::finish(std::move(id), RingKind::corner, std::make_shared<detail::CornerStructure>(parent, e));
}

inline RingPtr make_opposite(RingPtr parent) {
    std::string id = "op(" + parent->id() + ")";
    auto s = std::make_shared<detail::OppositeStructure>(parent);
    auto r = std::make_shared<Ring>(std::move(id), RingKind::opposite, s);
    r->finalize();
    if (parent->has_involution()) {
        std::vector<Element> star(parent->order());
        for (Element a = 0; a < parent->order(); ++a) star[a] = parent->star(a);
        r->set_involution(std::move(star));
    }
    return r;
}

/// Two-sided ideal generated by `gens`, as a sorted element list. Computed as
/// the fixed point of J <- additive span of (J + R*J*R).
inline std::vector<Element> ideal_closure(const Ring& r, std::span<const Element> gens) {
    const std::uint32_t n = r.order();
    std::vector<char> in(n, 0);
    std::vector<Element> members{0};
    in[0] = 1;
    std::vector<Element> pending(gens.begin(), gens.end());
    auto absorb = [&](Element g) {
        if (in[g]) return;
        // extend the additive subgroup by g: members + k*g for all k
        std::vector<Element> frontier = members;
        while (!frontier.empty()) {
            std::vector<Element> next;
            for (Element m : frontier) {
                Element s = r.add(m, g);
                if (!in[s]) {
                    in[s] = 1;
                    members.push_back(s);
                    next.push_back(s);
                }
            }
            frontier = std::move(next);
        }
        // closure under the subgroup: members is the span of the old set and g
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                Element s = r.add(members[i], members[j]);
                if (!in[s]) {
                    in[s] = 1;
                    members.push_back(s);
                }
            }
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (Element g : pending) absorb(g);
        pending.clear();
        const std::vector<Element> snapshot = members;
        for (Element j : snapshot)
            for (Element a = 0; a < n; ++a) {
                Element aj = r.mul(a, j);
                for (Element b = 0; b < n; ++b) {
                    Element v = r.mul(aj, b);
                    if (!in[v]) {
                        pending.push_back(v);
                        changed = true;
                    }
                }
                if (pending.size() > n) break;
            }
        std::sort(pending.begin(), pending.end());
        pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
    }
    std::sort(members.begin(), members.end());
    return members;
}

inline RingPtr make_quotient(RingPtr parent, std::span<const Element> gens) {
    auto ideal = ideal_closure(*parent, gens);
    if (std::binary_search(ideal.begin(), ideal.end(), parent->one()))
        throw PreconditionError("the ideal contains 1, so the quotient is the zero ring");
    std::string id = "quot(" + parent->id();
    for (Element g : gens) id += "," + parent->format(g);
    id += ")";
    return detail::finish(std::move(id), RingKind::quotient,
                          std::make_shared<detail::QuotientStructure>(parent, std::move(ideal)));
}

/// Same ring with the transpose involution attached. Only M(k,S) with S
/// commutative qualifies.
inline RingPtr with_transpose(const RingPtr& ring) {
    auto shape = ring->matrix_shape();
    if (!shape || shape->triangular) throw PreconditionError("transpose needs a full matrix ring");
    if (!shape->base->commutative()) throw PreconditionError("transpose is an involution only over a commutative base");
    auto r = std::make_shared<Ring>(ring->id(), ring->kind(), ring->structure_ptr());
    r->adopt(*ring);
    const int k = shape->k;
    std::vector<Element> star(ring->order());
    for (Element a = 0; a < ring->order(); ++a) {
        auto m = ring->entries(a);
        std::vector<Element> t(m.size());
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) t[j * k + i] = m[i * k + j];
        star[a] = ring->from_entries(t);
    }
    r->set_involution(std::move(star));
    return r;
}

// ---------------------------------------------------------------------------
// Peirce decomposition

/// Peirce decomposition of a ring along e and f = 1 - e.
class PeirceSplit {
public:
    PeirceSplit(RingPtr ring, Element e) : ring_(std::move(ring)), e_(e) {
        if (!ring_->is_idempotent(e_)) throw PreconditionError("Peirce split needs an idempotent, got " + ring_->format(e_));
        f_ = ring_->sub(ring_->one(), e_);
    }

    Element e() const noexcept { return e_; }
    Element f() const noexcept { return f_; }
    const RingPtr& ring() const noexcept { return ring_; }

    /// (ere, erf, fre, frf)
    std::array<Element, 4> components(Element r) const {
        const Ring& R = *ring_;
        return {R.mul(e_, r, e_), R.mul(e_, r, f_), R.mul(f_, r, e_), R.mul(f_, r, f_)};
    }

    bool in_eRe(Element r) const { return ring_->mul(e_, r, e_) == r; }
    bool in_eRf(Element r) const { return ring_->mul(e_, r, f_) == r; }
    bool in_fRe(Element r) const { return ring_->mul(f_, r, e_) == r; }
    bool in_fRf(Element r) const { return ring_->mul(f_, r, f_) == r; }

    std::vector<Element> eRe() const { return block(e_, e_); }
    std::vector<Element> eRf() const { return block(e_, f_); }
    std::vector<Element> fRe() const { return block(f_, e_); }
    std::vector<Element> fRf() const { return block(f_, f_); }

    /// eRe as a ring with identity e (built on first use).
    RingPtr corner() const {
        std::call_once(corner_once_, [this] { corner_ = make_corner(ring_, e_); });
        return corner_;
    }
    /// fRf as a ring with identity f.
    RingPtr complement_corner() const {
        std::call_once(co_once_, [this] { co_corner_ = make_corner(ring_, f_); });
        return co_corner_;
    }

private:
    std::vector<Element> block(Element left, Element right) const {
        std::vector<char> seen(ring_->order(), 0);
        std::vector<Element> out;
        for (Element r = 0; r < ring_->order(); ++r) {
            Element v = ring_->mul(left, r, right);
            if (!seen[v]) {
                seen[v] = 1;
                out.push_back(v);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    RingPtr ring_;
    Element e_, f_;
    mutable std::once_flag corner_once_, co_once_;
    mutable RingPtr corner_, co_corner_;
};

inline PeirceSplit peirce_split(const RingPtr& ring, Element e) { return PeirceSplit(ring, e); }

}  // namespace srone
