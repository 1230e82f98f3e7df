#pragma once

// Stable-range-one witness certificates and the ring-generic constructions
// that build them (product chains, unit transport, corner suspension).
//
// Everything here is written against an "ops" policy so the same code runs
// over finite rings and over exact integer matrices. A policy provides:
//
//   T add(T,T), sub(T,T), neg(T), mul(T,T), zero(), one()
//   bool equal(const T&, const T&)
//   std::string format(const T&)

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srone/error.hpp"

namespace srone {

enum class Side { right, left };
enum class Variant { full, unit, idempotent, regular, square };
enum class Mode { pair, form3 };

inline const char* to_string(Side s) { return s == Side::right ? "right" : "left"; }
inline const char* to_string(Mode m) { return m == Mode::pair ? "pair" : "form3"; }
inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::full: return "full";
        case Variant::unit: return "unit";
        case Variant::idempotent: return "idempotent";
        case Variant::regular: return "regular";
        case Variant::square: return "square";
    }
    return "?";
}

inline Side parse_side(std::string_view s) {
    if (s == "right") return Side::right;
    if (s == "left") return Side::left;
    throw PreconditionError("unknown side '" + std::string(s) + "'");
}

inline Variant parse_variant(std::string_view s) {
    for (Variant v : {Variant::full, Variant::unit, Variant::idempotent, Variant::regular, Variant::square})
        if (s == to_string(v)) return v;
    throw PreconditionError("unknown variant '" + std::string(s) + "'");
}

inline constexpr Variant kAllVariants[] = {Variant::full, Variant::unit, Variant::idempotent, Variant::regular,
                                           Variant::square};

/// pair:  u = a + t*b (right) or a + b*t (left)
/// form3: u = a + b - a*x*b (right) or a + b - b*x*a (left)
template <class T>
struct Certificate {
    Mode mode = Mode::pair;
    Side side = Side::right;
    Variant variant = Variant::full;
    T a{};
    T t_or_x{};
    T b{};
    T u{};
    T u_inv{};
    std::string path;  // which construction produced it
};

/// Process-wide tally of every certificate and inverse check.
struct AuditCounters {
    std::atomic<std::uint64_t> checked{0};
    std::atomic<std::uint64_t> failed{0};
};

inline AuditCounters& audit() {
    static AuditCounters counters;
    return counters;
}

template <class Ops, class T>
T unit_expression(const Ops& ops, Mode mode, Side side, const T& a, const T& t_or_x, const T& b) {
    if (mode == Mode::pair)
        return side == Side::right ? ops.add(a, ops.mul(t_or_x, b)) : ops.add(a, ops.mul(b, t_or_x));
    if (side == Side::right) return ops.sub(ops.add(a, b), ops.mul(ops.mul(a, t_or_x), b));
    return ops.sub(ops.add(a, b), ops.mul(ops.mul(b, t_or_x), a));
}

/// Two-sided inverse check, counted in the global audit.
template <class Ops, class T>
bool check_inverse(const Ops& ops, const T& x, const T& x_inv) {
    audit().checked.fetch_add(1, std::memory_order_relaxed);
    bool ok = ops.equal(ops.mul(x, x_inv), ops.one()) && ops.equal(ops.mul(x_inv, x), ops.one());
    if (!ok) audit().failed.fetch_add(1, std::memory_order_relaxed);
    return ok;
}

template <class Ops, class T>
bool check_certificate(const Ops& ops, const Certificate<T>& c) {
    audit().checked.fetch_add(1, std::memory_order_relaxed);
    bool ok = ops.equal(unit_expression(ops, c.mode, c.side, c.a, c.t_or_x, c.b), c.u) &&
              ops.equal(ops.mul(c.u, c.u_inv), ops.one()) && ops.equal(ops.mul(c.u_inv, c.u), ops.one());
    if (!ok) audit().failed.fetch_add(1, std::memory_order_relaxed);
    return ok;
}

/// Throws CertificateError unless the certificate re-verifies.
template <class Ops, class T>
const Certificate<T>& require_valid(const Ops& ops, const Certificate<T>& c) {
    if (!check_certificate(ops, c))
        throw CertificateError(std::string("certificate failed re-verification (") + c.path + ", a = " +
                               ops.format(c.a) + ", b = " + ops.format(c.b) + ")");
    return c;
}

template <class Ops, class T>
void require_inverse(const Ops& ops, const T& x, const T& x_inv, const char* what) {
    if (!check_inverse(ops, x, x_inv))
        throw CertificateError(std::string(what) + ": inverse failed re-verification for " + ops.format(x));
}

template <class T>
struct UnitPair {
    T u;
    T inv;
};

/// Pair oracle for one factor: given a*x + t*y = 1, return a right pair
/// certificate a + t*b = u.
template <class T>
using PairOracle = std::function<Certificate<T>(std::size_t index, const T& a, const T& t, const T& x, const T& y)>;

namespace detail {

template <class Ops, class T>
Certificate<T> product_chain(const Ops& ops, const std::vector<T>& factors, std::size_t first, const T& t, const T& x,
                             const T& y, const PairOracle<T>& oracle) {
    const T& a = factors[first];
    if (first + 1 == factors.size()) {
        Certificate<T> c = oracle(first, a, t, x, y);
        require_valid(ops, c);
        return c;
    }
    T rest = factors[first + 1];
    for (std::size_t i = first + 2; i < factors.size(); ++i) rest = ops.mul(rest, factors[i]);

    Certificate<T> c1 = oracle(first, a, t, ops.mul(rest, x), y);
    require_valid(ops, c1);
    const T& u = c1.u;
    const T& u_inv = c1.u_inv;
    // a'(xu) + (u^-1 t)((y - b a' x)u) = 1
    T t2 = ops.mul(u_inv, t);
    T x2 = ops.mul(x, u);
    T y2 = ops.mul(ops.sub(y, ops.mul(ops.mul(c1.b, rest), x)), u);
    Certificate<T> c2 = product_chain(ops, factors, first + 1, t2, x2, y2, oracle);

    Certificate<T> out;
    out.mode = Mode::pair;
    out.side = Side::right;
    out.a = ops.mul(a, rest);
    out.t_or_x = t;
    out.b = ops.add(ops.mul(c1.b, rest), c2.b);
    out.u = ops.mul(u, c2.u);
    out.u_inv = ops.mul(c2.u_inv, u_inv);
    out.path = "product-chain";
    return out;
}

}  // namespace detail

/// Right pair certificate for a_1*...*a_n against t, given
/// (a_1*...*a_n)*x + t*y = 1, using one pair oracle call per factor.
template <class Ops, class T>
Certificate<T> product_witness(const Ops& ops, const std::vector<T>& factors, const T& t, const T& x, const T& y,
                               const PairOracle<T>& oracle) {
    if (factors.empty()) throw PreconditionError("product_witness needs at least one factor");
    T prod = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) prod = ops.mul(prod, factors[i]);
    if (!ops.equal(ops.add(ops.mul(prod, x), ops.mul(t, y)), ops.one()))
        throw PreconditionError("product_witness: a*x + t*y != 1");
    Certificate<T> c = detail::product_chain(ops, factors, 0, t, x, y, oracle);
    require_valid(ops, c);
    return c;
}

/// Certificate for u*a*v from a certificate for a.
template <class Ops, class T>
Certificate<T> transport_witness(const Ops& ops, const Certificate<T>& c, const UnitPair<T>& u, const UnitPair<T>& v) {
    require_valid(ops, c);
    require_inverse(ops, u.u, u.inv, "transport_witness");
    require_inverse(ops, v.u, v.inv, "transport_witness");
    Certificate<T> out;
    out.mode = c.mode;
    out.side = c.side;
    out.variant = c.variant;
    out.a = ops.mul(ops.mul(u.u, c.a), v.u);
    if (c.mode == Mode::pair) {
        if (c.side == Side::right) {
            out.t_or_x = ops.mul(u.u, c.t_or_x);
            out.b = ops.mul(c.b, v.u);
        } else {
            out.t_or_x = ops.mul(c.t_or_x, v.u);
            out.b = ops.mul(u.u, c.b);
        }
    } else {
        out.t_or_x = ops.mul(ops.mul(v.inv, c.t_or_x), u.inv);
        out.b = ops.mul(ops.mul(u.u, c.b), v.u);
    }
    out.u = ops.mul(ops.mul(u.u, c.u), v.u);
    out.u_inv = ops.mul(ops.mul(v.inv, c.u_inv), u.inv);
    out.path = "transport(" + c.path + ")";
    require_valid(ops, out);
    return out;
}

/// Corner oracle: given a, w in eRe, return r in eRe with
/// k = a + (e - a*w)*r a unit of eRe, together with its corner inverse.
template <class T>
struct CornerWitness {
    T r;
    T k;
    T k_inv;
};

template <class T>
using CornerOracle = std::function<CornerWitness<T>(const T& a, const T& w)>;

/// Two-sided inverse of x + p + y for x in U(eRe), p in fRe, y in U(fRf):
/// x' + p' + y' with p' = -y' p x'.
template <class Ops, class T>
T peirce_assemble_inverse(const Ops& ops, const T& x, const T& x_inv, const T& p, const T& y, const T& y_inv) {
    T p_inv = ops.neg(ops.mul(ops.mul(y_inv, p), x_inv));
    T inv = ops.add(ops.add(x_inv, p_inv), y_inv);
    T whole = ops.add(ops.add(x, p), y);
    require_inverse(ops, whole, inv, "peirce inverse");
    return inv;
}

/// Right form3 certificate for a + p + f against s, built from a corner
/// witness for a against e*s*e.
template <class Ops, class T>
Certificate<T> suspend_witness(const Ops& ops, const T& e, const T& a, const T& p, const T& s,
                               const CornerOracle<T>& oracle) {
    const T f = ops.sub(ops.one(), e);
    if (!ops.equal(ops.mul(e, e), e)) throw PreconditionError("suspend_witness: e is not idempotent");
    if (!ops.equal(ops.mul(ops.mul(e, a), e), a)) throw PreconditionError("suspend_witness: a is not in eRe");
    if (!ops.equal(ops.mul(ops.mul(f, p), e), p)) throw PreconditionError("suspend_witness: p is not in fRe");

    const T ese = ops.mul(ops.mul(e, s), e);
    CornerWitness<T> cw = oracle(a, ese);
    const T& r = cw.r;
    if (!ops.equal(ops.mul(ops.mul(e, r), e), r)) throw CertificateError("suspend_witness: oracle r is not in eRe");
    T k = ops.add(a, ops.mul(ops.sub(e, ops.mul(a, ese)), r));
    if (!ops.equal(k, cw.k)) throw CertificateError("suspend_witness: oracle unit does not match");
    audit().checked.fetch_add(1, std::memory_order_relaxed);
    if (!ops.equal(ops.mul(k, cw.k_inv), e) || !ops.equal(ops.mul(cw.k_inv, k), e)) {
        audit().failed.fetch_add(1, std::memory_order_relaxed);
        throw CertificateError("suspend_witness: oracle corner inverse failed re-verification");
    }

    // u = k + (p - p s r - f s r) + f
    T p_part = ops.sub(ops.sub(p, ops.mul(ops.mul(p, s), r)), ops.mul(ops.mul(f, s), r));
    Certificate<T> out;
    out.mode = Mode::form3;
    out.side = Side::right;
    out.a = ops.add(ops.add(a, p), f);
    out.t_or_x = s;
    out.b = r;
    out.u = ops.add(ops.add(k, p_part), f);
    out.u_inv = peirce_assemble_inverse(ops, k, cw.k_inv, p_part, f, f);
    out.path = "suspension";
    require_valid(ops, out);
    return out;
}

/// For a unit alpha with f*alpha*e = 0 and f*alpha*f = f, e*alpha*e is a unit
/// of eRe with inverse e*alpha^-1*e.
template <class Ops, class T>
UnitPair<T> extract_corner_unit(const Ops& ops, const T& e, const T& alpha, const T& alpha_inv) {
    const T f = ops.sub(ops.one(), e);
    require_inverse(ops, alpha, alpha_inv, "extract_corner_unit");
    if (!ops.equal(ops.mul(ops.mul(f, alpha), e), ops.zero()) || !ops.equal(ops.mul(ops.mul(f, alpha), f), f))
        throw PreconditionError("extract_corner_unit: unit is not of upper Peirce shape with f-corner f");
    UnitPair<T> k{ops.mul(ops.mul(e, alpha), e), ops.mul(ops.mul(e, alpha_inv), e)};
    audit().checked.fetch_add(1, std::memory_order_relaxed);
    if (!ops.equal(ops.mul(k.u, k.inv), e) || !ops.equal(ops.mul(k.inv, k.u), e)) {
        audit().failed.fetch_add(1, std::memory_order_relaxed);
        throw CertificateError("extract_corner_unit: corner inverse failed re-verification");
    }
    return k;
}

}  // namespace srone
