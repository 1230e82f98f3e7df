#pragma once

// Exact integer matrices: determinants, Smith normal form, the stable range
// one decision for M_n(Z) and constructive witnesses.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "srone/certificate.hpp"
#include "srone/error.hpp"

namespace srone {

using Integer = boost::multiprecision::cpp_int;

class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMatrix diag(const std::vector<Integer>& d) {
        IntMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows) {
        IntMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw PreconditionError("matrix rows must form a square");
            for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    /// E_ij (1-based) scaled by v.
    static IntMatrix unit(std::size_t n, std::size_t i, std::size_t j, const Integer& v = 1) {
        IntMatrix m(n);
        m(i - 1, j - 1) = v;
        return m;
    }

    std::size_t n() const noexcept { return n_; }
    Integer& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    friend IntMatrix operator+(const IntMatrix& x, const IntMatrix& y) {
        same(x, y);
        IntMatrix r(x.n_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] + y.a_[k];
        return r;
    }
    friend IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
        same(x, y);
        IntMatrix r(x.n_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] - y.a_[k];
        return r;
    }
    friend IntMatrix operator-(const IntMatrix& x) {
        IntMatrix r(x.n_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = -x.a_[k];
        return r;
    }
    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        same(x, y);
        const std::size_t n = x.n_;
        IntMatrix r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                if (x(i, l) == 0) continue;
                for (std::size_t j = 0; j < n; ++j) r(i, j) += x(i, l) * y(l, j);
            }
        return r;
    }
    friend IntMatrix operator*(const Integer& s, const IntMatrix& x) {
        IntMatrix r(x.n_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = s * x.a_[k];
        return r;
    }
    friend bool operator==(const IntMatrix& x, const IntMatrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

    IntMatrix transpose() const {
        IntMatrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_diagonal() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j && (*this)(i, j) != 0) return false;
        return true;
    }

    /// Top-left k x k block.
    IntMatrix leading(std::size_t k) const {
        IntMatrix r(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) r(i, j) = (*this)(i, j);
        return r;
    }
    /// Embeds into the top-left corner of an n x n zero matrix.
    IntMatrix embedded(std::size_t n) const {
        IntMatrix r(n);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r(i, j) = (*this)(i, j);
        return r;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < n_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < n_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }
    /// row_i += q * row_j
    void add_row(std::size_t i, std::size_t j, const Integer& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < n_; ++c) (*this)(i, c) += q * (*this)(j, c);
    }
    /// col_i += q * col_j
    void add_col(std::size_t i, std::size_t j, const Integer& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < n_; ++r) (*this)(r, i) += q * (*this)(r, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < n_; ++c) (*this)(i, c) = -(*this)(i, c);
    }
    void negate_col(std::size_t i) {
        for (std::size_t r = 0; r < n_; ++r) (*this)(r, i) = -(*this)(r, i);
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < n_; ++i) {
            if (i) s += ",";
            s += "[";
            for (std::size_t j = 0; j < n_; ++j) {
                if (j) s += ",";
                s += (*this)(i, j).str();
            }
            s += "]";
        }
        return s + "]";
    }

private:
    static void same(const IntMatrix& x, const IntMatrix& y) {
        if (x.n_ != y.n_) throw PreconditionError("matrix dimensions differ");
    }

    std::size_t n_ = 0;
    std::vector<Integer> a_;
};

/// Ops policy for M_n(Z).
struct IntMatrixRing {
    std::size_t n;

    IntMatrix add(const IntMatrix& a, const IntMatrix& b) const { return a + b; }
    IntMatrix sub(const IntMatrix& a, const IntMatrix& b) const { return a - b; }
    IntMatrix neg(const IntMatrix& a) const { return -a; }
    IntMatrix mul(const IntMatrix& a, const IntMatrix& b) const { return a * b; }
    IntMatrix zero() const { return IntMatrix(n); }
    IntMatrix one() const { return IntMatrix::identity(n); }
    bool equal(const IntMatrix& a, const IntMatrix& b) const { return a == b; }
    std::string format(const IntMatrix& a) const { return a.to_string(); }
};

using IntCertificate = Certificate<IntMatrix>;

/// Fraction-free (Bareiss) elimination.
inline Integer det_exact(const IntMatrix& A) {
    const std::size_t n = A.n();
    if (n == 0) return 1;
    IntMatrix M = A;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            std::size_t i = k + 1;
            while (i < n && M(i, k) == 0) ++i;
            if (i == n) return 0;
            M.swap_rows(i, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
            M(i, k) = 0;
        }
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& A) {
    Integer d = det_exact(A);
    return d == 1 || d == -1;
}

struct SnfResult {
    IntMatrix U, D, V;
    IntMatrix U_inv, V_inv;

    /// Diagonal entries of D.
    std::vector<Integer> diagonal() const {
        std::vector<Integer> d;
        for (std::size_t i = 0; i < D.n(); ++i) d.push_back(D(i, i));
        return d;
    }
};

/// Smith normal form U*A*V = D with d1 | d2 | ... and trailing zeros.
inline SnfResult snf(const IntMatrix& A) {
    const std::size_t n = A.n();
    SnfResult r{IntMatrix::identity(n), A, IntMatrix::identity(n), IntMatrix::identity(n), IntMatrix::identity(n)};
    IntMatrix& D = r.D;

    // Each elementary operation is mirrored on U, V and their inverses.
    auto row_swap = [&](std::size_t i, std::size_t j) {
        D.swap_rows(i, j);
        r.U.swap_rows(i, j);
        r.U_inv.swap_cols(i, j);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        D.swap_cols(i, j);
        r.V.swap_cols(i, j);
        r.V_inv.swap_rows(i, j);
    };
    auto row_add = [&](std::size_t i, std::size_t j, const Integer& q) {  // row_i += q row_j
        D.add_row(i, j, q);
        r.U.add_row(i, j, q);
        r.U_inv.add_col(j, i, -q);
    };
    auto col_add = [&](std::size_t i, std::size_t j, const Integer& q) {  // col_i += q col_j
        D.add_col(i, j, q);
        r.V.add_col(i, j, q);
        r.V_inv.add_row(j, i, -q);
    };
    auto abs_less = [](const Integer& x, const Integer& y) { return abs(x) < abs(y); };

    for (std::size_t t = 0; t < n; ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < n; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (D(i, j) != 0 && (!best || abs_less(D(i, j), D(best->first, best->second)))) best = {i, j};
        if (!best) break;
        if (best->first != t) row_swap(best->first, t);
        if (best->second != t) col_swap(best->second, t);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (D(i, t) == 0) continue;
                row_add(i, t, -(D(i, t) / D(t, t)));
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                col_add(j, t, -(D(t, j) / D(t, t)));
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) {
                // a smaller remainder appeared in row or column t: move it to the pivot
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < n; ++i)
                    if (D(i, t) != 0 && abs_less(D(i, t), D(bi, bj))) bi = i, bj = t;
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(t, j) != 0 && abs_less(D(t, j), D(bi, bj))) bi = t, bj = j;
                if (bi != t) row_swap(bi, t);
                if (bj != t) col_swap(bj, t);
                continue;
            }
            std::optional<std::size_t> bad;
            for (std::size_t i = t + 1; i < n && !bad; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (!bad) break;
            row_add(t, *bad, 1);
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            r.U.negate_row(t);
            r.U_inv.negate_col(t);
        }
    }

    if (!(r.U * A * r.V == D)) throw CertificateError("snf: U*A*V != D");
    if (!(r.U * r.U_inv == IntMatrix::identity(n)) || !(r.V * r.V_inv == IntMatrix::identity(n)))
        throw CertificateError("snf: transform inverses failed re-verification");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (D(i, i) == 0 && D(i + 1, i + 1) != 0) throw CertificateError("snf: zeros are not trailing");
        if (D(i, i) != 0 && D(i + 1, i + 1) % D(i, i) != 0) throw CertificateError("snf: divisibility chain fails");
    }
    return r;
}

/// Inverse of a unimodular matrix (V*U from its Smith form).
inline IntMatrix unimodular_inverse(const IntMatrix& A) {
    SnfResult s = snf(A);
    for (std::size_t i = 0; i < A.n(); ++i)
        if (s.D(i, i) != 1) throw PreconditionError("matrix is not unimodular");
    IntMatrix inv = s.V * s.U;
    require_inverse(IntMatrixRing{A.n()}, A, inv, "unimodular_inverse");
    return inv;
}

struct RefutationCertificate {
    Integer d;  // |det A|
    std::size_t n = 0;
    Integer modulus;  // 1 + d^(n+1)
    Integer residue;  // d^n mod modulus
};

struct IntVerdict {
    bool sr = false;
    Integer det;
    std::optional<RefutationCertificate> refutation;
};

inline Integer ipow(const Integer& b, std::size_t e) {
    Integer r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

/// sr(A) = 1 in M_n(Z) iff det A is 0 or +-1. Otherwise the certificate
/// records the congruence d^n = +-1 (mod 1 + d^(n+1)) that fails.
inline IntVerdict sr1_int(const IntMatrix& A) {
    IntVerdict v;
    v.det = det_exact(A);
    Integer d = abs(v.det);
    if (d <= 1) {
        v.sr = true;
        return v;
    }
    RefutationCertificate c;
    c.d = d;
    c.n = A.n();
    c.modulus = 1 + ipow(d, c.n + 1);
    c.residue = ipow(d, c.n) % c.modulus;
    if (c.modulus < 2 || c.residue == 1 || c.residue == c.modulus - 1)
        throw CertificateError("sr1_int: refutation residue is +-1");
    v.refutation = c;
    return v;
}

namespace detail {

inline IntCertificate pair_to_form3(const IntCertificate& c, const IntMatrix& x) {
    IntCertificate out = c;
    out.mode = Mode::form3;
    out.t_or_x = x;
    return out;
}

inline IntMatrix swap_first_last(std::size_t n) {
    IntMatrix P = IntMatrix::identity(n);
    P.swap_rows(0, n - 1);
    return P;
}

}  // namespace detail

/// Right form3 certificate for A against X: A + B - A X B unimodular.
inline IntCertificate int_certificate(const IntMatrix& A, const IntMatrix& X) {
    const std::size_t n = A.n();
    const IntMatrixRing ops{n};
    if (X.n() != n) throw PreconditionError("int_witness: A and X differ in size");
    auto make = [&](const IntMatrix& B, const char* path) {
        IntCertificate c;
        c.mode = Mode::form3;
        c.a = A;
        c.t_or_x = X;
        c.b = B;
        c.u = unit_expression(ops, Mode::form3, Side::right, A, X, B);
        c.u_inv = unimodular_inverse(c.u);
        c.path = path;
        return c;
    };

    Integer det = det_exact(A);
    if (det == 1 || det == -1) return require_valid(ops, make(IntMatrix(n), "unit"));
    if (det != 0) throw PreconditionError("int_witness: det A is " + det.str() + ", so sr(A) != 1");
    if (n == 1) return require_valid(ops, make(IntMatrix::identity(1), "base"));

    // U A V = D with D(n-1,n-1) = 0
    SnfResult s = snf(A);
    const IntMatrix& D = s.D;
    IntMatrix xD = s.V_inv * X * s.U_inv;

    // P D = (a + p + f) e with e = diag(1..1,0), f = E_nn,
    // a = diag(0, d2, .., d_{n-1}, 0) in eRe and p = d1 E_n1 in fRe
    IntMatrix P = detail::swap_first_last(n);
    IntMatrix E = P * D;
    IntMatrix e = IntMatrix::identity(n);
    e(n - 1, n - 1) = 0;
    IntMatrix f = IntMatrix::identity(n) - e;
    IntMatrix a(n);
    for (std::size_t i = 1; i + 1 < n; ++i) a(i, i) = D(i, i);
    IntMatrix p(n);
    p(n - 1, 0) = D(0, 0);
    IntMatrix alpha = a + p + f;
    if (!(alpha * e == E)) throw CertificateError("int_witness: Peirce factorization mismatch");
    IntMatrix xE = xD * P;

    CornerOracle<IntMatrix> corner = [n](const IntMatrix& ca, const IntMatrix& w) {
        IntCertificate sub = int_certificate(ca.leading(n - 1), w.leading(n - 1));
        IntMatrix k = sub.u.embedded(n);
        IntMatrix k_inv = sub.u_inv.embedded(n);
        return CornerWitness<IntMatrix>{sub.b.embedded(n), k, k_inv};
    };
    PairOracle<IntMatrix> oracle = [&](std::size_t index, const IntMatrix& factor, const IntMatrix& t,
                                       const IntMatrix& x, const IntMatrix& y) {
        IntCertificate c;
        c.mode = Mode::pair;
        c.a = factor;
        c.t_or_x = t;
        if (index == 0) {
            // form3 for alpha against x gives alpha + (1 - alpha x) r = alpha + t (y r)
            IntCertificate sus = suspend_witness(ops, e, a, p, x, corner);
            c.b = y * sus.b;
            c.u = sus.u;
            c.u_inv = sus.u_inv;
            c.path = "suspension";
        } else {
            // e + t y f = 1 - e x f
            IntMatrix g = IntMatrix::identity(n) - factor;
            IntMatrix nil = factor * x * g;
            c.b = y * g;
            c.u = IntMatrix::identity(n) - nil;
            c.u_inv = IntMatrix::identity(n) + nil;
            c.path = "idempotent";
        }
        return c;
    };
    IntMatrix tE = IntMatrix::identity(n) - E * xE;
    IntCertificate cE = product_witness(ops, std::vector<IntMatrix>{alpha, e}, tE, xE, IntMatrix::identity(n), oracle);
    IntCertificate fE = detail::pair_to_form3(cE, xE);
    fE.path = "suspension-chain";
    require_valid(ops, fE);

    IntCertificate cD = transport_witness(ops, fE, UnitPair<IntMatrix>{P, P},
                                          UnitPair<IntMatrix>{IntMatrix::identity(n), IntMatrix::identity(n)});
    IntCertificate cA = transport_witness(ops, cD, UnitPair<IntMatrix>{s.U_inv, s.U}, UnitPair<IntMatrix>{s.V_inv, s.V});
    if (!(cA.a == A) || !(cA.t_or_x == X)) throw CertificateError("int_witness: transport landed on the wrong pair");
    cA.path = "snf-suspension";
    if (!is_unimodular(A + (IntMatrix::identity(n) - A * X) * cA.b))
        throw CertificateError("int_witness: final determinant check failed");
    return cA;
}

/// B with |det(A + (I - A X) B)| = 1.
inline IntMatrix int_witness(const IntMatrix& A, const IntMatrix& X) { return int_certificate(A, X).b; }

/// Rule that certifies sr(A) = 1 without computing a determinant.
inline std::optional<std::string> structural_rules(const IntMatrix& A) {
    const std::size_t n = A.n();
    if (n == 0) return std::nullopt;
    auto zero_block = [&](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j)
                if (A(i, j) != 0) return false;
        return true;
    };
    if (n >= 2) {
        std::vector<std::size_t> nonzero_rows;
        for (std::size_t i = 0; i < n; ++i)
            if (!zero_block(i, i + 1, 0, n)) nonzero_rows.push_back(i);
        if (nonzero_rows.size() == 1 && !zero_block(nonzero_rows[0], nonzero_rows[0] + 1, 0, n)) {
            std::size_t k = nonzero_rows[0];
            for (std::size_t j = 0; j < n; ++j)
                if (A(k, j) == 0) return std::string("single-row");
        }
    }
    if (A.is_diagonal()) {
        for (std::size_t i = 0; i < n; ++i)
            if (A(i, i) == 0) return std::string("diagonal-zero");
    }
    bool upper = true, lower = true, diag_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (A(i, i) != 0 && A(i, i) != 1 && A(i, i) != -1) diag_ok = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (i > j && A(i, j) != 0) upper = false;
            if (i < j && A(i, j) != 0) lower = false;
        }
    }
    if (diag_ok && (upper || lower)) return std::string("triangular");
    if (n >= 2 && n % 2 == 0) {
        std::size_t h = n / 2;
        if (zero_block(0, h, 0, h) && zero_block(h, n, 0, n)) return std::string("block-nilpotent");
        if (zero_block(0, h, h, n) && zero_block(h, n, 0, n)) return std::string("block-diagonal-zero");
    }
    return std::nullopt;
}

inline void extended_gcd(const Integer& a, const Integer& b, Integer& g, Integer& x, Integer& y) {
    Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    x = old_s;
    y = old_t;
}

/// Unimodular V whose first row is v, when gcd(v) = 1.
inline std::optional<IntMatrix> complete_row(const std::vector<Integer>& v) {
    const std::size_t n = v.size();
    if (n == 0) return std::nullopt;
    // column operations v W = (g, 0, .., 0), tracking W^-1
    std::vector<Integer> w = v;
    IntMatrix W_inv = IntMatrix::identity(n);
    for (std::size_t j = 1; j < n; ++j) {
        if (w[j] == 0) continue;
        Integer g, x, y;
        extended_gcd(w[0], w[j], g, x, y);
        Integer al = w[0] / g, be = w[j] / g;
        // G = [[x, -be], [y, al]] on columns (0, j); G^-1 = [[al, be], [-y, x]]
        IntMatrix next = W_inv;
        for (std::size_t c = 0; c < n; ++c) {
            next(0, c) = al * W_inv(0, c) + be * W_inv(j, c);
            next(j, c) = -y * W_inv(0, c) + x * W_inv(j, c);
        }
        W_inv = std::move(next);
        w[0] = g;
        w[j] = 0;
    }
    if (w[0] == -1) {
        W_inv.negate_row(0);
        w[0] = 1;
    }
    if (w[0] != 1) return std::nullopt;
    for (std::size_t c = 0; c < n; ++c)
        if (W_inv(0, c) != v[c]) throw CertificateError("complete_row: first row mismatch");
    if (!is_unimodular(W_inv)) throw CertificateError("complete_row: completion is not unimodular");
    return W_inv;
}

struct BezoutFactorization {
    Integer a, s, t, x, y;  // p = a s, q = a t, a = p x - q y, s x - t y = 1
    IntMatrix U;             // [[s, t], [y, x]]
    IntMatrix C;             // [[p, q], [0, 0]] = (a E11) U
    IntVerdict verdict;
};

inline BezoutFactorization bezout_matrix(const Integer& p, const Integer& q) {
    if (p == 0 && q == 0) throw PreconditionError("bezout_matrix: (p, q) = (0, 0)");
    BezoutFactorization b;
    Integer gx, gy;
    extended_gcd(p, q, b.a, gx, gy);
    b.s = p / b.a;
    b.t = q / b.a;
    b.x = gx;
    b.y = -gy;
    // normalize: shift along (x, y) -> (x + k t, y + k s) to the least x >= 0
    if (b.t != 0) {
        Integer m = abs(b.t);
        Integer r = b.x % m;
        if (r < 0) r += m;
        Integer k = (r - b.x) / b.t;
        b.x += k * b.t;
        b.y += k * b.s;
    }
    if (b.s * b.x - b.t * b.y != 1) throw CertificateError("bezout_matrix: s x - t y != 1");
    b.U = IntMatrix::from_rows({{b.s, b.t}, {b.y, b.x}});
    b.C = IntMatrix::from_rows({{p, q}, {0, 0}});
    if (!(IntMatrix::unit(2, 1, 1, b.a) * b.U == b.C)) throw CertificateError("bezout_matrix: C != (a E11) U");
    b.verdict = sr1_int(b.C);
    return b;
}

// ---------------------------------------------------------------------------
// Random generation

/// Product of `steps` random elementary matrices with multipliers in [-2, 2]
/// plus a random signed permutation step.
template <class Rng>
IntMatrix random_unimodular(std::size_t n, Rng& rng, int steps = 8) {
    IntMatrix M = IntMatrix::identity(n);
    if (n == 1) {
        if (rng() & 1) M(0, 0) = -1;
        return M;
    }
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> mult(-2, 2);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) {
            if (rng() & 1) M.swap_rows(i, (i + 1) % n);
            else M.negate_row(i);
            continue;
        }
        M.add_row(i, j, mult(rng));
    }
    return M;
}

template <class Rng>
IntMatrix random_matrix(std::size_t n, Rng& rng, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    IntMatrix M(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) = d(rng);
    return M;
}

// ---------------------------------------------------------------------------
// Refined-variant refutation for A = diag(m, 0) against B = diag(beta, gamma)

struct VariantRefutation {
    int box = 0;
    std::uint64_t unit_candidates = 0;       // unimodular U in the box
    std::optional<IntMatrix> unit_witness;   // U with A + B U unimodular
    std::uint64_t idempotent_candidates = 0;  // nontrivial idempotents in the box
    std::optional<IntMatrix> idempotent_witness;
    std::uint64_t samples = 0;
    Integer modulus;                 // m
    std::vector<Integer> unit_residues;  // allowed det(A + B U) mod m, {+-beta*gamma}
    bool unit_congruence = true;     // every sampled det(A + B U) in unit_residues
    bool idempotent_congruence = true;  // every sampled det(A + B P) = 0 mod m
    Integer det_trivial_zero;        // det(A + B*0)
    Integer det_trivial_one;         // det(A + B*I)
};

inline VariantRefutation variant_refute(const IntMatrix& A, const IntMatrix& B, int box, std::size_t samples = 10000,
                                        std::uint64_t seed = 7) {
    if (A.n() != 2 || B.n() != 2 || !A.is_diagonal() || !B.is_diagonal() || A(1, 1) != 0 || A(0, 0) == 0)
        throw PreconditionError("variant_refute: expects A = diag(m, 0), B diagonal");
    VariantRefutation r;
    r.box = box;
    r.modulus = abs(A(0, 0));
    auto mod = [&](const Integer& v) {
        Integer x = v % r.modulus;
        return x < 0 ? Integer(x + r.modulus) : x;
    };
    Integer bg = B(0, 0) * B(1, 1);
    r.unit_residues = {mod(bg), mod(-bg)};
    std::sort(r.unit_residues.begin(), r.unit_residues.end());
    r.unit_residues.erase(std::unique(r.unit_residues.begin(), r.unit_residues.end()), r.unit_residues.end());
    const IntMatrix I = IntMatrix::identity(2);
    r.det_trivial_zero = det_exact(A);
    r.det_trivial_one = det_exact(A + B);

    // 2x2 box search with machine integers, exact since |entries| stay small
    const long long m = static_cast<long long>(A(0, 0)), be = static_cast<long long>(B(0, 0)),
                    ga = static_cast<long long>(B(1, 1));
    for (long long p = -box; p <= box; ++p)
        for (long long q = -box; q <= box; ++q)
            for (long long s = -box; s <= box; ++s)
                for (long long t = -box; t <= box; ++t) {
                    long long det = p * t - q * s;
                    // det(A + B M) for M = [[p, q], [s, t]]
                    long long d = (m + be * p) * (ga * t) - (be * q) * (ga * s);
                    if (det == 1 || det == -1) {
                        ++r.unit_candidates;
                        if ((d == 1 || d == -1) && !r.unit_witness)
                            r.unit_witness = IntMatrix::from_rows({{p, q}, {s, t}});
                    }
                    // idempotent: M^2 = M, M not in {0, I}
                    bool idem = p * p + q * s == p && p * q + q * t == q && s * p + t * s == s && s * q + t * t == t;
                    bool trivial = (p == 0 && q == 0 && s == 0 && t == 0) || (p == 1 && q == 0 && s == 0 && t == 1);
                    if (idem && !trivial) {
                        ++r.idempotent_candidates;
                        if ((d == 1 || d == -1) && !r.idempotent_witness)
                            r.idempotent_witness = IntMatrix::from_rows({{p, q}, {s, t}});
                    }
                }

    std::mt19937_64 rng(seed);
    IntMatrix E11 = IntMatrix::unit(2, 1, 1);
    for (std::size_t i = 0; i < samples; ++i) {
        IntMatrix U = random_unimodular(2, rng, 10);
        if (!std::binary_search(r.unit_residues.begin(), r.unit_residues.end(), mod(det_exact(A + B * U))))
            r.unit_congruence = false;
        // rank-one idempotent V E11 V^-1
        IntMatrix V = random_unimodular(2, rng, 10);
        IntMatrix P = V * E11 * unimodular_inverse(V);
        if (!(P * P == P) || P == I || P == IntMatrix(2)) throw CertificateError("variant_refute: bad idempotent sample");
        if (mod(det_exact(A + B * P)) != 0) r.idempotent_congruence = false;
        ++r.samples;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Block matrices over S = M_k(Z)

/// [[X, Y], [Z, W]] with k x k blocks as a 2k x 2k matrix.
inline IntMatrix block2(const IntMatrix& X, const IntMatrix& Y, const IntMatrix& Z, const IntMatrix& W) {
    const std::size_t k = X.n();
    IntMatrix M(2 * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            M(i, j) = X(i, j);
            M(i, j + k) = Y(i, j);
            M(i + k, j) = Z(i, j);
            M(i + k, j + k) = W(i, j);
        }
    return M;
}

struct IntSchurReduction {
    IntMatrix complement;  // c - b a
    IntVerdict verdict;
};

/// M = [[1, a], [b, c]] over M_k(Z) has sr 1 iff c - ba does.
inline IntSchurReduction schur_reduce_int(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c) {
    IntSchurReduction r;
    r.complement = c - b * a;
    r.verdict = sr1_int(r.complement);
    return r;
}

struct BlockAuditEntry {
    std::string name;
    IntMatrix matrix;
    Integer det;
    bool det_verdict = false;  // sr1_int on the full matrix
    IntMatrix schur;
    Integer schur_det;
    bool schur_verdict = false;
};

struct BlockAudit {
    BlockAuditEntry m;           // [[1, a], [b, c]]
    BlockAuditEntry block_t;     // [[1, b], [a, c]]
    BlockAuditEntry full_t;      // transpose of m as a 4x4 matrix
    bool criteria_agree = false;  // determinant and Schur verdicts coincide on every entry
    std::string sr_one;          // which of m / block_t carries sr 1
    bool asserted_sr_m = true;   // the labeling under audit claims sr(M) = 1 and det M = 2
    bool discrepancy = false;    // derived verdict for M contradicts the asserted one
};

/// Audit of M = [[1, E12], [E11, 2 E21]] over M_2(Z) against its block transpose.
inline BlockAudit audit_block_example() {
    const IntMatrix I = IntMatrix::identity(2);
    const IntMatrix a = IntMatrix::unit(2, 1, 2), b = IntMatrix::unit(2, 1, 1), c = IntMatrix::unit(2, 2, 1, 2);
    auto entry = [](std::string name, const IntMatrix& M, const IntMatrix& schur) {
        BlockAuditEntry e;
        e.name = std::move(name);
        e.matrix = M;
        IntVerdict v = sr1_int(M);
        e.det = v.det;
        e.det_verdict = v.sr;
        e.schur = schur;
        IntVerdict sv = sr1_int(schur);
        e.schur_det = sv.det;
        e.schur_verdict = sv.sr;
        return e;
    };
    BlockAudit au;
    au.m = entry("M", block2(I, a, b, c), schur_reduce_int(a, b, c).complement);
    au.block_t = entry("M^T (block)", block2(I, b, a, c), schur_reduce_int(b, a, c).complement);
    IntMatrix ft = au.m.matrix.transpose();
    // full transpose is [[1, a^T], [b^T, c^T]]
    au.full_t = entry("M^T (entrywise)", ft, schur_reduce_int(b.transpose(), a.transpose(), c.transpose()).complement);
    au.criteria_agree = true;
    for (const auto* e : {&au.m, &au.block_t, &au.full_t})
        au.criteria_agree = au.criteria_agree && e->det_verdict == e->schur_verdict;
    if (au.m.det_verdict && !au.block_t.det_verdict) au.sr_one = "M";
    else if (!au.m.det_verdict && au.block_t.det_verdict) au.sr_one = "M^T (block)";
    else au.sr_one = au.m.det_verdict ? "both" : "neither";
    au.discrepancy = au.m.det_verdict != au.asserted_sr_m;
    return au;
}

}  // namespace srone
