#pragma once

// Element classes of a finite ring and ring-level predicates.

#include <cstdint>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "srone/ring.hpp"
#include "srone/stable_range.hpp"

namespace srone {

struct ClassificationFlags {
    bool unit = false;
    bool idempotent = false;
    bool nilpotent = false;
    std::uint32_t nilpotent_index = 0;  // least n with a^n = 0, 0 when not nilpotent
    bool regular = false;
    bool unit_regular = false;
    bool strongly_regular = false;
    bool strongly_nilpotent = false;
    bool quasi_nilpotent = false;
    bool suitable = false;
    bool clean = false;
    bool strongly_pi_regular = false;
    bool in_radical = false;
};

struct RingPredicates {
    bool exchange = false;
    bool ic = false;
    bool abelian = false;
    bool reg_closed = false;
    bool stable_range_one = false;
    bool clean_ring = false;
};

/// Per-ring classification tables, each built on first use and then shared.
class RingAnalysis {
public:
    explicit RingAnalysis(RingPtr ring) : ring_(std::move(ring)), ctx_(ring_) {}

    const Ring& ring() const noexcept { return *ring_; }
    const RingPtr& ring_ptr() const noexcept { return ring_; }
    const SrContext& sr() const noexcept { return ctx_; }

    bool regular(Element a) const { return ctx_.regular_flags()[a]; }

    bool unit_regular(Element a) const {
        return table(ureg_once_, ureg_, [this](Element x) {
            const Ring& R = *ring_;
            for (Element u : R.units())
                if (R.mul(R.mul(x, u), x) == x) return true;
            return false;
        })[a];
    }

    /// a in a^2 R and a in R a^2
    bool strongly_regular(Element a) const {
        return table(sreg_once_, sreg_, [this](Element x) {
            const Ring& R = *ring_;
            Element sq = R.mul(x, x);
            bool right = false, left = false;
            for (Element r = 0; r < R.order() && !(right && left); ++r) {
                right = right || R.mul(sq, r) == x;
                left = left || R.mul(r, sq) == x;
            }
            return right && left;
        })[a];
    }

    std::uint32_t nilpotent_index(Element a) const {
        std::call_once(nil_once_, [this] {
            const Ring& R = *ring_;
            nil_.assign(R.order(), 0);
            for (Element x = 0; x < R.order(); ++x) {
                Element p = x;
                for (std::uint32_t n = 1; n <= R.order(); ++n) {
                    if (p == 0) {
                        nil_[x] = n;
                        break;
                    }
                    p = R.mul(p, x);
                }
            }
        });
        return nil_[a];
    }
    bool nilpotent(Element a) const { return nilpotent_index(a) != 0; }

    /// 1 - as is a unit for every s commuting with a.
    bool quasi_nilpotent(Element a) const {
        return table(qn_once_, qn_, [this](Element x) {
            const Ring& R = *ring_;
            for (Element s = 0; s < R.order(); ++s)
                if (R.mul(x, s) == R.mul(s, x) && !R.is_unit(R.sub(R.one(), R.mul(x, s)))) return false;
            return true;
        })[a];
    }

    /// Some idempotent e with e in aR and 1 - e in (1 - a)R.
    bool suitable(Element a) const {
        return table(suit_once_, suit_, [this](Element x) {
            const Ring& R = *ring_;
            std::vector<char> aR(R.order(), 0), tR(R.order(), 0);
            Element t = R.sub(R.one(), x);
            for (Element r = 0; r < R.order(); ++r) {
                aR[R.mul(x, r)] = 1;
                tR[R.mul(t, r)] = 1;
            }
            for (Element e : R.idempotents())
                if (aR[e] && tR[R.sub(R.one(), e)]) return true;
            return false;
        })[a];
    }

    bool clean(Element a) const {
        const Ring& R = *ring_;
        for (Element e : R.idempotents())
            if (R.is_unit(R.sub(a, e))) return true;
        return false;
    }

    /// a^n in a^(n+1) R and in R a^(n+1) for some n <= |R|.
    bool strongly_pi_regular(Element a) const {
        return table(spi_once_, spi_, [this](Element x) {
            const Ring& R = *ring_;
            std::vector<char> seen(R.order(), 0);
            Element p = x;  // a^n
            for (std::uint32_t n = 1; n <= R.order(); ++n) {
                if (seen[p]) break;  // the power sequence has started repeating
                seen[p] = 1;
                Element q = R.mul(p, x);  // a^(n+1)
                bool right = false, left = false;
                for (Element r = 0; r < R.order() && !(right && left); ++r) {
                    right = right || R.mul(q, r) == p;
                    left = left || R.mul(r, q) == p;
                }
                if (right && left) return true;
                p = q;
            }
            return false;
        })[a];
    }

    /// 1 - ax is a unit for every x.
    bool in_radical(Element a) const {
        return table(rad_once_, rad_, [this](Element x) {
            const Ring& R = *ring_;
            for (Element y = 0; y < R.order(); ++y)
                if (!R.is_unit(R.sub(R.one(), R.mul(x, y)))) return false;
            return true;
        })[a];
    }

    bool sr1(Element a) const {
        return table(sr_once_, sr_, [this](Element x) { return ctx_.has_sr1(x, Side::right); })[a];
    }

    /// Every Levitzki sequence from a reaches 0, decided by cycle detection on
    /// the graph s -> t for t in sRs \ {0}.
    bool strongly_nilpotent(Element a) const {
        std::lock_guard<std::mutex> lock(sn_mutex_);
        const Ring& R = *ring_;
        if (sn_.empty()) sn_.assign(R.order(), kUnknown);
        if (a == 0) return true;
        if (sn_[a] == kUnknown) explore(a);
        return sn_[a] == kSafe;
    }

    ClassificationFlags classify(Element a) const {
        const Ring& R = *ring_;
        ClassificationFlags c;
        c.unit = R.is_unit(a);
        c.idempotent = R.is_idempotent(a);
        c.nilpotent_index = nilpotent_index(a);
        c.nilpotent = c.nilpotent_index != 0;
        c.regular = regular(a);
        c.unit_regular = unit_regular(a);
        c.strongly_regular = strongly_regular(a);
        c.strongly_nilpotent = strongly_nilpotent(a);
        c.quasi_nilpotent = quasi_nilpotent(a);
        c.suitable = suitable(a);
        c.clean = clean(a);
        c.strongly_pi_regular = strongly_pi_regular(a);
        c.in_radical = in_radical(a);
        return c;
    }

    std::vector<Element> radical() const {
        std::vector<Element> out;
        for (Element a = 0; a < ring_->order(); ++a)
            if (in_radical(a)) out.push_back(a);
        return out;
    }

    RingPredicates predicates() const {
        const Ring& R = *ring_;
        RingPredicates p;
        p.exchange = p.ic = p.abelian = p.reg_closed = p.stable_range_one = p.clean_ring = true;
        std::vector<Element> reg;
        for (Element a = 0; a < R.order(); ++a) {
            p.exchange = p.exchange && suitable(a);
            p.ic = p.ic && (regular(a) == unit_regular(a));
            p.clean_ring = p.clean_ring && clean(a);
            p.stable_range_one = p.stable_range_one && sr1(a);
            if (regular(a)) reg.push_back(a);
        }
        for (Element e : R.idempotents())
            if (!R.is_central(e)) {
                p.abelian = false;
                break;
            }
        for (std::size_t i = 0; i < reg.size() && p.reg_closed; ++i)
            for (Element b : reg)
                if (!regular(R.mul(reg[i], b))) {
                    p.reg_closed = false;
                    break;
                }
        return p;
    }

private:
    static constexpr std::uint8_t kUnknown = 0, kActive = 1, kSafe = 2, kUnsafe = 3;

    template <class F>
    const std::vector<char>& table(std::once_flag& once, std::vector<char>& data, F f) const {
        std::call_once(once, [&] {
            data.assign(ring_->order(), 0);
            for (Element a = 0; a < ring_->order(); ++a) data[a] = f(a) ? 1 : 0;
        });
        return data;
    }

    std::vector<Element> successors(Element s) const {
        const Ring& R = *ring_;
        std::vector<char> seen(R.order(), 0);
        std::vector<Element> out;
        for (Element r = 0; r < R.order(); ++r) {
            Element t = R.mul(R.mul(s, r), s);
            if (t != 0 && !seen[t]) {
                seen[t] = 1;
                out.push_back(t);
            }
        }
        return out;
    }

    void explore(Element root) const {
        struct Frame {
            Element node;
            std::vector<Element> next;
            std::size_t i = 0;
            bool unsafe = false;
        };
        std::vector<Frame> stack;
        sn_[root] = kActive;
        stack.push_back({root, successors(root)});
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (top.i < top.next.size()) {
                Element t = top.next[top.i++];
                if (sn_[t] == kActive || sn_[t] == kUnsafe) {
                    top.unsafe = true;
                } else if (sn_[t] == kUnknown) {
                    sn_[t] = kActive;
                    stack.push_back({t, successors(t)});
                }
                continue;
            }
            bool unsafe = top.unsafe;
            sn_[top.node] = unsafe ? kUnsafe : kSafe;
            stack.pop_back();
            if (unsafe && !stack.empty()) stack.back().unsafe = true;
        }
    }

    RingPtr ring_;
    SrContext ctx_;
    mutable std::once_flag ureg_once_, sreg_once_, nil_once_, qn_once_, suit_once_, spi_once_, rad_once_, sr_once_;
    mutable std::vector<char> ureg_, sreg_, qn_, suit_, spi_, rad_, sr_;
    mutable std::vector<std::uint32_t> nil_;
    mutable std::mutex sn_mutex_;
    mutable std::vector<std::uint8_t> sn_;
};

inline ClassificationFlags classify(const RingPtr& ring, Element a) { return RingAnalysis(ring).classify(a); }

inline std::vector<Element> inner_inverses(const Ring& R, Element a) {
    std::vector<Element> out;
    for (Element x = 0; x < R.order(); ++x)
        if (R.mul(R.mul(a, x), a) == a) out.push_back(x);
    return out;
}

inline std::vector<Element> reflexive_inverses(const Ring& R, Element a) {
    std::vector<Element> out;
    for (Element y = 0; y < R.order(); ++y)
        if (R.mul(R.mul(a, y), a) == a && R.mul(R.mul(y, a), y) == y) out.push_back(y);
    return out;
}

inline std::vector<Element> radical(const RingPtr& ring) { return RingAnalysis(ring).radical(); }

inline bool is_strongly_nilpotent(const RingPtr& ring, Element a) { return RingAnalysis(ring).strongly_nilpotent(a); }

inline bool is_suitable(const RingPtr& ring, Element a) { return RingAnalysis(ring).suitable(a); }

inline RingPredicates ring_predicates(const RingPtr& ring) { return RingAnalysis(ring).predicates(); }

}  // namespace srone
