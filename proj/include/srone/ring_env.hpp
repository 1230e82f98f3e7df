#pragma once

// Per-ring lookup tables shared by the theorem checks. Everything is built on
// first use and is read-only afterwards, so one environment can serve many
// worker threads.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <span>
#include <vector>

#include "srone/classify.hpp"
#include "srone/ring.hpp"
#include "srone/stable_range.hpp"

namespace srone {

namespace detail {

template <class T>
class Lazy {
public:
    template <class F>
    const T& get(F&& build) const {
        std::call_once(once_, [&] { value_ = build(); });
        return value_;
    }

private:
    mutable std::once_flag once_;
    mutable T value_{};
};

}  // namespace detail

class RingEnv;
using EnvPtr = std::shared_ptr<const RingEnv>;

class RingEnv {
public:
    /// Matrix rings over S of order at most this get an M(2,S) companion.
    static constexpr std::uint32_t kMatrix2Limit = 1296;

    explicit RingEnv(RingPtr ring) : ring_(std::move(ring)), an_(ring_) {}

    const Ring& ring() const noexcept { return *ring_; }
    const RingPtr& ptr() const noexcept { return ring_; }
    const RingAnalysis& an() const noexcept { return an_; }
    const SrContext& ctx() const noexcept { return an_.sr(); }
    std::uint32_t order() const noexcept { return ring_->order(); }

    bool unit(Element a) const { return ring_->is_unit(a); }
    bool sr(Element a) const { return an_.sr1(a); }
    bool reg(Element a) const { return an_.regular(a); }
    bool ureg(Element a) const { return an_.unit_regular(a); }

    bool sr(Element a, Side side, Variant v) const {
        if (side == Side::right && v == Variant::full) return sr(a);
        std::size_t idx = static_cast<std::size_t>(v) * 2 + (side == Side::right ? 0 : 1);
        return sr_tables_[idx].get([&] {
            std::vector<char> t(order());
            for (Element x = 0; x < order(); ++x) t[x] = ctx().has_sr1(x, side, v);
            return t;
        })[a];
    }

    const std::vector<Element>& elements() const {
        return elements_.get([&] {
            std::vector<Element> v(order());
            for (Element a = 0; a < order(); ++a) v[a] = a;
            return v;
        });
    }

    const std::vector<Element>& nonzero_idempotents() const {
        return nz_idem_.get([&] {
            std::vector<Element> v;
            for (Element e : ring_->idempotents())
                if (e != 0) v.push_back(e);
            return v;
        });
    }

    /// Idempotents other than 0 and 1.
    const std::vector<Element>& proper_idempotents() const {
        return proper_idem_.get([&] {
            std::vector<Element> v;
            for (Element e : ring_->idempotents())
                if (e != 0 && e != ring_->one()) v.push_back(e);
            return v;
        });
    }

    const std::vector<Element>& regular_elements() const {
        return reg_list_.get([&] { return filter([&](Element a) { return reg(a); }); });
    }

    const std::vector<Element>& ureg_elements() const {
        return ureg_list_.get([&] { return filter([&](Element a) { return ureg(a); }); });
    }

    /// Membership table of aR, one row per a.
    const std::vector<char>& right_ideal(Element a) const {
        return right_ideals_.get([&] {
            const Ring& R = *ring_;
            std::vector<std::vector<char>> t(order(), std::vector<char>(order(), 0));
            for (Element x = 0; x < order(); ++x)
                for (Element r = 0; r < order(); ++r) t[x][R.mul(x, r)] = 1;
            return t;
        })[a];
    }

    /// aR + tR = R
    bool comaximal(Element a, Element t) const {
        const auto& aR = right_ideal(a);
        const auto& tR = right_ideal(t);
        for (Element v = 0; v < order(); ++v)
            if (tR[v] && aR[ring_->sub(ring_->one(), v)]) return true;
        return false;
    }

    bool all_suitable_in(Element a) const {
        return suit_ideal_.get([&] {
            std::vector<char> t(order(), 1);
            for (Element x = 0; x < order(); ++x) {
                const auto& xR = right_ideal(x);
                for (Element v = 0; v < order(); ++v)
                    if (xR[v] && !an_.suitable(v)) {
                        t[x] = 0;
                        break;
                    }
            }
            return t;
        })[a];
    }

    bool exchange() const {
        return exchange_.get([&] {
            for (Element a = 0; a < order(); ++a)
                if (!an_.suitable(a)) return false;
            return true;
        });
    }

    bool all_sr() const {
        return all_sr_.get([&] {
            for (Element a = 0; a < order(); ++a)
                if (!sr(a)) return false;
            return true;
        });
    }

    /// Distinct right ideals of the form tR + sR.
    const std::vector<std::vector<char>>& two_generated_right_ideals() const {
        return two_gen_.get([&] {
            const Ring& R = *ring_;
            std::set<std::vector<char>> principal;
            for (Element a = 0; a < order(); ++a) principal.insert(right_ideal(a));
            std::vector<std::vector<Element>> lists;
            for (const auto& p : principal) {
                std::vector<Element> l;
                for (Element v = 0; v < order(); ++v)
                    if (p[v]) l.push_back(v);
                lists.push_back(std::move(l));
            }
            std::set<std::vector<char>> sums;
            for (std::size_t i = 0; i < lists.size(); ++i)
                for (std::size_t j = i; j < lists.size(); ++j) {
                    std::vector<char> s(order(), 0);
                    for (Element u : lists[i])
                        for (Element v : lists[j]) s[R.add(u, v)] = 1;
                    sums.insert(std::move(s));
                }
            return std::vector<std::vector<char>>(sums.begin(), sums.end());
        });
    }

    /// Two-sided ideal generated by g, as a membership table.
    std::vector<char> principal_ideal(Element g) const {
        const Ring& R = *ring_;
        std::vector<char> in(order(), 0);
        std::vector<Element> gens;
        for (Element r = 0; r < order(); ++r)
            for (Element s = 0; s < order(); ++s) {
                Element v = R.mul(R.mul(r, g), s);
                if (!in[v]) {
                    in[v] = 1;
                    gens.push_back(v);
                }
            }
        // additive closure
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                Element v = R.add(gens[i], gens[j]);
                if (!in[v]) {
                    in[v] = 1;
                    gens.push_back(v);
                }
            }
        return in;
    }

    /// Least generator of each distinct proper nonzero principal two-sided ideal.
    const std::vector<Element>& ideal_generators() const {
        return ideal_gens_.get([&] {
            std::set<std::vector<char>> seen;
            std::vector<Element> out;
            for (Element g = 1; g < order(); ++g) {
                auto J = principal_ideal(g);
                if (J[ring_->one()]) continue;
                if (seen.insert(J).second) out.push_back(g);
            }
            return out;
        });
    }

    struct QuotientInfo {
        EnvPtr env;
        bool reflects_units = false;
        bool in_radical = false;
    };

    const QuotientInfo& quotient(Element g) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = quotients_.find(g);
        if (it != quotients_.end()) return it->second;
        QuotientInfo q;
        Element gens[] = {g};
        auto env = std::make_shared<RingEnv>(make_quotient(ring_, gens));
        q.reflects_units = true;
        for (Element a = 0; a < order() && q.reflects_units; ++a)
            if (env->unit(env->ring().project(a)) && !unit(a)) q.reflects_units = false;
        auto J = principal_ideal(g);
        q.in_radical = true;
        for (Element a = 0; a < order(); ++a)
            if (J[a] && !an_.in_radical(a)) q.in_radical = false;
        q.env = std::move(env);
        return quotients_.emplace(g, std::move(q)).first->second;
    }

    /// R / rad(R)
    const RingEnv& rad_quotient() const {
        return *rad_quot_.get([&] {
            auto rad = an_.radical();
            return std::make_shared<const RingEnv>(make_quotient(ring_, rad));
        });
    }

    const RingEnv& corner(Element e) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto& slot = corners_[e];
        if (!slot) slot = std::make_shared<RingEnv>(make_corner(ring_, e));
        return *slot;
    }

    const FiniteCornerOracle& corner_oracle(Element e) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto& slot = oracles_[e];
        if (!slot) slot = std::make_shared<FiniteCornerOracle>(ring_, e);
        return *slot;
    }

    /// Base ring environment of a matrix ring.
    const RingEnv& base() const {
        return *base_.get([&]() -> EnvPtr {
            auto shape = ring_->matrix_shape();
            if (!shape) throw PreconditionError(ring_->id() + " is not a matrix ring");
            return std::make_shared<const RingEnv>(shape->base);
        });
    }

    /// M(2, this ring), or null when it would exceed kMatrix2Limit.
    const RingEnv* matrix2() const {
        return m2_.get([&]() -> EnvPtr {
            std::uint64_t n = order();
            if (n * n * n * n > kMatrix2Limit) return nullptr;
            return std::make_shared<const RingEnv>(make_matrix(2, ring_));
        }).get();
    }

    /// Monoid generated by ureg(R).
    const std::vector<char>& ureg_products() const {
        return ureg_prod_.get([&] {
            const Ring& R = *ring_;
            std::vector<char> in(order(), 0);
            std::vector<Element> queue{R.one()};
            in[R.one()] = 1;
            for (std::size_t i = 0; i < queue.size(); ++i)
                for (Element u : ureg_elements()) {
                    Element v = R.mul(queue[i], u);
                    if (!in[v]) {
                        in[v] = 1;
                        queue.push_back(v);
                    }
                }
            return in;
        });
    }

    /// Products of exactly k idempotents (k >= 1); since 1 is idempotent
    /// this is also the set of products of at most k.
    const std::vector<char>& idempotent_products(std::uint32_t k) const {
        const auto& all = idem_prod_.get([&] {
            const Ring& R = *ring_;
            std::vector<std::vector<char>> levels;
            std::vector<char> cur(order(), 0);
            for (Element e : R.idempotents()) cur[e] = 1;
            levels.push_back(cur);
            for (std::uint32_t step = 1; step < order(); ++step) {
                std::vector<char> next(order(), 0);
                for (Element a = 0; a < order(); ++a)
                    if (cur[a])
                        for (Element e : R.idempotents()) next[R.mul(a, e)] = 1;
                if (next == cur) break;
                levels.push_back(next);
                cur = std::move(next);
            }
            return levels;
        });
        return all[std::min<std::size_t>(k, all.size()) - 1];
    }

    /// l R r as a sorted list.
    std::vector<Element> block(Element l, Element r) const {
        const Ring& R = *ring_;
        std::vector<char> seen(order(), 0);
        std::vector<Element> out;
        for (Element x = 0; x < order(); ++x) {
            Element v = R.mul(R.mul(l, x), r);
            if (!seen[v]) {
                seen[v] = 1;
                out.push_back(v);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// U(eRe) embedded in R.
    std::vector<Element> corner_units(Element e) const {
        const RingEnv& c = corner(e);
        std::vector<Element> out;
        for (Element u : c.ring().units()) out.push_back(c.ring().embed(u));
        std::sort(out.begin(), out.end());
        return out;
    }

    Element complement(Element e) const { return ring_->sub(ring_->one(), e); }

private:
    template <class P>
    std::vector<Element> filter(P pred) const {
        std::vector<Element> v;
        for (Element a = 0; a < order(); ++a)
            if (pred(a)) v.push_back(a);
        return v;
    }

    RingPtr ring_;
    RingAnalysis an_;
    detail::Lazy<std::vector<char>> sr_tables_[10];
    detail::Lazy<std::vector<Element>> elements_, nz_idem_, proper_idem_, reg_list_, ureg_list_, ideal_gens_;
    detail::Lazy<std::vector<std::vector<char>>> right_ideals_, two_gen_, idem_prod_;
    detail::Lazy<std::vector<char>> suit_ideal_, ureg_prod_;
    detail::Lazy<bool> exchange_, all_sr_;
    detail::Lazy<EnvPtr> rad_quot_, base_, m2_;
    mutable std::mutex mutex_;
    mutable std::map<Element, QuotientInfo> quotients_;
    mutable std::map<Element, std::shared_ptr<RingEnv>> corners_;
    mutable std::map<Element, std::shared_ptr<FiniteCornerOracle>> oracles_;
};

}  // namespace srone
