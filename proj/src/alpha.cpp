#include "cyheight/alpha.hpp"

#include "cyheight/errors.hpp"
#include "cyheight/finite_field.hpp"

namespace cyheight {

AlphaVector AlphaVector::make(std::uint32_t m, std::vector<std::uint32_t> components) {
    if (m < 2) throw InvalidInput("AlphaVector: m must be >= 2");
    if (components.size() < 3) throw InvalidInput("AlphaVector: need r + 2 >= 3 components");
    std::uint64_t sum = 0;
    for (auto a : components) {
        if (a == 0 || a >= m) {
            throw InvalidInput("AlphaVector: component " + std::to_string(a) +
                               " outside (0, " + std::to_string(m) + ")");
        }
        sum += a;
    }
    if (sum % m != 0) throw InvalidInput("AlphaVector: components do not sum to 0 mod m");
    return AlphaVector(m, std::move(components));
}

AlphaVector AlphaVector::scaled(std::int64_t t) const {
    std::int64_t tm = t % static_cast<std::int64_t>(m_);
    if (tm < 0) tm += m_;
    if (gcd_u64(static_cast<std::uint64_t>(tm), m_) != 1) {
        throw InvalidInput("AlphaVector::scaled: t is not a unit mod m");
    }
    std::vector<std::uint32_t> out(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) {
        out[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(tm) * a_[i] % m_);
    }
    return AlphaVector(m_, std::move(out));
}

std::pair<AlphaVector, std::uint32_t> AlphaVector::galois_orbit_min() const {
    AlphaVector best = *this;
    std::uint32_t best_u = 1;
    for (std::uint32_t u = 2; u < m_; ++u) {
        if (gcd_u64(u, m_) != 1) continue;
        AlphaVector cand = scaled(u);
        if (cand < best) {
            best = std::move(cand);
            best_u = u;
        }
    }
    // best = u * alpha, so alpha = u^{-1} * best.
    std::uint32_t inv = 1;
    while ((static_cast<std::uint64_t>(inv) * best_u) % m_ != 1 % m_) ++inv;
    return {best, inv};
}

std::string AlphaVector::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a_[i]);
    }
    return s + ")";
}

}  // namespace cyheight
