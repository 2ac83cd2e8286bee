#pragma once

// Minor containment testing. Verdicts are cached per (matroid iso class,
// target); a cached verdict is reused only after an exact isomorphism match
// inside the invariant bucket, never on hash equality alone.

#include <deque>
#include <mutex>
#include <unordered_map>

#include "minorforge/iso.hpp"

namespace minorforge {

class MinorCache {
  public:
    // cap = 0 means unbounded; otherwise oldest buckets are evicted once the
    // entry count exceeds the cap (coarse FIFO approximation of LRU).
    explicit MinorCache(std::size_t cap = 0) : cap_(cap) {}

    const bool* lookup(const BasisMatroid& m, std::uint64_t key) {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = buckets_.find(key);
        if (it == buckets_.end()) return nullptr;
        for (auto& e : it->second)
            if (isIsomorphic(e.rep, m)) return &e.verdict;
        return nullptr;
    }

    void insert(const BasisMatroid& m, std::uint64_t key, bool verdict) {
        std::lock_guard<std::mutex> lk(mu_);
        auto& vec = buckets_[key];
        for (auto& e : vec)
            if (isIsomorphic(e.rep, m)) return;
        vec.push_back({BasisMatroid::fromBases(m.n, m.r, m.bases), verdict});
        order_.push_back(key);
        ++count_;
        if (cap_ && count_ > cap_) evict();
    }

    std::size_t entries() const {
        std::lock_guard<std::mutex> lk(mu_);
        return count_;
    }

  private:
    struct Entry {
        BasisMatroid rep;
        bool verdict;
    };

    void evict() {
        while (count_ > cap_ / 2 && !order_.empty()) {
            std::uint64_t key = order_.front();
            order_.pop_front();
            auto it = buckets_.find(key);
            if (it == buckets_.end()) continue;
            count_ -= it->second.size();
            buckets_.erase(it);
        }
    }

    std::size_t cap_;
    std::size_t count_ = 0;
    std::unordered_map<std::uint64_t, std::vector<Entry>> buckets_;
    std::deque<std::uint64_t> order_;
    mutable std::mutex mu_;
};

namespace detail {

inline bool hasMinorRec(const BasisMatroid& m, const BasisMatroid& t, const InvariantKey& tKey,
                        std::uint64_t tTag, MinorCache* cache) {
    if (m.n < t.n || m.r < t.r || (m.n - m.r) < (t.n - t.r)) return false;
    if (m.n == t.n) return invariantKey(m) == tKey && isIsomorphic(m, t);
    std::uint64_t key = 0;
    if (cache) {
        Fnv h;
        h.u64(invariantKey(m).h);
        h.u64(tTag);
        key = h.h;
        if (const bool* v = cache->lookup(m, key)) return *v;
    }
    // removing a coloop by deletion equals contracting it (and dually), so
    // pruning deletions at equal corank and contractions at equal rank loses
    // nothing: the other branch reaches the same minor
    bool found = false;
    for (int e = 0; e < m.n && !found; ++e) {
        if (m.n - m.r > t.n - t.r && hasMinorRec(m.deleteElem(e), t, tKey, tTag, cache))
            found = true;
        else if (m.r > t.r && hasMinorRec(m.contractElem(e), t, tKey, tTag, cache))
            found = true;
    }
    if (cache) cache->insert(m, key, found);
    return found;
}

}  // namespace detail

// True when m has a minor isomorphic to target.
inline bool hasMinorIso(const BasisMatroid& m, const BasisMatroid& target,
                        MinorCache* cache = nullptr) {
    require(target.n <= m.n, "hasMinorIso: target larger than matroid");
    Fnv tag;
    std::string ts = target.serialize();
    tag.bytes(reinterpret_cast<const std::uint8_t*>(ts.data()), ts.size());
    return detail::hasMinorRec(m, target, invariantKey(target), tag.h, cache);
}

// Uncached reference oracle: plain recursive descent.
inline bool hasMinorNaive(const BasisMatroid& m, const BasisMatroid& target) {
    if (m.n < target.n) return false;
    if (m.n == target.n) return isIsomorphic(m, target);
    for (int e = 0; e < m.n; ++e)
        if (hasMinorNaive(m.deleteElem(e), target) || hasMinorNaive(m.contractElem(e), target))
            return true;
    return false;
}

}  // namespace minorforge
