#ifndef REFSYS_SRC_CACHE_HPP
#define REFSYS_SRC_CACHE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>

namespace refsys::detail {

// Memo table for constructions on pairs of shared objects. Entries keep their
// operands alive, so raw-pointer keys are never reused for a different object.
template <class K, class V>
class PairCache {
 public:
  template <class Build>
  std::shared_ptr<const V> get(const std::shared_ptr<const K>& a, const std::shared_ptr<const K>& b,
                               Build build) {
    {
      std::lock_guard lock(mu_);
      auto it = entries_.find({a.get(), b.get()});
      if (it != entries_.end()) return std::get<2>(it->second);
    }
    std::shared_ptr<const V> made = build();
    std::lock_guard lock(mu_);
    auto [it, inserted] = entries_.try_emplace({a.get(), b.get()}, a, b, made);
    return std::get<2>(it->second);
  }

 private:
  std::mutex mu_;
  std::map<std::pair<const K*, const K*>,
           std::tuple<std::shared_ptr<const K>, std::shared_ptr<const K>, std::shared_ptr<const V>>>
      entries_;
};

}  // namespace refsys::detail

#endif
