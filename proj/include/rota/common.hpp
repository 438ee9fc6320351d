#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rota {

class Error : public std::runtime_error {
 public:
  enum class Kind { Argument, Contract, Validation, Instance, Internal, SizeCap, Parse };
  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

[[noreturn]] inline void fail(Error::Kind k, const std::string& msg) { throw Error(k, msg); }

inline void require(bool cond, Error::Kind k, const std::string& msg) {
  if (!cond) fail(k, msg);
}

/// Seeded RNG. Only the mt19937_64 engine is used (its output sequence is
/// pinned by the standard); all value mapping is done by hand so that runs
/// are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return real() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 eng_;
};

// Element sets are sorted, duplicate-free vectors of ids.
using IntSet = std::vector<int>;

inline bool set_contains(std::span<const int> s, int e) {
  return std::binary_search(s.begin(), s.end(), e);
}

inline void set_insert(IntSet& s, int e) {
  auto it = std::lower_bound(s.begin(), s.end(), e);
  if (it == s.end() || *it != e) s.insert(it, e);
}

inline void set_erase(IntSet& s, int e) {
  auto it = std::lower_bound(s.begin(), s.end(), e);
  if (it != s.end() && *it == e) s.erase(it);
}

inline IntSet set_add(std::span<const int> s, int e) {
  IntSet r(s.begin(), s.end());
  set_insert(r, e);
  return r;
}

inline IntSet set_remove(std::span<const int> s, int e) {
  IntSet r(s.begin(), s.end());
  set_erase(r, e);
  return r;
}

inline IntSet set_union(std::span<const int> a, std::span<const int> b) {
  IntSet r;
  r.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline IntSet set_minus(std::span<const int> a, std::span<const int> b) {
  IntSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline IntSet set_intersect(std::span<const int> a, std::span<const int> b) {
  IntSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline IntSet as_sorted_set(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool is_sorted_set(std::span<const int> v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] >= v[i]) return false;
  return true;
}

}  // namespace rota
