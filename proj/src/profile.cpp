#include "pfrkit/profile.hpp"

#include <algorithm>
#include <map>

#include "pfrkit/error.hpp"
#include "pfrkit/parallel.hpp"
#include "pfrkit/wht.hpp"

namespace pfrkit {

ProfileMethod parse_profile_method(std::string_view name) {
  if (name == "naive") return ProfileMethod::naive;
  if (name == "wht") return ProfileMethod::wht;
  throw OutOfRange("unknown profile method '" + std::string(name) + "'");
}

std::string_view to_string(ProfileMethod method) {
  return method == ProfileMethod::naive ? "naive" : "wht";
}

SymmetryProfile::SymmetryProfile(F2Set base, std::vector<Fiber> fibers)
    : base_(std::move(base)), fibers_(std::move(fibers)) {
  std::sort(fibers_.begin(), fibers_.end(),
            [](const Fiber& x, const Fiber& y) { return x.sum < y.sum; });
  if (base_.is_dense()) {
    dense_.assign(std::size_t{1} << base_.dim(), 0);
    for (const auto& f : fibers_) dense_[f.sum] = static_cast<std::uint32_t>(f.count);
  } else {
    sparse_.reserve(fibers_.size());
    for (const auto& f : fibers_) sparse_.emplace(f.sum, f.count);
  }
}

std::uint64_t SymmetryProfile::fiber_size(std::uint64_t s) const noexcept {
  if ((s & ~dim_mask(dim())) != 0) return 0;
  if (!dense_.empty()) return dense_[s];
  auto it = sparse_.find(s);
  return it == sparse_.end() ? 0 : it->second;
}

F2Set SymmetryProfile::sumset() const {
  std::vector<std::uint64_t> sums;
  sums.reserve(fibers_.size());
  for (const auto& f : fibers_) sums.push_back(f.sum);
  return F2Set(dim(), std::move(sums));
}

BigInt SymmetryProfile::total_mass() const {
  BigInt total = 0;
  for (const auto& f : fibers_) total += f.count;
  return total;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> SymmetryProfile::histogram() const {
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const auto& f : fibers_) ++counts[f.count];
  return {counts.begin(), counts.end()};
}

namespace {

std::vector<Fiber> naive_dense(const F2Set& a, unsigned threads) {
  const std::size_t table = std::size_t{1} << a.dim();
  const auto elems = a.elements();
  std::vector<std::vector<std::uint32_t>> partial(chunk_count(elems.size(), threads));
  parallel_chunks(elems.size(), threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    auto& counts = partial[c];
    counts.assign(table, 0);
    for (std::size_t i = begin; i < end; ++i) {
      for (std::uint64_t y : elems) ++counts[elems[i] ^ y];
    }
  });
  std::vector<Fiber> fibers;
  for (std::size_t s = 0; s < table; ++s) {
    std::uint64_t total = 0;
    for (const auto& counts : partial) total += counts[s];
    if (total > 0) fibers.push_back({s, total});
  }
  return fibers;
}

std::vector<Fiber> naive_sparse(const F2Set& a, unsigned threads) {
  const auto elems = a.elements();
  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> partial(
      chunk_count(elems.size(), threads));
  parallel_chunks(elems.size(), threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    auto& counts = partial[c];
    for (std::size_t i = begin; i < end; ++i) {
      for (std::uint64_t y : elems) ++counts[elems[i] ^ y];
    }
  });
  std::unordered_map<std::uint64_t, std::uint64_t> merged = std::move(partial.front());
  for (std::size_t c = 1; c < partial.size(); ++c) {
    for (const auto& [s, n] : partial[c]) merged[s] += n;
  }
  std::vector<Fiber> fibers;
  fibers.reserve(merged.size());
  for (const auto& [s, n] : merged) fibers.push_back({s, n});
  return fibers;
}

}  // namespace

SymmetryProfile symmetry_profile(const F2Set& a, ProfileMethod method, unsigned threads) {
  if (a.empty()) throw EmptyInput("symmetry_profile of an empty set");
  std::vector<Fiber> fibers;
  if (method == ProfileMethod::wht) {
    const auto table = xor_autocorrelation(a);
    for (std::size_t s = 0; s < table.size(); ++s) {
      if (table[s] > 0) fibers.push_back({s, static_cast<std::uint64_t>(table[s])});
    }
  } else if (a.is_dense()) {
    fibers = naive_dense(a, threads);
  } else {
    fibers = naive_sparse(a, threads);
  }
  return SymmetryProfile(a, std::move(fibers));
}

}  // namespace pfrkit
