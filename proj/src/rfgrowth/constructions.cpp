#include "rfsep/rfgrowth/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "rfsep/core/error.hpp"
#include "rfsep/finite/field.hpp"

namespace rfsep {

MetacyclicRealization::MetacyclicRealization(std::uint32_t m, std::uint32_t n,
                                             std::uint32_t r, std::uint32_t s)
    : m_(m), n_(n), s_(s % m) {
  if (m == 0 || n == 0) throw PreconditionError("metacyclic: m and n must be positive");
  std::uint64_t rp = 1;
  for (std::uint32_t b = 0; b < n; ++b) {
    rpow_.push_back(static_cast<std::uint32_t>(rp));
    rp = rp * r % m;
  }
  if (rp != 1 % m) throw PreconditionError("metacyclic: r^n must be 1 mod m");
  if (static_cast<std::uint64_t>(r) * s_ % m != s_) {
    throw PreconditionError("metacyclic: r s must equal s mod m");
  }
}

void MetacyclicRealization::identity(std::uint32_t* out) const {
  out[0] = 0;
  out[1] = 0;
}

void MetacyclicRealization::multiply(const std::uint32_t* a, const std::uint32_t* b,
                                     std::uint32_t* out) const {
  std::uint64_t x = a[0] + static_cast<std::uint64_t>(rpow_[a[1]]) * b[0];
  std::uint32_t y = a[1] + b[1];
  if (y >= n_) {
    y -= n_;
    x += s_;
  }
  out[0] = static_cast<std::uint32_t>(x % m_);
  out[1] = y;
}

SemidirectRealization::SemidirectRealization(
    GroupPtr n, GroupPtr h, std::vector<std::vector<FiniteGroup::Elem>> action)
    : n_(std::move(n)), h_(std::move(h)), action_(std::move(action)) {}

void SemidirectRealization::identity(std::uint32_t* out) const {
  out[0] = 0;
  out[1] = 0;
}

void SemidirectRealization::multiply(const std::uint32_t* a, const std::uint32_t* b,
                                     std::uint32_t* out) const {
  out[0] = n_->mul(a[0], action_[a[1]][b[0]]);
  out[1] = h_->mul(a[1], b[1]);
}

std::shared_ptr<FiniteGroup> trivial_group() {
  return FiniteGroup::generate(std::make_shared<PermRealization>(1), {}, 1);
}

std::shared_ptr<FiniteGroup> metacyclic_group(std::uint32_t m, std::uint32_t n,
                                              std::uint32_t r, std::uint32_t s) {
  auto real = std::make_shared<MetacyclicRealization>(m, n, r, s);
  std::vector<std::vector<std::uint32_t>> gens;
  if (m > 1) gens.push_back({1, 0});
  if (n > 1) gens.push_back({0, 1});
  return FiniteGroup::generate(real, gens, static_cast<std::size_t>(m) * n);
}

std::shared_ptr<FiniteGroup> cyclic_group(std::uint32_t n) {
  return metacyclic_group(n, 1, 1, 0);
}

std::shared_ptr<FiniteGroup> dihedral_group(std::uint32_t n) {
  if (n == 1) return cyclic_group(2);
  return metacyclic_group(n, 2, n - 1, 0);
}

std::shared_ptr<FiniteGroup> symmetric_group(std::uint32_t n) {
  if (n <= 1) return trivial_group();
  std::vector<std::uint32_t> swap(n), cycle(n);
  std::iota(swap.begin(), swap.end(), 0u);
  std::swap(swap[0], swap[1]);
  for (std::uint32_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  if (n == 2) return permutation_group(n, {swap});
  return permutation_group(n, {swap, cycle});
}

std::shared_ptr<FiniteGroup> alternating_group(std::uint32_t n) {
  if (n <= 2) return trivial_group();
  // 3-cycles (0 1 i) generate A_n.
  std::vector<std::vector<std::uint32_t>> gens;
  for (std::uint32_t i = 2; i < n; ++i) {
    std::vector<std::uint32_t> c(n);
    std::iota(c.begin(), c.end(), 0u);
    c[0] = 1;
    c[1] = i;
    c[i] = 0;
    gens.push_back(std::move(c));
  }
  return permutation_group(n, gens);
}

std::shared_ptr<FiniteGroup> psl2(std::uint64_t q) {
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::uint64_t e = 0;
  for (std::uint64_t t = q; t > 1; t /= p) {
    if (t % p != 0) throw PreconditionError("psl2: q must be a prime power");
    ++e;
  }
  const FiniteField f = FiniteField::of_order(p, e);
  std::vector<FqMatrix> gens;
  FiniteField::Elem t = f.one();
  for (std::uint64_t k = 0; k < e; ++k) {
    FqMatrix up = fq_identity(f, 2);
    up(0, 1) = t;
    FqMatrix down = fq_identity(f, 2);
    down(1, 0) = t;
    gens.push_back(up);
    gens.push_back(down);
    t = f.mul(t, f.tau());
  }
  return matrix_group(f, 2, gens, true);
}

std::shared_ptr<FiniteGroup> sl2_3() {
  const FiniteField f = FiniteField::prime_field(3);
  FqMatrix up = fq_identity(f, 2);
  up(0, 1) = 1;
  FqMatrix down = fq_identity(f, 2);
  down(1, 0) = 1;
  return matrix_group(f, 2, {up, down}, false);
}

std::vector<FiniteGroup::Elem> extend_homomorphism(
    const FiniteGroup& g, const FiniteGroup& target,
    const std::vector<FiniteGroup::Elem>& images) {
  const auto& gens = g.generators();
  if (images.size() != gens.size()) throw PreconditionError("one image per generator");
  constexpr FiniteGroup::Elem kUnset = 0xFFFFFFFFu;
  std::vector<FiniteGroup::Elem> map(g.order(), kUnset);
  map[0] = target.identity();
  std::vector<FiniteGroup::Elem> queue = {0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto x = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto y = g.mul(x, gens[i]);
      const auto v = target.mul(map[x], images[i]);
      if (map[y] == kUnset) {
        map[y] = v;
        queue.push_back(y);
      } else if (map[y] != v) {
        return {};
      }
    }
  }
  return map;
}

std::shared_ptr<FiniteGroup> semidirect_product(
    GroupPtr n, GroupPtr h,
    const std::vector<std::vector<FiniteGroup::Elem>>& generator_actions) {
  const auto& hgens = h->generators();
  if (generator_actions.size() != hgens.size()) {
    throw PreconditionError("semidirect_product: one action per generator of H");
  }
  std::vector<std::vector<FiniteGroup::Elem>> gen_perm;
  for (const auto& images : generator_actions) {
    auto perm = extend_homomorphism(*n, *n, images);
    std::vector<FiniteGroup::Elem> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    if (perm.empty() || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ValidationError("semidirect_product: generator action is not an automorphism");
    }
    gen_perm.push_back(std::move(perm));
  }
  // action[h] by BFS over H: action[x g] = action[x] o action[g].
  std::vector<std::vector<FiniteGroup::Elem>> action(h->order());
  std::vector<FiniteGroup::Elem> id(n->order());
  std::iota(id.begin(), id.end(), 0u);
  action[0] = id;
  std::vector<FiniteGroup::Elem> queue = {0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto x = queue[head];
    for (std::size_t i = 0; i < hgens.size(); ++i) {
      const auto y = h->mul(x, hgens[i]);
      std::vector<FiniteGroup::Elem> composed(n->order());
      for (std::size_t e = 0; e < composed.size(); ++e) composed[e] = action[x][gen_perm[i][e]];
      if (action[y].empty()) {
        action[y] = std::move(composed);
        queue.push_back(y);
      } else if (action[y] != composed) {
        throw ValidationError("semidirect_product: action is not a homomorphism");
      }
    }
  }
  auto real = std::make_shared<SemidirectRealization>(n, h, std::move(action));
  std::vector<std::vector<std::uint32_t>> gens;
  for (auto x : n->generators()) gens.push_back({x, 0});
  for (auto x : hgens) gens.push_back({0, x});
  return FiniteGroup::generate(real, gens, n->order() * h->order());
}

std::vector<std::pair<std::uint64_t, std::size_t>> order_histogram(const FiniteGroup& g) {
  std::map<std::uint64_t, std::size_t> counts;
  for (FiniteGroup::Elem x = 0; x < g.order(); ++x) ++counts[g.element_order(x)];
  return {counts.begin(), counts.end()};
}

std::vector<FiniteGroup::Elem> small_generating_set(const FiniteGroup& g) {
  std::vector<FiniteGroup::Elem> by_order(g.order());
  std::iota(by_order.begin(), by_order.end(), 0u);
  std::stable_sort(by_order.begin(), by_order.end(), [&](auto a, auto b) {
    return g.element_order(a) > g.element_order(b);
  });
  std::vector<FiniteGroup::Elem> gens;
  Subgroup h = generate_subgroup(g, {});
  for (auto x : by_order) {
    if (h.order() == g.order()) break;
    if (h.contains(x)) continue;
    gens.push_back(x);
    h = generate_subgroup(g, gens);
  }
  return gens;
}

namespace {

// Tries every image tuple for `gens` with matching element orders; the BFS
// extension both checks well-definedness and builds the bijection.
bool search(const FiniteGroup& a, const FiniteGroup& b,
            const std::vector<FiniteGroup::Elem>& gens,
            std::vector<FiniteGroup::Elem>& images) {
  if (images.size() == gens.size()) {
    constexpr FiniteGroup::Elem kUnset = 0xFFFFFFFFu;
    std::vector<FiniteGroup::Elem> map(a.order(), kUnset);
    std::vector<bool> used(b.order(), false);
    map[0] = 0;
    used[0] = true;
    std::vector<FiniteGroup::Elem> queue = {0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto x = queue[head];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto y = a.mul(x, gens[i]);
        const auto v = b.mul(map[x], images[i]);
        if (map[y] == kUnset) {
          if (used[v]) return false;
          used[v] = true;
          map[y] = v;
          queue.push_back(y);
        } else if (map[y] != v) {
          return false;
        }
      }
    }
    return queue.size() == a.order();
  }
  const auto want = a.element_order(gens[images.size()]);
  for (FiniteGroup::Elem y = 0; y < b.order(); ++y) {
    if (b.element_order(y) != want) continue;
    images.push_back(y);
    if (search(a, b, gens, images)) return true;
    images.pop_back();
  }
  return false;
}

}  // namespace

bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  if (order_histogram(a) != order_histogram(b)) return false;
  const auto gens = small_generating_set(a);
  std::vector<FiniteGroup::Elem> images;
  return search(a, b, gens, images);
}

}  // namespace rfsep
