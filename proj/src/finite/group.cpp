#include "rfsep/finite/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "rfsep/core/error.hpp"

namespace rfsep {

std::string Realization::format(const std::uint32_t* x) const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < width(); ++i) os << (i ? "," : "") << x[i];
  os << ')';
  return os.str();
}

void PermRealization::identity(std::uint32_t* out) const {
  std::iota(out, out + degree_, 0u);
}

void PermRealization::multiply(const std::uint32_t* a, const std::uint32_t* b,
                               std::uint32_t* out) const {
  for (std::size_t i = 0; i < degree_; ++i) out[i] = b[a[i]];
}

std::string PermRealization::format(const std::uint32_t* x) const {
  std::ostringstream os;
  std::vector<bool> seen(degree_, false);
  bool any = false;
  for (std::size_t i = 0; i < degree_; ++i) {
    if (seen[i] || x[i] == i) continue;
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      os << (first ? "" : ",") << j + 1;
      first = false;
      j = x[j];
    }
    os << ')';
  }
  return any ? os.str() : "()";
}

MatrixRealization::MatrixRealization(FiniteField field, std::size_t dim,
                                     bool projective)
    : field_(std::move(field)), dim_(dim), projective_(projective) {
  if (field_.size() > 0xFFFFFFFFull) {
    throw CapacityError("matrix realization needs a field of size < 2^32");
  }
}

void MatrixRealization::identity(std::uint32_t* out) const {
  for (std::size_t i = 0; i < dim_ * dim_; ++i) out[i] = 0;
  for (std::size_t i = 0; i < dim_; ++i) out[i * dim_ + i] = 1;
}

void MatrixRealization::multiply(const std::uint32_t* a, const std::uint32_t* b,
                                 std::uint32_t* out) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      FiniteField::Elem acc = 0;
      for (std::size_t k = 0; k < dim_; ++k) {
        const auto x = a[i * dim_ + k];
        const auto y = b[k * dim_ + j];
        if (x != 0 && y != 0) acc = field_.add(acc, field_.mul(x, y));
      }
      out[i * dim_ + j] = static_cast<std::uint32_t>(acc);
    }
  }
  canonicalize(out);
}

void MatrixRealization::canonicalize(std::uint32_t* x) const {
  if (!projective_) return;
  for (std::size_t i = 0; i < dim_ * dim_; ++i) {
    if (x[i] == 0) continue;
    if (x[i] != 1) {
      const auto s = field_.inv(x[i]);
      for (std::size_t j = 0; j < dim_ * dim_; ++j) {
        x[j] = static_cast<std::uint32_t>(field_.mul(x[j], s));
      }
    }
    return;
  }
}

std::string MatrixRealization::format(const std::uint32_t* x) const {
  return fq_format(field_, decode(x));
}

std::vector<std::uint32_t> MatrixRealization::encode(const FqMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) {
    throw StructuralError("matrix realization: wrong dimension");
  }
  std::vector<std::uint32_t> out(m.data().begin(), m.data().end());
  canonicalize(out.data());
  return out;
}

FqMatrix MatrixRealization::decode(const std::uint32_t* x) const {
  FqMatrix m(dim_, dim_, 0);
  for (std::size_t i = 0; i < dim_ * dim_; ++i) m.data()[i] = x[i];
  return m;
}

ProductRealization::ProductRealization(
    std::vector<std::shared_ptr<const FiniteGroup>> factors)
    : factors_(std::move(factors)) {}

void ProductRealization::identity(std::uint32_t* out) const {
  std::fill(out, out + factors_.size(), 0u);
}

void ProductRealization::multiply(const std::uint32_t* a, const std::uint32_t* b,
                                  std::uint32_t* out) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out[i] = factors_[i]->mul(a[i], b[i]);
  }
}

std::string ProductRealization::format(const std::uint32_t* x) const {
  std::string out = "(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += ", ";
    out += factors_[i]->format(x[i]);
  }
  return out + ")";
}

namespace {

std::uint64_t hash_symbols(const std::uint32_t* x, std::size_t width) {
  std::uint64_t h = 0x9E3779B97F4A7C15ull;
  for (std::size_t i = 0; i < width; ++i) {
    h ^= x[i] + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ull;
  }
  return h ^ (h >> 31);
}

}  // namespace

long long FiniteGroup::lookup(const std::uint32_t* canonical) const {
  const std::size_t mask = table_.size() - 1;
  std::size_t slot = hash_symbols(canonical, width_) & mask;
  for (;;) {
    const auto idx = table_[slot];
    if (idx < 0) return -1;
    if (std::equal(canonical, canonical + width_,
                   arena_.begin() + static_cast<std::ptrdiff_t>(idx * width_))) {
      return idx;
    }
    slot = (slot + 1) & mask;
  }
}

void FiniteGroup::rehash() {
  std::vector<std::int64_t> fresh(table_.empty() ? 64 : table_.size() * 2, -1);
  const std::size_t mask = fresh.size() - 1;
  for (std::size_t idx = 0; idx < count_; ++idx) {
    std::size_t slot = hash_symbols(&arena_[idx * width_], width_) & mask;
    while (fresh[slot] >= 0) slot = (slot + 1) & mask;
    fresh[slot] = static_cast<std::int64_t>(idx);
  }
  table_ = std::move(fresh);
}

FiniteGroup::Elem FiniteGroup::insert(const std::uint32_t* canonical) {
  if (2 * (count_ + 1) > table_.size()) rehash();
  arena_.insert(arena_.end(), canonical, canonical + width_);
  const std::size_t mask = table_.size() - 1;
  std::size_t slot = hash_symbols(canonical, width_) & mask;
  while (table_[slot] >= 0) slot = (slot + 1) & mask;
  table_[slot] = static_cast<std::int64_t>(count_);
  return static_cast<Elem>(count_++);
}

std::shared_ptr<FiniteGroup> FiniteGroup::generate(
    std::shared_ptr<const Realization> realization,
    const std::vector<std::vector<std::uint32_t>>& generators, std::size_t cap) {
  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->realization_ = std::move(realization);
  g->width_ = g->realization_->width();
  const std::size_t w = g->width_;
  std::vector<std::uint32_t> buf(w);
  g->realization_->identity(buf.data());
  g->rehash();
  g->insert(buf.data());

  std::vector<Elem> distinct;
  for (auto gen : generators) {
    if (gen.size() != w) throw StructuralError("generator has wrong width");
    g->realization_->canonicalize(gen.data());
    auto idx = g->lookup(gen.data());
    if (idx < 0) {
      if (g->count_ >= cap) throw CapacityError("group closure exceeded cap");
      idx = g->insert(gen.data());
    }
    g->generators_.push_back(static_cast<Elem>(idx));
    if (std::find(distinct.begin(), distinct.end(), idx) == distinct.end() && idx != 0) {
      distinct.push_back(static_cast<Elem>(idx));
    }
  }

  std::vector<std::uint32_t> gen_syms(distinct.size() * w);
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    std::copy_n(&g->arena_[distinct[i] * w], w, &gen_syms[i * w]);
  }
  // The arena may grow during insert, so the current element is copied out.
  std::vector<std::uint32_t> x(w);
  for (std::size_t cur = 0; cur < g->count_; ++cur) {
    std::copy_n(&g->arena_[cur * w], w, x.data());
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      g->realization_->multiply(x.data(), &gen_syms[i * w], buf.data());
      g->realization_->canonicalize(buf.data());
      if (g->lookup(buf.data()) < 0) {
        if (g->count_ >= cap) throw CapacityError("group closure exceeded cap");
        g->insert(buf.data());
      }
    }
  }
  g->finish();
  return g;
}

FiniteGroup::Elem FiniteGroup::mul(Elem a, Elem b) const {
  if (!cayley_.empty()) return cayley_[static_cast<std::size_t>(a) * count_ + b];
  thread_local std::vector<std::uint32_t> buf;
  buf.resize(width_);
  realization_->multiply(&arena_[a * width_], &arena_[b * width_], buf.data());
  realization_->canonicalize(buf.data());
  const auto idx = lookup(buf.data());
  if (idx < 0) throw InternalError("finite group not closed under product");
  return static_cast<Elem>(idx);
}

void FiniteGroup::finish() {
  if (count_ <= kCayleyLimit) {
    std::vector<Elem> table(count_ * count_);
    for (std::size_t a = 0; a < count_; ++a) {
      for (std::size_t b = 0; b < count_; ++b) {
        table[a * count_ + b] = mul(static_cast<Elem>(a), static_cast<Elem>(b));
      }
    }
    cayley_ = std::move(table);
  }
  inverse_.assign(count_, 0);
  orders_.assign(count_, 1);
  for (std::size_t a = 0; a < count_; ++a) {
    const auto x = static_cast<Elem>(a);
    Elem prev = 0, cur = x;
    std::uint64_t ord = 1;
    while (cur != 0) {
      prev = cur;
      cur = mul(cur, x);
      ++ord;
    }
    // For x = e the loop does not run: order 1, inverse e.
    orders_[a] = x == 0 ? 1 : ord;
    inverse_[a] = x == 0 ? 0 : prev;
  }
}

FiniteGroup::Elem FiniteGroup::pow(Elem a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  e %= static_cast<long long>(orders_[a]);
  Elem r = 0;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FiniteGroup::Elem FiniteGroup::commutator(Elem a, Elem b) const {
  return mul(mul(a, b), mul(inv(a), inv(b)));
}

FiniteGroup::Elem FiniteGroup::conjugate(Elem k, Elem x) const {
  return mul(mul(k, x), inv(k));
}

std::uint64_t FiniteGroup::max_element_order() const {
  return *std::max_element(orders_.begin(), orders_.end());
}

std::vector<std::uint64_t> FiniteGroup::element_order_set() const {
  std::vector<std::uint64_t> out(orders_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::span<const std::uint32_t> FiniteGroup::symbols(Elem a) const {
  return {&arena_[a * width_], width_};
}

long long FiniteGroup::find(std::vector<std::uint32_t> syms) const {
  if (syms.size() != width_) return -1;
  realization_->canonicalize(syms.data());
  return lookup(syms.data());
}

std::string FiniteGroup::format(Elem a) const {
  return realization_->format(&arena_[a * width_]);
}

bool Subgroup::contains(FiniteGroup::Elem x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

namespace {

// Closure of `gens` starting from a known subset; `member` is indexed by
// ambient element and updated in place.
void close_under(const FiniteGroup& g, const std::vector<FiniteGroup::Elem>& gens,
                 std::vector<FiniteGroup::Elem>& elems, std::vector<char>& member) {
  for (std::size_t cur = 0; cur < elems.size(); ++cur) {
    for (auto s : gens) {
      const auto y = g.mul(elems[cur], s);
      if (!member[y]) {
        member[y] = 1;
        elems.push_back(y);
      }
    }
  }
}

Subgroup finalize(std::vector<FiniteGroup::Elem> elems,
                  std::vector<FiniteGroup::Elem> gens) {
  std::sort(elems.begin(), elems.end());
  return {std::move(elems), std::move(gens)};
}

}  // namespace

Subgroup generate_subgroup(const FiniteGroup& g,
                           const std::vector<FiniteGroup::Elem>& gens) {
  std::vector<char> member(g.order(), 0);
  std::vector<FiniteGroup::Elem> elems{g.identity()};
  member[g.identity()] = 1;
  std::vector<FiniteGroup::Elem> kept;
  for (auto x : gens) {
    if (x != g.identity()) kept.push_back(x);
  }
  close_under(g, kept, elems, member);
  return finalize(std::move(elems), std::move(kept));
}

Subgroup normal_closure(const FiniteGroup& g, const Subgroup& within,
                        const std::vector<FiniteGroup::Elem>& gens) {
  std::vector<char> member(g.order(), 0);
  std::vector<FiniteGroup::Elem> elems{g.identity()};
  member[g.identity()] = 1;
  std::vector<FiniteGroup::Elem> ngens;
  for (auto x : gens) {
    if (!member[x]) {
      ngens.push_back(x);
      close_under(g, ngens, elems, member);
    }
  }
  // In a finite group tHt^-1 <= H already forces equality, so it suffices
  // that conjugates of the generators by `within`'s generators lie in H.
  for (std::size_t i = 0; i < ngens.size(); ++i) {
    for (auto t : within.generators) {
      const auto c = g.conjugate(t, ngens[i]);
      if (!member[c]) {
        ngens.push_back(c);
        close_under(g, ngens, elems, member);
      }
    }
  }
  return finalize(std::move(elems), std::move(ngens));
}

Subgroup derived_subgroup(const FiniteGroup& g, const Subgroup& h) {
  std::vector<FiniteGroup::Elem> comms;
  for (std::size_t i = 0; i < h.generators.size(); ++i) {
    for (std::size_t j = i + 1; j < h.generators.size(); ++j) {
      const auto c = g.commutator(h.generators[i], h.generators[j]);
      if (c != g.identity()) comms.push_back(c);
    }
  }
  return normal_closure(g, h, comms);
}

Subgroup derived_series_term(const FiniteGroup& g, const Subgroup& h,
                             std::size_t n) {
  Subgroup cur = h;
  for (std::size_t i = 0; i < n && !cur.is_trivial(); ++i) {
    cur = derived_subgroup(g, cur);
  }
  return cur;
}

Subgroup whole_group(const FiniteGroup& g) {
  std::vector<FiniteGroup::Elem> gens;
  for (auto x : g.generators()) {
    if (x != g.identity()) gens.push_back(x);
  }
  std::vector<FiniteGroup::Elem> elems(g.order());
  std::iota(elems.begin(), elems.end(), 0u);
  return {std::move(elems), std::move(gens)};
}

std::size_t joint_image_order(
    const std::vector<const FiniteGroup*>& groups,
    const std::vector<std::vector<FiniteGroup::Elem>>& tuples, std::size_t cap) {
  const std::size_t r = groups.size();
  std::uint64_t stride_total = 1;
  for (auto* g : groups) {
    if (stride_total > (std::uint64_t{1} << 62) / g->order()) {
      throw CapacityError("joint image: product too large to index");
    }
    stride_total *= g->order();
  }
  auto encode = [&](const std::vector<FiniteGroup::Elem>& t) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < r; ++i) code = code * groups[i]->order() + t[i];
    return code;
  };
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::vector<FiniteGroup::Elem>> elems;
  elems.emplace_back(r, 0);
  seen.insert(encode(elems.back()));
  for (std::size_t cur = 0; cur < elems.size(); ++cur) {
    for (const auto& t : tuples) {
      std::vector<FiniteGroup::Elem> y(r);
      for (std::size_t i = 0; i < r; ++i) y[i] = groups[i]->mul(elems[cur][i], t[i]);
      if (seen.insert(encode(y)).second) {
        if (elems.size() >= cap) throw CapacityError("joint image exceeded cap");
        elems.push_back(std::move(y));
      }
    }
  }
  return elems.size();
}

std::shared_ptr<FiniteGroup> permutation_group(
    std::size_t degree, const std::vector<std::vector<std::uint32_t>>& gens,
    std::size_t cap) {
  for (const auto& gperm : gens) {
    std::vector<char> hit(degree, 0);
    if (gperm.size() != degree) throw ValidationError("permutation of wrong degree");
    for (auto x : gperm) {
      if (x >= degree || hit[x]) throw ValidationError("not a permutation");
      hit[x] = 1;
    }
  }
  return FiniteGroup::generate(std::make_shared<PermRealization>(degree), gens, cap);
}

std::shared_ptr<FiniteGroup> matrix_group(const FiniteField& field,
                                          std::size_t dim,
                                          const std::vector<FqMatrix>& gens,
                                          bool projective, std::size_t cap) {
  auto real = std::make_shared<MatrixRealization>(field, dim, projective);
  std::vector<std::vector<std::uint32_t>> syms;
  for (const auto& m : gens) {
    fq_inverse(field, m);  // rejects singular generators
    syms.push_back(real->encode(m));
  }
  return FiniteGroup::generate(real, syms, cap);
}

std::shared_ptr<FiniteGroup> direct_product(std::vector<GroupPtr> factors,
                                            std::size_t cap) {
  const std::size_t r = factors.size();
  std::vector<std::vector<std::uint32_t>> gens;
  for (std::size_t i = 0; i < r; ++i) {
    for (auto x : factors[i]->generators()) {
      std::vector<std::uint32_t> t(r, 0);
      t[i] = x;
      gens.push_back(std::move(t));
    }
  }
  return FiniteGroup::generate(std::make_shared<ProductRealization>(std::move(factors)),
                               gens, cap);
}

std::vector<std::uint32_t> parse_cycles(const std::string& text,
                                        std::size_t degree) {
  std::vector<std::uint32_t> perm(degree);
  std::iota(perm.begin(), perm.end(), 0u);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  while (pos < text.size()) {
    if (text[pos] != '(') throw ParseError("expected '(' in cycle notation", 0, 0);
    ++pos;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      skip();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) throw ParseError("expected a point in cycle notation", 0, 0);
      const auto pt = std::stoul(text.substr(start, pos - start));
      if (pt == 0 || pt > degree) throw ValidationError("cycle point out of range");
      cycle.push_back(static_cast<std::uint32_t>(pt - 1));
      skip();
      if (pos < text.size() && text[pos] == ',') ++pos;
    }
    // Compose left to right: apply the existing permutation, then the cycle.
    std::vector<std::uint32_t> c(degree);
    std::iota(c.begin(), c.end(), 0u);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (c[cycle[i]] != cycle[i]) throw ValidationError("repeated point in a cycle");
      c[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
    for (auto& x : perm) x = c[x];
    skip();
  }
  return perm;
}

}  // namespace rfsep
