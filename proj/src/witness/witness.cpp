#include "rfsep/witness/witness.hpp"

#include <algorithm>
#include <cmath>

#include "rfsep/core/error.hpp"

namespace rfsep {

MalabelianContext MalabelianContext::free_group(std::size_t rank, std::size_t kappa,
                                                std::size_t kappa_max) {
  if (rank == 0) throw PreconditionError("free group of rank 0");
  if (kappa == 0 || kappa > kappa_max) {
    throw PreconditionError("malabelian context needs 1 <= kappa <= kappa_max");
  }
  MalabelianContext ctx;
  ctx.rank_ = rank;
  ctx.kappa_ = kappa;
  ctx.kappa_max_ = kappa_max;
  ctx.alphabet_ = Alphabet::free(rank);
  return ctx;
}

MalabelianContext MalabelianContext::matrix_group(std::shared_ptr<const GroupSpec> spec,
                                                  std::size_t kappa,
                                                  std::size_t kappa_max) {
  if (!spec) throw PreconditionError("matrix context without a group spec");
  if (kappa == 0 || kappa > kappa_max) {
    throw PreconditionError("malabelian context needs 1 <= kappa <= kappa_max");
  }
  MalabelianContext ctx;
  ctx.rank_ = spec->basis_count();
  ctx.kappa_ = kappa;
  ctx.kappa_max_ = kappa_max;
  ctx.alphabet_ = spec->alphabet();
  ctx.spec_ = std::move(spec);
  return ctx;
}

bool MalabelianContext::is_trivial(const GroupWord& w) const {
  if (is_free()) return w.reduced().empty();
  return is_identity(evaluate_word(*spec_, w));
}

std::size_t solvable_depth(std::size_t dim, double cz) {
  if (dim == 0) throw PreconditionError("solvable_depth: dimension must be >= 1");
  if (!(cz >= 0)) throw PreconditionError("solvable_depth: negative constant");
  const double x = cz * std::log2(static_cast<double>(dim));
  // Guard against log2 rounding just above an integer.
  const double r = std::round(x);
  const double c = std::abs(x - r) < 1e-9 ? r : std::ceil(x);
  return static_cast<std::size_t>(c) + 3;
}

namespace {

struct FreeOps {
  using Value = GroupWord;
  Value identity() const { return {}; }
  Value letter(const Letter& l) const { return GroupWord({l}); }
  Value mul(const Value& a, const Value& b) const { return (a * b).reduced(); }
  Value inv(const Value& a) const { return a.inverse(); }
  bool trivial(const Value& a) const { return a.empty(); }
  bool commute(const Value& a, const Value& b) const {
    return commutator(a, b).reduced().empty();
  }
};

struct MatrixValue {
  LMatrix m;
  LMatrix inv;
};

struct MatrixOps {
  const GroupSpec& spec;
  using Value = MatrixValue;
  Value identity() const { return {spec.identity(), spec.identity()}; }
  Value letter(const Letter& l) const {
    return {spec.letter_matrix(l), spec.letter_matrix(l.inverse())};
  }
  Value mul(const Value& a, const Value& b) const { return {a.m * b.m, b.inv * a.inv}; }
  Value inv(const Value& a) const { return {a.inv, a.m}; }
  bool trivial(const Value& a) const { return is_identity(a.m); }
  bool commute(const Value& a, const Value& b) const {
    const LMatrix ab = a.m * b.m;
    const LMatrix ba = b.m * a.m;
    for (std::size_t i = 0; i < ab.data().size(); ++i) {
      if (!(ab.data()[i] == ba.data()[i])) return false;
    }
    return true;
  }
};

template <class Ops>
typename Ops::Value evaluate(const Ops& ops, const GroupWord& w) {
  auto v = ops.identity();
  for (const auto& l : w.letters()) v = ops.mul(v, ops.letter(l));
  return v;
}

template <class Ops>
GroupWord search_conjugator(const Ops& ops, std::size_t rank, std::size_t kappa_max,
                            const typename Ops::Value& g, const typename Ops::Value& h) {
  using Value = typename Ops::Value;
  std::vector<std::pair<GroupWord, Value>> level;
  level.emplace_back(GroupWord(), ops.identity());
  for (std::size_t len = 0; len <= kappa_max; ++len) {
    for (const auto& [k, kv] : level) {
      const Value c = ops.mul(ops.mul(kv, h), ops.inv(kv));
      if (!ops.commute(g, c)) return k;
    }
    if (len == kappa_max) break;
    std::vector<std::pair<GroupWord, Value>> next;
    for (const auto& [k, kv] : level) {
      for (std::size_t r = 0; r < 2 * rank; ++r) {
        const Letter l{static_cast<std::uint32_t>(r / 2), r % 2 == 0 ? 1 : -1};
        if (!k.empty() && k.letters().back() == l.inverse()) continue;
        next.emplace_back(k * GroupWord({l}), ops.mul(kv, ops.letter(l)));
      }
    }
    level = std::move(next);
  }
  throw MalabelianViolation("no conjugator of length <= " + std::to_string(kappa_max) +
                            " (hypothesis unverified at this radius)");
}

Integer eight_pow_bound(std::size_t n, const Integer& base) {
  return ipow(Integer(8), n) * base;
}

}  // namespace

GroupWord find_conjugator(const MalabelianContext& ctx, const GroupWord& g,
                          const GroupWord& h) {
  if (ctx.is_free()) {
    FreeOps ops;
    const auto gv = evaluate(ops, g);
    const auto hv = evaluate(ops, h);
    if (ops.trivial(gv) || ops.trivial(hv)) {
      throw PreconditionError("find_conjugator: trivial argument");
    }
    return search_conjugator(ops, ctx.rank(), ctx.kappa_max(), gv, hv);
  }
  MatrixOps ops{*ctx.spec()};
  const auto gv = evaluate(ops, g);
  const auto hv = evaluate(ops, h);
  if (ops.trivial(gv) || ops.trivial(hv)) {
    throw PreconditionError("find_conjugator: trivial argument");
  }
  return search_conjugator(ops, ctx.rank(), ctx.kappa_max(), gv, hv);
}

WitnessRecord derived_witness(const MalabelianContext& ctx, const GroupWord& a,
                              std::size_t n, std::size_t materialize_cap) {
  WitnessRecord rec;
  rec.input = a;
  rec.level = n;
  rec.kappa_eff = ctx.kappa();

  if (ctx.is_free()) {
    FreeOps ops;
    GroupWord w = a.reduced();
    if (w.empty()) throw PreconditionError("derived_witness: trivial input");
    const Integer base_len(static_cast<unsigned long>(w.length()));
    for (std::size_t j = 1; j <= n; ++j) {
      if (4 * (w.length() + ctx.kappa_max()) > materialize_cap) {
        throw CapacityError("derived_witness: word exceeds the materialization cap");
      }
      const GroupWord k = search_conjugator(ops, ctx.rank(), ctx.kappa_max(), w, w);
      rec.kappa_eff = std::max(rec.kappa_eff, k.length());
      rec.conjugators.push_back(k);
      w = commutator(w, conjugate(k, w)).reduced();
    }
    rec.length = Integer(static_cast<unsigned long>(w.length()));
    rec.word = std::move(w);
    rec.bound = eight_pow_bound(
        n, std::max(base_len, Integer(static_cast<unsigned long>(rec.kappa_eff))));
    return rec;
  }

  MatrixOps ops{*ctx.spec()};
  MatrixValue v = evaluate(ops, a);
  if (ops.trivial(v)) throw PreconditionError("derived_witness: trivial input");
  std::optional<GroupWord> word = a;
  Integer length(static_cast<unsigned long>(a.length()));
  for (std::size_t j = 1; j <= n; ++j) {
    const GroupWord k = search_conjugator(ops, ctx.rank(), ctx.kappa_max(), v, v);
    rec.kappa_eff = std::max(rec.kappa_eff, k.length());
    rec.conjugators.push_back(k);
    const MatrixValue kv = evaluate(ops, k);
    const MatrixValue c = ops.mul(ops.mul(kv, v), ops.inv(kv));
    MatrixValue next{v.m * c.m * v.inv * c.inv, c.m * v.m * c.inv * v.inv};
    v = std::move(next);
    length = 4 * length + 4 * Integer(static_cast<unsigned long>(k.length()));
    if (word && length <= Integer(static_cast<unsigned long>(materialize_cap))) {
      word = commutator(*word, conjugate(k, *word));
    } else {
      word.reset();
    }
  }
  rec.word = std::move(word);
  rec.length = length;
  rec.bound = eight_pow_bound(
      n, std::max(Integer(static_cast<unsigned long>(a.length())),
                  Integer(static_cast<unsigned long>(rec.kappa_eff))));
  rec.matrix = std::move(v.m);
  rec.matrix_inverse = std::move(v.inv);
  return rec;
}

LcmTree lcm_witness(const MalabelianContext& ctx, const std::vector<GroupWord>& t) {
  if (t.empty()) throw PreconditionError("lcm_witness: empty list");
  for (const auto& x : t) {
    if (ctx.is_trivial(x)) throw PreconditionError("lcm_witness: trivial member");
  }
  LcmTree tree;
  tree.kappa_eff = ctx.kappa();
  std::size_t width = 1;
  while (width < t.size()) width *= 2;
  std::vector<GroupWord> level;
  for (std::size_t i = 0; i < width; ++i) {
    const GroupWord& x = t[i % t.size()];
    level.push_back(ctx.is_free() ? x.reduced() : x);
  }
  tree.levels.push_back(level);
  while (level.size() > 1) {
    std::vector<GroupWord> next;
    std::vector<GroupWord> ks;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      const GroupWord k = find_conjugator(ctx, level[i], level[i + 1]);
      tree.kappa_eff = std::max(tree.kappa_eff, k.length());
      GroupWord node = commutator(level[i], conjugate(k, level[i + 1]));
      if (ctx.is_free()) node = node.reduced();
      ks.push_back(k);
      next.push_back(std::move(node));
    }
    tree.conjugators.push_back(std::move(ks));
    tree.levels.push_back(next);
    level = std::move(next);
  }
  tree.result = level.front();
  return tree;
}

std::uint64_t lcm_length_bound(const std::vector<GroupWord>& t, std::size_t kappa) {
  std::uint64_t longest = 0;
  for (const auto& x : t) longest = std::max<std::uint64_t>(longest, x.length());
  const std::uint64_t m = t.size();
  return 4 * m * m * (longest + 3 * kappa);
}

}  // namespace rfsep
