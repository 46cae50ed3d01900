#include "rfsep/rfgrowth/homs.hpp"

#include <algorithm>
#include <sstream>

#include "rfsep/core/error.hpp"

namespace rfsep {

FiniteGroup::Elem Hom::evaluate(const GroupWord& w) const {
  FiniteGroup::Elem acc = target->identity();
  for (const auto& l : w.letters()) {
    if (l.gen >= images.size()) throw PreconditionError("word uses a generator beyond the rank");
    const auto x = images[l.gen];
    acc = target->mul(acc, l.sign > 0 ? x : target->inv(x));
  }
  return acc;
}

std::size_t Hom::image_order() const { return generate_subgroup(*target, images).order(); }

namespace {

std::uint64_t tuple_count(std::size_t k, std::size_t order, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > budget / std::max<std::size_t>(order, 1)) return budget + 1;
    total *= order;
  }
  return total;
}

}  // namespace

void for_each_hom(std::size_t k, const GroupPtr& target, std::uint64_t budget,
                  const std::function<bool(const Hom&)>& visit) {
  if (tuple_count(k, target->order(), budget) > budget) {
    throw CapacityError("|Q|^k = " + std::to_string(target->order()) + "^" +
                        std::to_string(k) + " exceeds the budget");
  }
  Hom h{target, std::vector<FiniteGroup::Elem>(k, 0)};
  const auto n = static_cast<FiniteGroup::Elem>(target->order());
  while (true) {
    if (!visit(h)) return;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++h.images[i] < n) break;
      h.images[i] = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

std::vector<Hom> enumerate_homs(std::size_t k, const GroupPtr& target, std::uint64_t budget) {
  std::vector<Hom> out;
  for_each_hom(k, target, budget, [&](const Hom& h) {
    out.push_back(h);
    return true;
  });
  return out;
}

GroupWord apply_rule(const std::vector<GroupWord>& images, const GroupWord& w) {
  GroupWord out;
  for (const auto& l : w.letters()) {
    if (l.gen >= images.size()) throw PreconditionError("rule does not cover generator");
    out *= l.sign > 0 ? images[l.gen] : images[l.gen].inverse();
  }
  return out.reduced();
}

namespace {

bool composes_to_identity(const std::vector<GroupWord>& a, const std::vector<GroupWord>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (apply_rule(a, b[i]) != GroupWord::generator(static_cast<std::uint32_t>(i))) return false;
  }
  return true;
}

std::optional<std::vector<GroupWord>> nielsen_inverse(const std::vector<GroupWord>& img) {
  const std::size_t k = img.size();
  // Signed permutation.
  bool all_letters = std::all_of(img.begin(), img.end(), [](const auto& w) { return w.length() == 1; });
  if (all_letters) {
    std::vector<GroupWord> inv(k);
    for (std::size_t i = 0; i < k; ++i) {
      const Letter l = img[i].letters()[0];
      if (l.gen >= k || !inv[l.gen].empty()) return std::nullopt;
      inv[l.gen] = GroupWord::generator(static_cast<std::uint32_t>(i), l.sign);
    }
    return inv;
  }
  // One transvection, all other generators fixed.
  std::optional<std::size_t> moved;
  for (std::size_t i = 0; i < k; ++i) {
    if (img[i] == GroupWord::generator(static_cast<std::uint32_t>(i))) continue;
    if (moved) return std::nullopt;
    moved = i;
  }
  if (!moved) return std::nullopt;
  const std::size_t i = *moved;
  const auto& ls = img[i].letters();
  if (ls.size() != 2) return std::nullopt;
  std::vector<GroupWord> inv = img;
  const Letter self{static_cast<std::uint32_t>(i), 1};
  if (ls[0] == self && ls[1].gen != i && ls[1].gen < k) {
    inv[i] = GroupWord({self, ls[1].inverse()});
  } else if (ls[1] == self && ls[0].gen != i && ls[0].gen < k) {
    inv[i] = GroupWord({ls[0].inverse(), self});
  } else {
    return std::nullopt;
  }
  return inv;
}

}  // namespace

AutRule make_aut_rule(std::string name, std::vector<GroupWord> images,
                      std::optional<std::vector<GroupWord>> inverse) {
  for (auto& w : images) w = w.reduced();
  if (!inverse) inverse = nielsen_inverse(images);
  if (!inverse) {
    throw ValidationError("rule '" + name +
                          "' is not an elementary Nielsen move; supply its inverse");
  }
  if (inverse->size() != images.size()) {
    throw ValidationError("rule '" + name + "': inverse has the wrong rank");
  }
  for (auto& w : *inverse) w = w.reduced();
  if (!composes_to_identity(images, *inverse) || !composes_to_identity(*inverse, images)) {
    throw ValidationError("rule '" + name + "' is not invertible as supplied");
  }
  return {std::move(name), std::move(images), std::move(*inverse)};
}

std::vector<AutRule> nielsen_generators(std::size_t k) {
  std::vector<AutRule> out;
  auto identity = [k] {
    std::vector<GroupWord> v;
    for (std::size_t i = 0; i < k; ++i) v.push_back(GroupWord::generator(static_cast<std::uint32_t>(i)));
    return v;
  };
  if (k >= 2) {
    auto swap = identity();
    std::swap(swap[0], swap[1]);
    out.push_back(make_aut_rule("swap", swap));
  }
  if (k >= 3) {
    std::vector<GroupWord> shift;
    for (std::size_t i = 0; i < k; ++i) {
      shift.push_back(GroupWord::generator(static_cast<std::uint32_t>((i + 1) % k)));
    }
    out.push_back(make_aut_rule("shift", shift));
  }
  if (k >= 1) {
    auto inv = identity();
    inv[0] = GroupWord::generator(0, -1);
    out.push_back(make_aut_rule("invert", inv));
  }
  if (k >= 2) {
    auto tv = identity();
    tv[0] = GroupWord({Letter{0, 1}, Letter{1, 1}});
    out.push_back(make_aut_rule("transvect", tv));
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<GroupWord> parse_assignments(const std::string& text, const Alphabet& alphabet,
                                         std::size_t line_no) {
  std::vector<GroupWord> images;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    images.push_back(GroupWord::generator(static_cast<std::uint32_t>(i)));
  }
  // Split at top-level commas; commas inside brackets belong to commutators.
  std::vector<std::string> pieces(1);
  int depth = 0;
  for (char c : text) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      pieces.emplace_back();
    } else {
      pieces.back() += c;
    }
  }
  for (const auto& raw : pieces) {
    const std::string piece = trim(raw);
    if (piece.empty()) continue;
    const auto arrow = piece.find("->");
    if (arrow == std::string::npos) throw ParseError("expected 'gen -> word'", line_no, 1);
    const std::string lhs = trim(piece.substr(0, arrow));
    auto it = std::find(alphabet.names.begin(), alphabet.names.end(), lhs);
    if (it == alphabet.names.end()) throw ParseError("unknown generator '" + lhs + "'", line_no, 1);
    try {
      images[static_cast<std::size_t>(it - alphabet.names.begin())] =
          parse_word(trim(piece.substr(arrow + 2)), alphabet);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, 1);
    }
  }
  return images;
}

}  // namespace

std::vector<AutRule> parse_aut_rules(const std::string& text, const Alphabet& alphabet) {
  std::vector<AutRule> rules;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'NAME: assignments'", line_no, 1);
    const std::string name = trim(line.substr(0, colon));
    std::string body = line.substr(colon + 1);
    std::optional<std::vector<GroupWord>> inverse;
    if (auto bar = body.find('|'); bar != std::string::npos) {
      inverse = parse_assignments(body.substr(bar + 1), alphabet, line_no);
      body = body.substr(0, bar);
    }
    rules.push_back(make_aut_rule(name, parse_assignments(body, alphabet, line_no), inverse));
  }
  return rules;
}

bool same_kernel(const Hom& a, const Hom& b) {
  std::vector<std::vector<FiniteGroup::Elem>> tuples;
  for (std::size_t i = 0; i < a.rank(); ++i) tuples.push_back({a.images[i], b.images[i]});
  const std::size_t joint =
      joint_image_order({a.target.get(), b.target.get()}, tuples, a.target->order() * b.target->order());
  return joint == a.image_order() && joint == b.image_order();
}

namespace {

Hom compose(const Hom& phi, const std::vector<GroupWord>& images) {
  Hom out{phi.target, {}};
  for (const auto& w : images) out.images.push_back(phi.evaluate(w));
  return out;
}

// ker(phi) <= ker(psi)
bool kernel_contained(const Hom& phi, const Hom& psi) {
  std::vector<std::vector<FiniteGroup::Elem>> tuples;
  for (std::size_t i = 0; i < phi.rank(); ++i) tuples.push_back({phi.images[i], psi.images[i]});
  const std::size_t joint = joint_image_order({phi.target.get(), psi.target.get()}, tuples,
                                              phi.target->order() * psi.target->order());
  return joint == phi.image_order();
}

}  // namespace

bool kernel_invariant(const Hom& phi, const std::vector<AutRule>& rules) {
  for (const auto& r : rules) {
    if (r.images.size() != phi.rank()) throw PreconditionError("rule rank differs from hom rank");
    if (!kernel_contained(phi, compose(phi, r.images))) return false;
    if (!kernel_contained(phi, compose(phi, r.inverse_images))) return false;
  }
  return true;
}

InvariantCore invariant_core(const Hom& phi, const std::vector<AutRule>& rules,
                             std::size_t orbit_cap, std::size_t element_cap) {
  InvariantCore core;
  core.orbit.push_back(phi);
  for (std::size_t head = 0; head < core.orbit.size(); ++head) {
    const Hom current = core.orbit[head];
    for (const auto& r : rules) {
      for (const auto* images : {&r.images, &r.inverse_images}) {
        Hom next = compose(current, *images);
        const bool known = std::any_of(core.orbit.begin(), core.orbit.end(),
                                       [&](const Hom& h) { return same_kernel(h, next); });
        if (known) continue;
        if (core.orbit.size() >= orbit_cap) {
          throw OrbitUnbounded("kernel orbit exceeds " + std::to_string(orbit_cap));
        }
        core.orbit.push_back(std::move(next));
      }
    }
  }
  std::vector<GroupPtr> factors(core.orbit.size(), phi.target);
  auto real = std::make_shared<ProductRealization>(factors);
  std::vector<std::vector<std::uint32_t>> gens;
  for (std::size_t i = 0; i < phi.rank(); ++i) {
    std::vector<std::uint32_t> t;
    for (const auto& h : core.orbit) t.push_back(h.images[i]);
    gens.push_back(std::move(t));
  }
  GroupPtr image = FiniteGroup::generate(real, gens, element_cap);
  core.diagonal = Hom{image, image->generators()};
  return core;
}

Hom project(const Hom& phi, std::size_t factor) {
  const auto* prod = dynamic_cast<const ProductRealization*>(&phi.target->realization());
  if (prod == nullptr) throw PreconditionError("target is not a direct product");
  if (factor >= prod->factors().size()) throw PreconditionError("factor index out of range");
  Hom out{prod->factors()[factor], {}};
  for (auto x : phi.images) out.images.push_back(phi.target->symbols(x)[factor]);
  return out;
}

FactorProjection project_to_factor(const Hom& phi, const GroupWord& tracked) {
  const auto* prod = dynamic_cast<const ProductRealization*>(&phi.target->realization());
  if (prod == nullptr) throw PreconditionError("target is not a direct product");
  if (phi.evaluate(tracked) == phi.target->identity()) {
    throw PreconditionError("tracked element is trivial under phi");
  }
  for (std::size_t j = 0; j < prod->factors().size(); ++j) {
    Hom h = project(phi, j);
    if (h.evaluate(tracked) != h.target->identity()) return {j, std::move(h)};
  }
  throw InternalError("element nontrivial in the product dies in every factor");
}

DepthReport depth(std::size_t k, const GroupWord& g, const QuotientCatalog& catalog,
                  const DepthOptions& options) {
  const GroupWord w = g.reduced();
  if (w.empty()) throw PreconditionError("depth: the word is trivial in the free group");
  for (const auto& l : w.letters()) {
    if (l.gen >= k) throw PreconditionError("depth: word uses a generator beyond the rank");
  }
  std::size_t skipped = 0;
  std::size_t smallest_skipped = SIZE_MAX;
  for (std::size_t idx = 0; idx < catalog.size(); ++idx) {
    const CatalogEntry& entry = catalog[idx];
    if (!options.filter.accepts(entry) || entry.order() == 1) continue;
    std::optional<Hom> found;
    try {
      for_each_hom(k, entry.group, options.budget, [&](const Hom& h) {
        if (h.evaluate(w) == h.target->identity()) return true;
        if (options.filter.restricted() && !h.surjective()) return true;
        if (!options.aut.empty() && !kernel_invariant(h, options.aut)) return true;
        found = h;
        return false;
      });
    } catch (const CapacityError&) {
      ++skipped;
      smallest_skipped = std::min(smallest_skipped, entry.order());
      continue;
    }
    if (!found) continue;
    DepthReport r;
    r.target = entry.name;
    r.order = entry.order();
    r.catalog_index = idx;
    r.witness = std::move(*found);
    r.class_filter = options.filter.describe();
    r.invariance = options.aut.empty() ? "not requested" : "invariant";
    r.skipped_targets = skipped;
    const std::size_t complete =
        options.filter.restricted() ? catalog.lie_complete_up_to : catalog.complete_up_to;
    const bool covered = options.filter.restricted() ? r.order <= complete : r.order - 1 <= complete;
    r.exhaustive = covered && smallest_skipped >= r.order;
    return r;
  }
  throw NotSeparated("no catalog target separates " + format_word(w, Alphabet::free(k)));
}

}  // namespace rfsep
