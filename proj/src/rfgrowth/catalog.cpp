#include "rfsep/rfgrowth/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include "rfsep/core/error.hpp"
#include "rfsep/rfgrowth/constructions.hpp"

namespace rfsep {

bool CatalogEntry::is_simple_lie() const {
  return std::any_of(lie_forms.begin(), lie_forms.end(),
                     [](const auto& f) { return f.size() == 1; });
}

bool CatalogEntry::extension_bounded(std::uint64_t e) const {
  return std::any_of(lie_forms.begin(), lie_forms.end(),
                     [e](const auto& f) { return rfsep::extension_bounded(f, e); });
}

bool ClassFilter::accepts(const CatalogEntry& e) const {
  switch (kind) {
    case ClassKind::any:
      return true;
    case ClassKind::simple_lie:
      if (!e.is_simple_lie()) return false;
      if (!max_extension) return true;
      return std::any_of(e.lie_forms.begin(), e.lie_forms.end(), [&](const auto& f) {
        return f.size() == 1 && f[0].e <= *max_extension;
      });
    case ClassKind::lie_product:
      return e.is_lie_product() && (!max_extension || e.extension_bounded(*max_extension));
  }
  return false;
}

std::string ClassFilter::describe() const {
  std::string s = kind == ClassKind::any          ? "any"
                  : kind == ClassKind::simple_lie ? "lie"
                                                  : "lie-product";
  if (max_extension) s += ":e=" + std::to_string(*max_extension);
  return s;
}

ClassFilter parse_class_filter(const std::string& text) {
  ClassFilter f;
  std::string head = text;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    head = text.substr(0, colon);
    const std::string tail = text.substr(colon + 1);
    if (tail.rfind("e=", 0) != 0 || tail.size() < 3) {
      throw ParseError("bad class filter '" + text + "'", 0, 0);
    }
    try {
      f.max_extension = std::stoull(tail.substr(2));
    } catch (const std::exception&) {
      throw ParseError("bad class filter '" + text + "'", 0, 0);
    }
  }
  if (head == "any") {
    f.kind = ClassKind::any;
  } else if (head == "lie") {
    f.kind = ClassKind::simple_lie;
  } else if (head == "lie-product") {
    f.kind = ClassKind::lie_product;
  } else {
    throw ParseError("bad class filter '" + text + "'", 0, 0);
  }
  if (f.kind == ClassKind::any && f.max_extension) {
    throw ParseError("extension bound needs a Lie class", 0, 0);
  }
  return f;
}

std::size_t QuotientCatalog::add(std::string name, GroupPtr group,
                                 std::vector<std::vector<LieTypeId>> lie_forms) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    CatalogEntry& e = entries_[i];
    if (e.order() != group->order() || !are_isomorphic(*e.group, *group)) continue;
    if (e.name != name &&
        std::find(e.aliases.begin(), e.aliases.end(), name) == e.aliases.end()) {
      e.aliases.push_back(std::move(name));
    }
    for (auto& f : lie_forms) {
      if (std::find(e.lie_forms.begin(), e.lie_forms.end(), f) == e.lie_forms.end()) {
        e.lie_forms.push_back(std::move(f));
      }
    }
    return i;
  }
  CatalogEntry entry{std::move(name), {}, std::move(group), std::move(lie_forms)};
  auto pos = std::upper_bound(
      entries_.begin(), entries_.end(), entry.order(),
      [](std::size_t order, const CatalogEntry& e) { return order < e.order(); });
  const auto idx = static_cast<std::size_t>(pos - entries_.begin());
  entries_.insert(pos, std::move(entry));
  return idx;
}

const CatalogEntry* QuotientCatalog::find(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.name == name || std::find(e.aliases.begin(), e.aliases.end(), name) != e.aliases.end()) {
      return &e;
    }
  }
  return nullptr;
}

namespace {

GroupPtr C(std::uint32_t n) { return cyclic_group(n); }
GroupPtr D(std::uint32_t order) { return dihedral_group(order / 2); }
GroupPtr M(std::uint32_t m, std::uint32_t n, std::uint32_t r, std::uint32_t s) {
  return metacyclic_group(m, n, r, s);
}
GroupPtr X(std::vector<GroupPtr> factors) { return direct_product(std::move(factors)); }

// C4 x C2 = <a, b> acted on by an involution.
GroupPtr c4c2_by_c2(bool pauli) {
  GroupPtr n = X({C(4), C(2)});
  const auto a = n->generators()[0];
  const auto b = n->generators()[1];
  const auto image_a = pauli ? a : n->mul(a, b);
  const auto image_b = pauli ? n->mul(n->pow(a, 2), b) : b;
  return semidirect_product(n, C(2), {{image_a, image_b}});
}

GroupPtr c3sq_by_inversion() {
  GroupPtr n = X({C(3), C(3)});
  const auto a = n->generators()[0];
  const auto b = n->generators()[1];
  return semidirect_product(n, C(2), {{n->inv(a), n->inv(b)}});
}

// C3 x| D8 with kernel <rho^2, sigma> (rotation inverts, reflection fixes).
GroupPtr c3_by_d8() {
  GroupPtr n = C(3);
  const auto a = n->generators()[0];
  return semidirect_product(n, D(8), {{n->inv(a)}, {a}});
}

void add_small_groups(QuotientCatalog& cat) {
  cat.add("C1", trivial_group());
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
    cat.add("C" + std::to_string(p), C(p));
  }
  cat.add("C4", C(4));
  cat.add("C2^2", X({C(2), C(2)}));
  cat.add("C6", C(6));
  cat.add("S3", D(6));
  cat.add("C8", C(8));
  cat.add("C4xC2", X({C(4), C(2)}));
  cat.add("C2^3", X({C(2), C(2), C(2)}));
  cat.add("D8", D(8));
  cat.add("Q8", M(4, 2, 3, 2));
  cat.add("C9", C(9));
  cat.add("C3^2", X({C(3), C(3)}));
  cat.add("C10", C(10));
  cat.add("D10", D(10));
  cat.add("C12", C(12));
  cat.add("C6xC2", X({C(6), C(2)}));
  cat.add("A4", alternating_group(4));
  cat.add("D12", D(12));
  cat.add("Dic12", M(6, 2, 5, 3));
  cat.add("C14", C(14));
  cat.add("D14", D(14));
  cat.add("C15", C(15));
  cat.add("C16", C(16));
  cat.add("C4^2", X({C(4), C(4)}));
  cat.add("C2^2:C4", c4c2_by_c2(false));
  cat.add("C4:C4", M(4, 4, 3, 0));
  cat.add("C8xC2", X({C(8), C(2)}));
  cat.add("M16", M(8, 2, 5, 0));
  cat.add("D16", D(16));
  cat.add("SD16", M(8, 2, 3, 0));
  cat.add("Q16", M(8, 2, 7, 4));
  cat.add("C4xC2^2", X({C(4), C(2), C(2)}));
  cat.add("C2xD8", X({C(2), D(8)}));
  cat.add("C2xQ8", X({C(2), M(4, 2, 3, 2)}));
  cat.add("C4oD8", c4c2_by_c2(true));
  cat.add("C2^4", X({C(2), C(2), C(2), C(2)}));
  cat.add("C18", C(18));
  cat.add("D18", D(18));
  cat.add("C3xC6", X({C(3), C(6)}));
  cat.add("C3xS3", X({C(3), D(6)}));
  cat.add("C3^2:C2", c3sq_by_inversion());
  cat.add("C20", C(20));
  cat.add("C10xC2", X({C(10), C(2)}));
  cat.add("D20", D(20));
  cat.add("Dic20", M(10, 2, 9, 5));
  cat.add("C5:C4", M(5, 4, 2, 0));
  cat.add("C21", C(21));
  cat.add("C7:C3", M(7, 3, 2, 0));
  cat.add("C22", C(22));
  cat.add("D22", D(22));
  cat.add("C3:C8", M(3, 8, 2, 0));
  cat.add("C24", C(24));
  cat.add("SL(2,3)", sl2_3());
  cat.add("Dic24", M(12, 2, 11, 6));
  cat.add("C4xS3", X({C(4), D(6)}));
  cat.add("D24", D(24));
  cat.add("C2xDic12", X({C(2), M(6, 2, 5, 3)}));
  cat.add("C3:D8", c3_by_d8());
  cat.add("C12xC2", X({C(12), C(2)}));
  cat.add("C3xD8", X({C(3), D(8)}));
  cat.add("C3xQ8", X({C(3), M(4, 2, 3, 2)}));
  cat.add("S4", symmetric_group(4));
  cat.add("C2xA4", X({C(2), alternating_group(4)}));
  cat.add("C2^2xS3", X({C(2), C(2), D(6)}));
  cat.add("C6xC2^2", X({C(6), C(2), C(2)}));
  cat.complete_up_to = 24;
}

}  // namespace

QuotientCatalog small_groups_catalog() {
  QuotientCatalog cat;
  add_small_groups(cat);
  return cat;
}

namespace {

QuotientCatalog build_default() {
  QuotientCatalog cat;
  add_small_groups(cat);
  for (std::uint32_t n = 2; n <= 7; ++n) {
    cat.add("S" + std::to_string(n), symmetric_group(n));
    cat.add("A" + std::to_string(n), alternating_group(n));
  }
  struct Simple {
    std::string name;
    GroupPtr group;
    LieTypeId id;
  };
  std::vector<Simple> simple;
  for (std::uint64_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    const LieTypeId id = make_lie_id_q(LieFamily::A, 1, q);
    const std::string name = "PSL(2," + std::to_string(q) + ")";
    GroupPtr g = psl2(q);
    const std::size_t idx = cat.add(name, g, {{id}});
    const CatalogEntry& entry = cat[idx];
    // One representative per isomorphism class for the products.
    auto same = std::find_if(simple.begin(), simple.end(),
                             [&](const Simple& s) { return s.group->order() == g->order() &&
                                                           are_isomorphic(*s.group, *g); });
    if (same == simple.end()) simple.push_back({entry.name, entry.group, id});
  }
  for (std::uint32_t n = 25; n <= 48; ++n) cat.add("C" + std::to_string(n), C(n));
  for (std::uint32_t n = 26; n <= 48; n += 2) cat.add("D" + std::to_string(n), D(n));
  constexpr std::size_t kMaxProduct = 30240;
  for (std::size_t i = 0; i < simple.size(); ++i) {
    for (std::size_t j = i; j < simple.size(); ++j) {
      const std::size_t order = simple[i].group->order() * simple[j].group->order();
      if (order > kMaxProduct) continue;
      std::vector<std::vector<LieTypeId>> forms;
      const CatalogEntry* a = cat.find(simple[i].name);
      const CatalogEntry* b = cat.find(simple[j].name);
      for (const auto& fa : a->lie_forms) {
        for (const auto& fb : b->lie_forms) {
          std::vector<LieTypeId> f = fa;
          f.insert(f.end(), fb.begin(), fb.end());
          forms.push_back(std::move(f));
        }
      }
      cat.add(a->name + "x" + b->name, X({a->group, b->group}), std::move(forms));
    }
  }
  // The nonabelian simple groups of order < 2448 are PSL_2(q) for
  // q in {4, 5, 7, 8, 9, 11, 13}, and a product of two has order >= 3600.
  cat.lie_complete_up_to = 2447;
  return cat;
}

}  // namespace

const QuotientCatalog& default_catalog() {
  static std::once_flag once;
  static QuotientCatalog cat;
  std::call_once(once, [] { cat = build_default(); });
  return cat;
}

void load_catalog_text(QuotientCatalog& catalog, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto colon = line.find(':');
    std::istringstream head(line.substr(0, colon));
    std::string kw;
    if (!(head >> kw)) continue;
    auto fail = [&](const std::string& what) { throw ParseError(what, line_no, 1); };
    if (kw != "group") fail("expected 'group'");
    std::string name, degree_kw, lie_kw, lie_text;
    std::size_t degree = 0;
    if (!(head >> name >> degree_kw >> degree) || degree_kw != "degree" || degree == 0) {
      fail("expected 'group NAME degree N'");
    }
    std::vector<std::vector<LieTypeId>> forms;
    if (head >> lie_kw) {
      if (lie_kw != "lie" || !(head >> lie_text)) fail("expected 'lie DESCRIPTOR'");
      std::vector<LieTypeId> form;
      std::size_t start = 0;
      while (start <= lie_text.size()) {
        const auto star = lie_text.find('*', start);
        const auto piece = lie_text.substr(start, star == std::string::npos ? std::string::npos : star - start);
        try {
          form.push_back(parse_lie_descriptor(piece));
        } catch (const Error& e) {
          fail(e.what());
        }
        if (star == std::string::npos) break;
        start = star + 1;
      }
      forms.push_back(std::move(form));
    }
    if (colon == std::string::npos) fail("missing ':' before generators");
    std::vector<std::vector<std::uint32_t>> gens;
    std::string rest = line.substr(colon + 1);
    std::size_t start = 0;
    while (start < rest.size()) {
      auto semi = rest.find(';', start);
      if (semi == std::string::npos) semi = rest.size();
      std::string piece = rest.substr(start, semi - start);
      piece.erase(std::remove_if(piece.begin(), piece.end(), ::isspace), piece.end());
      if (!piece.empty()) {
        try {
          gens.push_back(parse_cycles(piece, degree));
        } catch (const Error& e) {
          fail(e.what());
        }
      }
      start = semi + 1;
    }
    GroupPtr group = permutation_group(degree, gens);
    for (const auto& form : forms) {
      Integer product = 1;
      for (const auto& id : form) product *= lie_order(id);
      if (product != Integer(static_cast<unsigned long>(group->order()))) {
        fail("lie tag does not match the group order " + std::to_string(group->order()));
      }
    }
    catalog.add(name, std::move(group), std::move(forms));
  }
}

void load_catalog_file(QuotientCatalog& catalog, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open catalog file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  load_catalog_text(catalog, buf.str());
}

}  // namespace rfsep
