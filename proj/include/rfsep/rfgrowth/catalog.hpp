#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfsep/finite/group.hpp"
#include "rfsep/lietype/lietype.hpp"

namespace rfsep {

struct CatalogEntry {
  std::string name;
  /// Names of isomorphic groups merged into this entry.
  std::vector<std::string> aliases;
  GroupPtr group;
  /// Ways of writing the group as a product of nonabelian simple groups of
  /// Lie type; empty when it is not such a product.
  std::vector<std::vector<LieTypeId>> lie_forms;

  std::size_t order() const { return group->order(); }
  bool is_lie_product() const { return !lie_forms.empty(); }
  bool is_simple_lie() const;
  /// Some Lie form uses only extension degrees <= e.
  bool extension_bounded(std::uint64_t e) const;
};

enum class ClassKind { any, simple_lie, lie_product };

struct ClassFilter {
  ClassKind kind = ClassKind::any;
  /// Extension degree bound for the Lie classes.
  std::optional<std::uint64_t> max_extension;

  bool restricted() const { return kind != ClassKind::any; }
  bool accepts(const CatalogEntry& e) const;
  std::string describe() const;
};

/// "any", "lie", "lie-product", optionally followed by ":e=N".
ClassFilter parse_class_filter(const std::string& text);

/// Finite target groups sorted ascending by order (stable within an order).
class QuotientCatalog {
 public:
  /// Adds a group, merging it into an existing isomorphic entry when there
  /// is one. Returns the index of the entry holding it.
  std::size_t add(std::string name, GroupPtr group,
                  std::vector<std::vector<LieTypeId>> lie_forms = {});

  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const CatalogEntry& operator[](std::size_t i) const { return entries_[i]; }
  /// Entry whose name or alias is `name`.
  const CatalogEntry* find(const std::string& name) const;

  /// Every group of order <= this (up to isomorphism) is present.
  std::size_t complete_up_to = 0;
  /// Every product of nonabelian simple groups of Lie type of order <= this
  /// is present.
  std::size_t lie_complete_up_to = 0;

 private:
  std::vector<CatalogEntry> entries_;
};

/// All 74 groups of order <= 24 up to isomorphism.
QuotientCatalog small_groups_catalog();
/// Small groups plus S_n, A_n (n <= 7), PSL_2(q) for q in
/// {4, 5, 7, 8, 9, 11, 13}, cyclic and dihedral groups up to order 48, and
/// products of two simple Lie type factors of order <= 30240. Built once.
const QuotientCatalog& default_catalog();

/// Lines "group NAME degree N [lie D1*D2] : (cycles) ; (cycles) ...".
/// `#` starts a comment.
void load_catalog_text(QuotientCatalog& catalog, const std::string& text);
void load_catalog_file(QuotientCatalog& catalog, const std::string& path);

}  // namespace rfsep
