#include "rfsep/lietype/lietype.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>
#include <set>

#include "rfsep/core/error.hpp"

namespace rfsep {
namespace {

struct FamilyInfo {
  LieFamily family;
  const char* prefix;  // "2A", "G", ...
  std::uint64_t fixed_rank;  // 0 when the rank is a parameter
  std::uint64_t min_rank;
};

constexpr FamilyInfo kFamilies[] = {
    {LieFamily::A, "A", 0, 1},          {LieFamily::B, "B", 0, 2},
    {LieFamily::C, "C", 0, 3},          {LieFamily::D, "D", 0, 4},
    {LieFamily::TwistedA, "2A", 0, 2},  {LieFamily::TwistedD, "2D", 0, 4},
    {LieFamily::Triality, "3D", 4, 4},  {LieFamily::G2, "G", 2, 2},
    {LieFamily::F4, "F", 4, 4},         {LieFamily::E6, "E", 6, 6},
    {LieFamily::E7, "E", 7, 7},         {LieFamily::E8, "E", 8, 8},
    {LieFamily::TwistedE6, "2E", 6, 6}, {LieFamily::Suzuki, "2B", 2, 2},
    {LieFamily::ReeG2, "2G", 2, 2},     {LieFamily::ReeF4, "2F", 4, 4},
};

const FamilyInfo& info(LieFamily f) {
  for (const auto& i : kFamilies) {
    if (i.family == f) return i;
  }
  throw InternalError("unknown Lie family");
}

Integer big(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

// prod over i of (q^i - 1)
Integer minus_product(const Integer& q, std::initializer_list<std::uint64_t> exps) {
  Integer r = 1;
  for (auto i : exps) r *= ipow(q, i) - 1;
  return r;
}

std::uint64_t prime_power_log(std::uint64_t q, std::uint64_t& p) {
  if (q < 2) throw PreconditionError("field size must be a prime power");
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  std::uint64_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) throw PreconditionError("field size must be a prime power");
  return e;
}

}  // namespace

std::string to_string(LieFamily family) {
  switch (family) {
    case LieFamily::Triality: return "3D";
    default: return info(family).prefix;
  }
}

Integer LieTypeId::q() const { return ipow(big(p), e); }

std::string LieTypeId::name() const {
  return to_string(family) + std::to_string(rank) + "(" + q().get_str() + ")";
}

LieTypeId make_lie_id(LieFamily family, std::uint64_t rank, std::uint64_t p,
                      std::uint64_t e) {
  const FamilyInfo& fi = info(family);
  if (!is_prime(p)) throw PreconditionError("characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw PreconditionError("extension degree must be at least 1");
  if (fi.fixed_rank != 0 && rank != fi.fixed_rank) {
    throw PreconditionError(to_string(family) + " has rank " + std::to_string(fi.fixed_rank));
  }
  if (rank < fi.min_rank) {
    throw PreconditionError(to_string(family) + "_n needs n >= " + std::to_string(fi.min_rank));
  }
  if ((family == LieFamily::Suzuki || family == LieFamily::ReeF4) && (p != 2 || e % 2 == 0)) {
    throw PreconditionError(to_string(family) + " needs q = 2^(2m+1)");
  }
  if (family == LieFamily::ReeG2 && (p != 3 || e % 2 == 0)) {
    throw PreconditionError("2G2 needs q = 3^(2m+1)");
  }
  return {family, rank, p, e};
}

LieTypeId make_lie_id_q(LieFamily family, std::uint64_t rank, std::uint64_t q) {
  std::uint64_t p = 0;
  const std::uint64_t e = prime_power_log(q, p);
  return make_lie_id(family, rank, p, e);
}

LieTypeId parse_lie_name(const std::string& family_and_rank, std::uint64_t q) {
  static const std::regex re(R"(^\^?([23]?)([ABCDEFG])_?(\d+)$)");
  std::smatch m;
  if (!std::regex_match(family_and_rank, m, re)) {
    throw ParseError("unknown Lie type '" + family_and_rank + "'", 0, 0);
  }
  const std::string prefix = m[1].str() + m[2].str();
  const std::uint64_t rank = std::stoull(m[3].str());
  if (prefix == "3D") return make_lie_id_q(LieFamily::Triality, rank, q);
  if (prefix == "E") {
    if (rank == 6) return make_lie_id_q(LieFamily::E6, rank, q);
    if (rank == 7) return make_lie_id_q(LieFamily::E7, rank, q);
    if (rank == 8) return make_lie_id_q(LieFamily::E8, rank, q);
    throw PreconditionError("E_n needs n in {6, 7, 8}");
  }
  for (const auto& fi : kFamilies) {
    if (prefix == fi.prefix && fi.family != LieFamily::E6 && fi.family != LieFamily::E7 &&
        fi.family != LieFamily::E8) {
      return make_lie_id_q(fi.family, rank, q);
    }
  }
  throw ParseError("unknown Lie type '" + family_and_rank + "'", 0, 0);
}

LieTypeId parse_lie_descriptor(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != '_' && c != '^' && c != ' ') t += c;
  }
  static const std::regex re(R"(^([23]?[A-Za-z+\-]*?)(\d*)\((\d+)\)$)");
  std::smatch m;
  if (!std::regex_match(t, m, re)) throw ParseError("bad group descriptor '" + text + "'", 0, 0);
  std::string head = m[1].str();
  const std::uint64_t n = m[2].str().empty() ? 0 : std::stoull(m[2].str());
  const std::uint64_t q = std::stoull(m[3].str());
  if (!head.empty() && head[0] == 'P' && head != "P") head = head.substr(1);
  if (head == "Sz") return make_lie_id_q(LieFamily::Suzuki, 2, q);
  if (head == "SL" || head == "L") return make_lie_id_q(LieFamily::A, n - 1, q);
  if (head == "SU" || head == "U") return make_lie_id_q(LieFamily::TwistedA, n - 1, q);
  if (head == "Sp" || head == "S") {
    if (n % 2 != 0 || n < 2) throw PreconditionError("Sp_n needs even n");
    if (n == 2) return make_lie_id_q(LieFamily::A, 1, q);
    if (n == 4) return make_lie_id_q(LieFamily::B, 2, q);
    return make_lie_id_q(LieFamily::C, n / 2, q);
  }
  if (head == "Omega" || head == "O") {
    if (n % 2 == 0) throw PreconditionError("Omega_n needs odd n; use Omega+ or Omega-");
    return make_lie_id_q(LieFamily::B, (n - 1) / 2, q);
  }
  if (head == "Omega+" || head == "O+") return make_lie_id_q(LieFamily::D, n / 2, q);
  if (head == "Omega-" || head == "O-") return make_lie_id_q(LieFamily::TwistedD, n / 2, q);
  // Lie notation: the digits after the letter are the rank, a leading twist
  // digit is part of the head ("2B" + "2").
  if (head.size() == 1 || (head.size() == 2 && (head[0] == '2' || head[0] == '3'))) {
    return parse_lie_name(head + std::to_string(n), q);
  }
  throw ParseError("bad group descriptor '" + text + "'", 0, 0);
}

Integer lie_order(const LieTypeId& id, bool require_simple) {
  if (require_simple && is_tits_exception(id)) {
    throw PreconditionError(id.name() + " is not simple");
  }
  const Integer q = id.q();
  const std::uint64_t n = id.rank;
  Integer order = 1;
  switch (id.family) {
    case LieFamily::A: {
      order = ipow(q, n * (n + 1) / 2);
      for (std::uint64_t i = 1; i <= n; ++i) order *= ipow(q, i + 1) - 1;
      return order / gcd(big(n + 1), q - 1);
    }
    case LieFamily::TwistedA: {
      order = ipow(q, n * (n + 1) / 2);
      for (std::uint64_t i = 1; i <= n; ++i) {
        order *= ipow(q, i + 1) + ((i + 1) % 2 == 0 ? -1 : 1);
      }
      return order / gcd(big(n + 1), q + 1);
    }
    case LieFamily::B:
    case LieFamily::C: {
      order = ipow(q, n * n);
      for (std::uint64_t i = 1; i <= n; ++i) order *= ipow(q, 2 * i) - 1;
      return order / gcd(2, q - 1);
    }
    case LieFamily::D:
    case LieFamily::TwistedD: {
      const bool twisted = id.family == LieFamily::TwistedD;
      const Integer qn = ipow(q, n) + (twisted ? 1 : -1);
      order = ipow(q, n * (n - 1)) * qn;
      for (std::uint64_t i = 1; i < n; ++i) order *= ipow(q, 2 * i) - 1;
      return order / gcd(4, qn);
    }
    case LieFamily::Triality:
      return ipow(q, 12) * (ipow(q, 8) + ipow(q, 4) + 1) * (ipow(q, 6) - 1) * (q * q - 1);
    case LieFamily::G2:
      return ipow(q, 6) * minus_product(q, {6, 2});
    case LieFamily::F4:
      return ipow(q, 24) * minus_product(q, {12, 8, 6, 2});
    case LieFamily::E6:
      return ipow(q, 36) * minus_product(q, {12, 9, 8, 6, 5, 2}) / gcd(3, q - 1);
    case LieFamily::TwistedE6:
      return ipow(q, 36) * minus_product(q, {12, 8, 6, 2}) * (ipow(q, 9) + 1) *
             (ipow(q, 5) + 1) / gcd(3, q + 1);
    case LieFamily::E7:
      return ipow(q, 63) * minus_product(q, {2, 6, 8, 10, 12, 14, 18}) / gcd(2, q - 1);
    case LieFamily::E8:
      return ipow(q, 120) * minus_product(q, {2, 8, 12, 14, 18, 20, 24, 30});
    case LieFamily::Suzuki:
      return q * q * (q * q + 1) * (q - 1);
    case LieFamily::ReeG2:
      return ipow(q, 3) * (ipow(q, 3) + 1) * (q - 1);
    case LieFamily::ReeF4:
      return ipow(q, 12) * (ipow(q, 6) + 1) * (ipow(q, 4) - 1) * (ipow(q, 3) + 1) * (q - 1);
  }
  throw InternalError("lie_order: unhandled family");
}

const std::vector<std::string>& tits_exception_names() {
  static const std::vector<std::string> names = {
      "SL_2(2)", "SL_2(3)", "SU_3(2)", "Sp_4(2)",
      "G_2(2)",  "^2B_2(2)", "^2G_2(3)", "^2F_4(2)"};
  return names;
}

bool is_tits_exception(const LieTypeId& id) {
  for (const auto& name : tits_exception_names()) {
    if (parse_lie_descriptor(name) == id) return true;
  }
  return false;
}

bool is_tits_exception(const std::string& descriptor) {
  try {
    return is_tits_exception(parse_lie_descriptor(descriptor));
  } catch (const Error&) {
    return false;
  }
}

bool extension_bounded(const std::vector<LieTypeId>& ids, std::uint64_t e) {
  return std::all_of(ids.begin(), ids.end(),
                     [e](const LieTypeId& id) { return id.e <= e; });
}

std::uint64_t extension_bound_from_dimension(std::uint64_t l) {
  if (l < 1) throw PreconditionError("dimension must be at least 1");
  return l * (l - 1) / 2;
}

void validate_rep(const FiniteRep& rep) {
  for (const auto& g : rep.generators) {
    if (g.rows() != rep.dim || g.cols() != rep.dim) {
      throw ValidationError("generator has the wrong dimension");
    }
    fq_inverse(rep.field, g);  // throws when singular
  }
}

std::shared_ptr<FiniteGroup> materialize(const FiniteRep& rep, std::size_t cap) {
  validate_rep(rep);
  return matrix_group(rep.field, rep.dim, rep.generators, rep.projective, cap);
}

FiniteRep lie_natural_rep(const LieTypeId& id, bool projective) {
  if (id.family != LieFamily::A) {
    throw PreconditionError("only family A has a natural representation here");
  }
  FiniteRep rep{FiniteField::of_order(id.p, id.e), id.rank + 1, {}, projective, {}};
  const auto& f = rep.field;
  // Adjacent root elements x_{i,i+1}(tau^k), x_{i+1,i}(tau^k) generate
  // SL_n(q): commutators produce the remaining root subgroups.
  FiniteField::Elem t = f.one();
  for (std::uint64_t k = 0; k < id.e; ++k) {
    for (std::size_t i = 0; i + 1 < rep.dim; ++i) {
      FqMatrix up = fq_identity(f, rep.dim);
      up(i, i + 1) = t;
      FqMatrix down = fq_identity(f, rep.dim);
      down(i + 1, i) = t;
      rep.generators.push_back(std::move(up));
      rep.generators.push_back(std::move(down));
    }
    t = f.mul(t, f.tau());
  }
  Integer order = lie_order(id);
  if (!projective) order *= gcd(big(rep.dim), id.q() - 1);
  if (order.fits_ulong_p()) rep.order = order.get_ui();
  return rep;
}

namespace {

void write_digits(const FiniteField& big_field, FiniteField::Elem a, FqMatrix& m,
                  std::size_t row0, std::size_t col) {
  const UniPoly u = big_field.to_unipoly(a);
  for (std::uint64_t i = 0; i < big_field.degree(); ++i) {
    m(row0 + i, col) = u.coefficient(i).get_ui();
  }
}

FiniteField prime_of(const FiniteField& f) {
  return FiniteField::prime_field(f.characteristic());
}

}  // namespace

FqMatrix multiplication_block(const FiniteField& big_field, const FiniteField& prime,
                              FiniteField::Elem a) {
  const std::size_t k = big_field.degree();
  FqMatrix m(k, k, prime.zero());
  FiniteField::Elem basis = big_field.one();
  for (std::size_t j = 0; j < k; ++j) {
    write_digits(big_field, big_field.mul(a, basis), m, 0, j);
    basis = big_field.mul(basis, big_field.tau());
  }
  return m;
}

FqMatrix frobenius_block(const FiniteField& big_field, const FiniteField& prime) {
  const std::size_t k = big_field.degree();
  FqMatrix m(k, k, prime.zero());
  FiniteField::Elem basis = big_field.one();
  for (std::size_t j = 0; j < k; ++j) {
    write_digits(big_field, big_field.frobenius(basis), m, 0, j);
    basis = big_field.mul(basis, big_field.tau());
  }
  return m;
}

namespace {

FqMatrix expand(const FiniteField& big_field, const FiniteField& prime, const FqMatrix& g) {
  const std::size_t k = big_field.degree();
  FqMatrix out(g.rows() * k, g.cols() * k, prime.zero());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const FqMatrix b = multiplication_block(big_field, prime, g(i, j));
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) out(i * k + r, j * k + c) = b(r, c);
      }
    }
  }
  return out;
}

FqMatrix frobenius_operator(const FiniteField& big_field, const FiniteField& prime,
                            std::size_t w) {
  const std::size_t k = big_field.degree();
  const FqMatrix b = frobenius_block(big_field, prime);
  FqMatrix out(w * k, w * k, prime.zero());
  for (std::size_t i = 0; i < w; ++i) {
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) out(i * k + r, i * k + c) = b(r, c);
    }
  }
  return out;
}

}  // namespace

FqMatrix frobenius_semidirect_image(const FiniteField& big_field, const FqMatrix& g,
                                    std::uint64_t t) {
  const FiniteField prime = prime_of(big_field);
  FqMatrix out = expand(big_field, prime, g);
  const FqMatrix fr = frobenius_operator(big_field, prime, g.rows());
  for (std::uint64_t i = 0; i < t % big_field.degree(); ++i) out = fq_mul(prime, out, fr);
  return out;
}

FiniteRep frobenius_semidirect_rep(const FiniteRep& rep) {
  validate_rep(rep);
  if (rep.projective) throw PreconditionError("frobenius_semidirect_rep needs a linear rep");
  if (rep.field.degree() == 1) return rep;
  const FiniteField prime = prime_of(rep.field);
  FiniteRep out{prime, rep.dim * rep.field.degree(), {}, false, {}};
  for (const auto& g : rep.generators) out.generators.push_back(expand(rep.field, prime, g));
  out.generators.push_back(frobenius_operator(rep.field, prime, rep.dim));
  if (rep.order) out.order = *rep.order * rep.field.degree();
  return out;
}

FqMatrix product_aut_image(const FiniteField& field, const std::vector<FqMatrix>& blocks,
                           const std::vector<std::size_t>& sigma) {
  const std::size_t m = blocks.size();
  if (sigma.size() != m || m == 0) throw PreconditionError("block count mismatch");
  const std::size_t w = blocks[0].rows();
  std::vector<bool> seen(m, false);
  for (auto s : sigma) {
    if (s >= m || seen[s]) throw PreconditionError("sigma is not a permutation");
    seen[s] = true;
  }
  FqMatrix diag(m * w, m * w, field.zero());
  FqMatrix perm(m * w, m * w, field.zero());
  for (std::size_t b = 0; b < m; ++b) {
    for (std::size_t r = 0; r < w; ++r) {
      for (std::size_t c = 0; c < w; ++c) diag(b * w + r, b * w + c) = blocks[b](r, c);
      perm(sigma[b] * w + r, b * w + r) = field.one();
    }
  }
  return fq_mul(field, diag, perm);
}

FiniteRep product_aut_rep(const FiniteRep& rep, std::size_t m) {
  if (m < 1) throw PreconditionError("multiplicity must be at least 1");
  validate_rep(rep);
  if (m == 1) return rep;
  if (rep.projective) throw PreconditionError("product_aut_rep needs a linear rep");
  const auto& f = rep.field;
  FiniteRep out{f, rep.dim * m, {}, false, {}};
  std::vector<std::size_t> id(m);
  std::iota(id.begin(), id.end(), 0);
  const FqMatrix one = fq_identity(f, rep.dim);
  for (std::size_t b = 0; b < m; ++b) {
    for (const auto& g : rep.generators) {
      std::vector<FqMatrix> blocks(m, one);
      blocks[b] = g;
      out.generators.push_back(product_aut_image(f, blocks, id));
    }
  }
  std::vector<std::size_t> swap = id;
  std::swap(swap[0], swap[1]);
  out.generators.push_back(product_aut_image(f, std::vector<FqMatrix>(m, one), swap));
  if (m > 2) {
    std::vector<std::size_t> cycle(m);
    for (std::size_t i = 0; i < m; ++i) cycle[i] = (i + 1) % m;
    out.generators.push_back(product_aut_image(f, std::vector<FqMatrix>(m, one), cycle));
  }
  return out;
}

std::uint64_t m1_bruteforce(const FiniteRep& rep, std::size_t cap) {
  if (rep.generators.empty()) return 1;
  return materialize(rep, cap)->max_element_order();
}

std::uint64_t m1_of_power(const std::vector<std::uint64_t>& element_orders,
                          std::size_t l) {
  std::set<std::uint64_t> reach = {1};
  for (std::size_t i = 0; i < l; ++i) {
    std::set<std::uint64_t> next;
    for (auto a : reach) {
      for (auto o : element_orders) {
        const std::uint64_t g = std::gcd(a, o);
        const unsigned __int128 v = static_cast<unsigned __int128>(a / g) * o;
        if (v > std::numeric_limits<std::uint64_t>::max()) {
          throw CapacityError("m1_of_power: lcm overflow");
        }
        next.insert(static_cast<std::uint64_t>(v));
      }
    }
    reach = std::move(next);
  }
  return *reach.rbegin();
}

RankRatio rank_ratio(const FiniteGroup& h, std::size_t multiplicity) {
  if (multiplicity < 1) throw PreconditionError("multiplicity must be at least 1");
  RankRatio r;
  r.group_order = big(h.order());
  r.multiplicity = multiplicity;
  r.m1 = m1_of_power(h.element_order_set(), multiplicity);
  if (r.m1 < 2) throw PreconditionError("rank ratio of the trivial group is undefined");
  r.value = static_cast<double>(multiplicity) * std::log(static_cast<double>(h.order())) /
            std::log(static_cast<double>(r.m1));
  return r;
}

RankRatio rank_ratio(const LieTypeId& id, std::size_t multiplicity, std::size_t cap) {
  const auto h = materialize(lie_natural_rep(id, true), cap);
  return rank_ratio(*h, multiplicity);
}

}  // namespace rfsep
