#include "rfsep/ring/irreducible.hpp"

#include <map>
#include <mutex>

#include "rfsep/core/error.hpp"

namespace rfsep {

int mobius(std::uint64_t n) {
  if (n == 0) throw PreconditionError("mobius: n must be positive");
  int result = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    n /= d;
    if (n % d == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

Integer gauss_irreducible_count(std::uint64_t p, std::uint64_t m) {
  if (!is_prime(p)) throw PreconditionError("gauss_irreducible_count: p not prime");
  if (m == 0) throw PreconditionError("gauss_irreducible_count: m must be >= 1");
  Integer sum = 0;
  for (std::uint64_t d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    const int mu = mobius(d);
    if (mu == 0) continue;
    Integer term = ipow(Integer(static_cast<unsigned long>(p)), m / d);
    if (mu > 0) sum += term; else sum -= term;
  }
  return sum / Integer(static_cast<unsigned long>(m));
}

namespace {

// Candidate with base-p code `code`: tau^m + sum digit_i tau^i.
DenseFp monic_from_code(std::uint64_t p, std::uint64_t m, std::uint64_t code) {
  DenseFp f(m + 1, 0);
  for (std::uint64_t i = 0; i < m; ++i) {
    f[i] = code % p;
    code /= p;
  }
  f[m] = 1;
  return f;
}

struct IrreducibleCache {
  std::mutex mutex;
  std::map<std::uint64_t, std::vector<std::vector<DenseFp>>> by_prime;
};

IrreducibleCache& cache() {
  static IrreducibleCache c;
  return c;
}

// by_prime[p][d] holds irreducibles of degree d (index 0 unused).
const std::vector<DenseFp>& dense_irreducibles(std::uint64_t p,
                                               std::uint64_t degree) {
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  auto& levels = c.by_prime[p];
  if (levels.empty()) levels.emplace_back();
  while (levels.size() <= degree) {
    const std::uint64_t m = levels.size();
    unsigned __int128 count = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
      count *= p;
      if (count > (1ULL << 32)) {
        throw CapacityError("irreducible enumeration beyond 2^32 candidates");
      }
    }
    std::vector<DenseFp> found;
    for (std::uint64_t code = 0; code < static_cast<std::uint64_t>(count); ++code) {
      DenseFp f = monic_from_code(p, m, code);
      bool reducible = false;
      for (std::uint64_t d = 1; 2 * d <= m && !reducible; ++d) {
        for (const auto& g : levels[d]) {
          if (dense_rem(f, g, p).empty()) {
            reducible = true;
            break;
          }
        }
      }
      if (!reducible) found.push_back(std::move(f));
    }
    levels.push_back(std::move(found));
  }
  return levels[degree];
}

}  // namespace

std::vector<UniPoly> irreducibles_of_degree(std::uint64_t p,
                                            std::uint64_t degree) {
  if (!is_prime(p)) throw PreconditionError("irreducibles: p not prime");
  if (degree == 0) throw PreconditionError("irreducibles: degree must be >= 1");
  std::vector<UniPoly> out;
  for (const auto& f : dense_irreducibles(p, degree)) {
    out.push_back(from_dense_fp(p, f));
  }
  return out;
}

std::vector<UniPoly> enumerate_irreducibles(std::uint64_t p,
                                            std::uint64_t max_deg) {
  if (max_deg == 0) throw PreconditionError("enumerate_irreducibles: max_deg must be >= 1");
  std::vector<UniPoly> out;
  for (std::uint64_t d = 1; d <= max_deg; ++d) {
    auto level = irreducibles_of_degree(p, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

namespace {

DenseFp dense_sub(DenseFp a, const DenseFp& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

DenseFp dense_gcd(DenseFp a, DenseFp b, std::uint64_t p) {
  while (!b.empty()) {
    DenseFp r = dense_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// tau^(p^k) mod w
DenseFp frobenius_power(const DenseFp& w, std::uint64_t p, std::uint64_t k) {
  DenseFp x = dense_rem(DenseFp{0, 1}, w, p);
  for (std::uint64_t i = 0; i < k; ++i) {
    DenseFp result{1};
    DenseFp base = x;
    std::uint64_t e = p;
    while (e > 0) {
      if (e & 1U) result = dense_mulmod(result, base, w, p);
      e >>= 1U;
      if (e > 0) base = dense_mulmod(base, base, w, p);
    }
    x = result;
  }
  return x;
}

}  // namespace

bool is_irreducible_fp(const UniPoly& w) {
  const std::uint64_t p = w.characteristic();
  if (p == 0) throw StructuralError("is_irreducible_fp: characteristic 0");
  if (w.degree() < 1) return false;
  const DenseFp wd = to_dense_fp(w);
  const auto n = static_cast<std::uint64_t>(w.degree());
  const DenseFp tau{0, 1};
  // tau^(p^n) == tau mod w
  if (dense_sub(frobenius_power(wd, p, n), dense_rem(tau, wd, p), p).size() != 0) {
    return false;
  }
  // gcd(tau^(p^(n/q)) - tau, w) == 1 for each prime q | n
  std::uint64_t m = n;
  for (std::uint64_t q = 2; q <= m; ++q) {
    if (m % q != 0) continue;
    while (m % q == 0) m /= q;
    DenseFp g = dense_gcd(wd, dense_sub(frobenius_power(wd, p, n / q), tau, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace rfsep
