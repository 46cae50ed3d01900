#include "rfsep/separate/certificate.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "rfsep/core/error.hpp"

namespace rfsep {

std::string to_string(SeparationMode mode) {
  return mode == SeparationMode::direct ? "direct" : "semisimple";
}

SeparationMode parse_mode(std::string_view text) {
  if (text == "direct") return SeparationMode::direct;
  if (text == "semisimple") return SeparationMode::semisimple;
  throw ParseError("unknown mode '" + std::string(text) + "'", 0, 0);
}

namespace {

constexpr const char* kHeader = "rfsep-certificate";
constexpr const char* kElided = "<elided>";

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    const auto b = cur.find_first_not_of(' ');
    const auto e = cur.find_last_not_of(' ');
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

std::string serialize(const SeparationCertificate& c) {
  std::ostringstream os;
  auto kv = [&](const char* key, const std::string& value) {
    os << key << ": " << value << '\n';
  };
  kv(kHeader, std::to_string(SeparationCertificate::kVersion));
  kv("mode", to_string(c.mode));
  kv("dimension", std::to_string(c.dimension));
  kv("characteristic", std::to_string(c.characteristic));
  kv("num_vars", std::to_string(c.num_vars));
  kv("input_word", c.input_word);
  kv("level", std::to_string(c.level));
  kv("solvable_constant", fmt_double(c.solvable_constant));
  kv("kappa", std::to_string(c.kappa));
  kv("kappa_max", std::to_string(c.kappa_max));
  kv("conjugators", c.conjugators.empty() ? "-" : join(c.conjugators, "; "));
  kv("witness_length", rfsep::to_string(c.witness_length));
  kv("witness_word", c.witness_word.value_or(kElided));
  kv("entry", std::to_string(c.entry_row) + " " + std::to_string(c.entry_col));
  kv("entry_poly", c.entry_poly.value_or(kElided));
  kv("entry_degree", std::to_string(c.entry_degree));
  kv("entry_terms", std::to_string(c.entry_terms));
  std::vector<std::string> ns;
  for (auto n : c.exponents) ns.push_back(std::to_string(n));
  kv("exponents", ns.empty() ? "-" : join(ns, " "));
  kv("reduction_box_base", std::to_string(c.reduction_box_base));
  kv("reduction_fallback", c.reduction_fallback ? "true" : "false");
  kv("trace_poly", c.trace_poly.value_or(kElided));
  kv("trace_degree", std::to_string(c.trace_degree));
  if (c.eval_point) kv("eval_point", rfsep::to_string(*c.eval_point));
  kv("prime", std::to_string(c.prime));
  if (c.trace_residue) kv("trace_residue", std::to_string(*c.trace_residue));
  if (c.irreducible) kv("irreducible", *c.irreducible);
  kv("field_size", rfsep::to_string(c.field_size));
  kv("order_bound", rfsep::to_string(c.order_bound));
  kv("image", c.image);
  kv("diag_log_max_coeff", fmt_double(c.diag_log_max_coeff));
  kv("diag_bound_term", rfsep::to_string(c.diag_bound_term));
  kv("diag_trace_value_bits", std::to_string(c.diag_trace_value_bits));
  return os.str();
}

SeparationCertificate parse_certificate(std::string_view text) {
  std::map<std::string, std::pair<std::string, std::size_t>> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(": ");
    if (colon == std::string::npos) {
      const auto bare = line.find(':');
      if (bare == std::string::npos || bare + 1 != line.size()) {
        throw ParseError("expected 'key: value'", lineno, 1);
      }
      fields[line.substr(0, bare)] = {"", lineno};
      continue;
    }
    const std::string key = line.substr(0, colon);
    if (fields.count(key)) throw ParseError("duplicate key '" + key + "'", lineno, 1);
    fields[key] = {line.substr(colon + 2), lineno};
  }

  auto get = [&](const std::string& key) -> const std::string& {
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError("missing key '" + key + "'", 0, 0);
    return it->second.first;
  };
  auto has = [&](const std::string& key) { return fields.count(key) > 0; };
  auto num = [&](const std::string& key) -> std::uint64_t {
    const auto& v = get(key);
    try {
      std::size_t used = 0;
      const auto x = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument(key);
      return x;
    } catch (const std::exception&) {
      throw ParseError("key '" + key + "' is not a number", fields[key].second, 1);
    }
  };
  auto integer = [&](const std::string& key) {
    Integer x;
    if (x.set_str(get(key), 10) != 0) {
      throw ParseError("key '" + key + "' is not an integer", fields[key].second, 1);
    }
    return x;
  };
  auto optional_text = [&](const std::string& key) -> std::optional<std::string> {
    const auto& v = get(key);
    if (v == kElided) return std::nullopt;
    return v;
  };
  auto real = [&](const std::string& key) {
    try {
      return std::stod(get(key));
    } catch (const std::exception&) {
      throw ParseError("key '" + key + "' is not a number", fields[key].second, 1);
    }
  };

  if (num(kHeader) != SeparationCertificate::kVersion) {
    throw ParseError("unsupported certificate version", 1, 1);
  }
  SeparationCertificate c;
  c.mode = parse_mode(get("mode"));
  c.dimension = num("dimension");
  c.characteristic = num("characteristic");
  c.num_vars = num("num_vars");
  c.input_word = get("input_word");
  c.level = num("level");
  c.solvable_constant = real("solvable_constant");
  c.kappa = num("kappa");
  c.kappa_max = num("kappa_max");
  if (get("conjugators") != "-") c.conjugators = split(get("conjugators"), ';');
  c.witness_length = integer("witness_length");
  c.witness_word = optional_text("witness_word");
  {
    std::istringstream es(get("entry"));
    if (!(es >> c.entry_row >> c.entry_col)) {
      throw ParseError("entry must be 'row col'", fields["entry"].second, 1);
    }
  }
  c.entry_poly = optional_text("entry_poly");
  c.entry_degree = std::stol(get("entry_degree"));
  c.entry_terms = num("entry_terms");
  if (get("exponents") != "-") {
    std::istringstream es(get("exponents"));
    std::uint64_t n;
    while (es >> n) c.exponents.push_back(n);
  }
  c.reduction_box_base = num("reduction_box_base");
  c.reduction_fallback = get("reduction_fallback") == "true";
  c.trace_poly = optional_text("trace_poly");
  c.trace_degree = std::stoll(get("trace_degree"));
  if (has("eval_point")) c.eval_point = integer("eval_point");
  c.prime = num("prime");
  if (has("trace_residue")) c.trace_residue = num("trace_residue");
  if (has("irreducible")) c.irreducible = get("irreducible");
  c.field_size = integer("field_size");
  c.order_bound = integer("order_bound");
  c.image = get("image");
  c.diag_log_max_coeff = real("diag_log_max_coeff");
  c.diag_bound_term = integer("diag_bound_term");
  c.diag_trace_value_bits = num("diag_trace_value_bits");
  return c;
}

}  // namespace rfsep
