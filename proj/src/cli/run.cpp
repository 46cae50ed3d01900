#include "rfsep/cli/run.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rfsep/cli/check.hpp"
#include "rfsep/cli/group_file.hpp"
#include "rfsep/core/error.hpp"
#include "rfsep/lietype/lietype.hpp"
#include "rfsep/rfgrowth/curve.hpp"
#include "rfsep/separate/separate.hpp"
#include "rfsep/witness/witness.hpp"

namespace rfsep {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

OutputFormat format_of(const CliConfig& cfg, OutputFormat fallback) {
  if (cfg.format.empty()) return fallback;
  if (cfg.format == "human") return OutputFormat::human;
  if (cfg.format == "record") return OutputFormat::record;
  return OutputFormat::csv;
}

void print_witness_word(std::ostream& out, const std::optional<std::string>& text) {
  out << "word: " << (text ? *text : "<elided>") << "\n";
}

int cmd_separate(const CliConfig& cfg, std::ostream& out) {
  const GroupSpec spec = load_group_file(cfg.group_file);
  SeparationOptions opt;
  opt.mode = parse_mode(cfg.mode);
  opt.kappa = cfg.kappa;
  opt.kappa_max = cfg.kappa_max;
  const SeparationCertificate cert = separate_element(spec, spec.parse(cfg.words.at(0)), opt);
  if (format_of(cfg, OutputFormat::record) == OutputFormat::record) {
    out << serialize(cert);
    return 0;
  }
  out << "input: " << cert.input_word << "\n"
      << "mode: " << to_string(cert.mode) << "\n"
      << "entry: (" << cert.entry_row + 1 << "," << cert.entry_col + 1 << ")\n";
  if (cert.characteristic == 0) {
    out << "quotient: GL_" << cert.dimension << "(F_" << cert.prime << ") at tau = "
        << cert.eval_point->get_str() << "\n";
  } else {
    out << "quotient: GL_" << cert.dimension << "(F_" << cert.prime << "[tau]/("
        << *cert.irreducible << "))\n";
  }
  out << "image: " << cert.image << "\n"
      << "order bound: " << cert.order_bound.get_str() << "\n";
  try {
    const auto q = finite_image(spec, cert, cfg.element_cap);
    out << "image order: " << q->order() << "\n";
  } catch (const CapacityError&) {
    out << "image order: above " << cfg.element_cap << "\n";
  }
  return 0;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out) {
  const GroupSpec spec = load_group_file(cfg.group_file);
  const SeparationCertificate cert = parse_certificate(read_file(cfg.words.at(0)));
  const auto v = verify_certificate(spec, cert);
  out << (v.ok ? "ok" : "rejected: " + v.reason) << "\n";
  return v.ok ? 0 : 1;
}

QuotientCatalog load_catalog(const CliConfig& cfg) {
  QuotientCatalog cat = default_catalog();
  if (!cfg.catalog_file.empty()) load_catalog_file(cat, cfg.catalog_file);
  return cat;
}

DepthOptions depth_options(const CliConfig& cfg, const Alphabet& alphabet) {
  DepthOptions opt;
  opt.filter = parse_class_filter(cfg.class_filter);
  opt.budget = cfg.budget;
  if (!cfg.aut_file.empty()) opt.aut = parse_aut_rules(read_file(cfg.aut_file), alphabet);
  return opt;
}

void need_free_rank(const CliConfig& cfg) {
  if (cfg.free_rank == 0) throw UsageError("--free-rank is required");
}

int cmd_depth(const CliConfig& cfg, std::ostream& out) {
  need_free_rank(cfg);
  const Alphabet alphabet = Alphabet::free(cfg.free_rank);
  const QuotientCatalog cat = load_catalog(cfg);
  const DepthOptions opt = depth_options(cfg, alphabet);
  const GroupWord w = parse_word(cfg.words.at(0), alphabet);
  const DepthReport r = depth(cfg.free_rank, w, cat, opt);
  if (format_of(cfg, OutputFormat::human) == OutputFormat::record) out << "rfsep-depth: 1\n";
  out << "word: " << format_word(w.reduced(), alphabet) << "\n"
      << "target: " << r.target << "\n"
      << "order: " << r.order << "\n"
      << "class: " << r.class_filter << "\n"
      << "invariance: " << r.invariance << "\n"
      << "exhaustive: " << (r.exhaustive ? "true" : "false") << "\n"
      << "skipped_targets: " << r.skipped_targets << "\n";
  for (std::size_t i = 0; i < r.witness.rank(); ++i) {
    out << "image " << alphabet.names[i] << ": " << r.witness.target->format(r.witness.images[i])
        << "\n";
  }
  return 0;
}

int cmd_curve(const CliConfig& cfg, std::ostream& out) {
  if (cfg.n < 1) throw UsageError("--n must be at least 1");
  if (cfg.pipeline == cfg.oracle) throw UsageError("choose exactly one of --pipeline FILE or --oracle");
  std::vector<CurvePoint> curve;
  if (cfg.pipeline) {
    const GroupSpec spec = load_group_file(cfg.group_file);
    SeparationOptions opt;
    opt.mode = parse_mode(cfg.mode);
    opt.kappa_max = cfg.kappa_max;
    curve = rf_curve_pipeline(spec, opt, cfg.n);
  } else {
    need_free_rank(cfg);
    const QuotientCatalog cat = load_catalog(cfg);
    curve = rf_curve_oracle(cfg.free_rank, cat, depth_options(cfg, Alphabet::free(cfg.free_rank)),
                            cfg.n);
  }
  const OutputFormat fmt = format_of(cfg, OutputFormat::human);
  if (fmt == OutputFormat::csv) {
    out << "n,value\n";
    for (const auto& p : curve) out << p.n << "," << p.value.get_str() << "\n";
    return 0;
  }
  for (const auto& p : curve) {
    out << "n=" << p.n << " value=" << p.value.get_str() << " words=" << p.words
        << " argmax=" << p.argmax;
    if (cfg.oracle) out << " exhaustive=" << (p.exhaustive ? "true" : "false");
    out << "\n";
  }
  if (curve.size() >= 3) {
    const PowerFit fit = fit_polynomial(curve);
    out << "fit: C=" << fit.coefficient << " d=" << fit.exponent
        << " max_residual=" << fit.max_residual << "\n";
  }
  return 0;
}

MalabelianContext witness_context(const CliConfig& cfg) {
  if (!cfg.group_file.empty()) {
    auto spec = std::make_shared<GroupSpec>(load_group_file(cfg.group_file));
    return MalabelianContext::matrix_group(spec, cfg.kappa, cfg.kappa_max);
  }
  need_free_rank(cfg);
  return MalabelianContext::free_group(cfg.free_rank, cfg.kappa, cfg.kappa_max);
}

int cmd_witness(const CliConfig& cfg, std::ostream& out) {
  const MalabelianContext ctx = witness_context(cfg);
  const WitnessRecord rec = derived_witness(ctx, ctx.parse(cfg.words.at(0)), cfg.n);
  out << "input: " << ctx.format(rec.input) << "\n"
      << "level: " << rec.level << "\n"
      << "conjugators:";
  for (const auto& k : rec.conjugators) out << " [" << ctx.format(k) << "]";
  out << "\nlength: " << rec.length.get_str() << "\n"
      << "bound: " << rec.bound.get_str() << "\n";
  std::optional<std::string> text;
  if (rec.word && rec.word->length() <= kMaxInlineText) text = ctx.format(*rec.word);
  print_witness_word(out, text);
  return 0;
}

int cmd_lcm(const CliConfig& cfg, std::ostream& out) {
  const MalabelianContext ctx = witness_context(cfg);
  std::vector<GroupWord> t;
  for (const auto& w : cfg.words) t.push_back(ctx.parse(w));
  const LcmTree tree = lcm_witness(ctx, t);
  out << "elements: " << t.size() << "\n"
      << "levels: " << tree.levels.size() << "\n"
      << "length: " << tree.result.length() << "\n"
      << "bound: " << lcm_length_bound(t, tree.kappa_eff) << "\n";
  std::optional<std::string> text;
  if (tree.result.length() <= kMaxInlineText) text = ctx.format(tree.result);
  print_witness_word(out, text);
  return 0;
}

std::uint64_t parse_q(const std::string& arg) {
  if (arg.rfind("q=", 0) != 0) throw UsageError("expected q=<prime power>, got '" + arg + "'");
  try {
    return std::stoull(arg.substr(2));
  } catch (const std::exception&) {
    throw UsageError("bad field size '" + arg + "'");
  }
}

int cmd_lietype(const CliConfig& cfg, std::ostream& out) {
  const auto& a = cfg.words;
  if (a.empty()) throw UsageError("lietype needs an action: info, tits or ratio");
  if (a[0] == "tits") {
    for (const auto& name : tits_exception_names()) out << name << "\n";
    return 0;
  }
  if (a.size() < 3) throw UsageError("usage: lietype info|ratio FAMILY q=Q");
  const LieTypeId id = parse_lie_name(a[1], parse_q(a[2]));
  if (a[0] == "info") {
    out << "group: " << id.name() << "\n"
        << "order: " << lie_order(id).get_str() << "\n"
        << "characteristic: " << id.p << "\n"
        << "extension degree: " << id.e << "\n"
        << "tits exception: " << (is_tits_exception(id) ? "true" : "false") << "\n";
    return 0;
  }
  if (a[0] == "ratio") {
    const std::size_t mult = cfg.n == 0 ? 1 : cfg.n;
    const RankRatio r = rank_ratio(id, mult, cfg.element_cap);
    out << "group: " << id.name() << "\n"
        << "order: " << r.group_order.get_str() << "\n"
        << "multiplicity: " << r.multiplicity << "\n"
        << "m1: " << r.m1 << "\n"
        << "ratio: " << r.value << "\n";
    return 0;
  }
  throw UsageError("unknown lietype action '" + a[0] + "'");
}

int cmd_check(const CliConfig& cfg, std::ostream& out) {
  const GroupSpec spec = load_group_file(cfg.group_file);
  CheckOptions opt;
  opt.samples = cfg.samples;
  opt.max_length = cfg.n == 0 ? 6 : cfg.n;
  opt.seed = cfg.seed;
  bool all = true;
  for (const auto& r : check_group(spec, opt)) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Finite quotients separating elements of matrix groups over localized polynomial rings"};
  app.name("rfsep");
  app.require_subcommand(1, 1);
  const auto formats = CLI::IsMember({"human", "record", "csv"});

  auto* sep = app.add_subcommand("separate", "Certify a finite quotient in which a word survives");
  sep->add_option("groupfile", cfg.group_file)->required();
  sep->add_option("word", cfg.words)->required()->expected(1)->allow_extra_args(false);
  sep->add_option("--mode", cfg.mode)->check(CLI::IsMember({"direct", "semisimple"}));
  sep->add_option("--format", cfg.format)->check(CLI::IsMember({"human", "record"}));
  sep->add_option("--kappa-max", cfg.kappa_max)->check(CLI::PositiveNumber);
  sep->add_option("--budget", cfg.element_cap, "Element cap for the image order")->check(CLI::PositiveNumber);

  auto* ver = app.add_subcommand("verify", "Re-check a certificate record");
  ver->add_option("groupfile", cfg.group_file)->required();
  ver->add_option("certificate", cfg.words)->required()->expected(1)->allow_extra_args(false);

  auto* dep = app.add_subcommand("depth", "Smallest catalog quotient of F_k separating a word");
  dep->add_option("--free-rank", cfg.free_rank)->required()->check(CLI::PositiveNumber);
  dep->add_option("word", cfg.words)->required()->expected(1)->allow_extra_args(false);
  dep->add_option("--catalog", cfg.catalog_file)->check(CLI::ExistingFile);
  dep->add_option("--aut", cfg.aut_file)->check(CLI::ExistingFile);
  dep->add_option("--class", cfg.class_filter);
  dep->add_option("--budget", cfg.budget)->check(CLI::PositiveNumber);
  dep->add_option("--format", cfg.format)->check(CLI::IsMember({"human", "record"}));

  auto* cur = app.add_subcommand("curve", "Residual finiteness growth curve");
  cur->add_option("--pipeline", cfg.group_file, "Group file for certificate bounds")->check(CLI::ExistingFile);
  cur->add_flag("--oracle", cfg.oracle, "Catalog depths in a free group");
  cur->add_option("--free-rank", cfg.free_rank)->check(CLI::PositiveNumber);
  cur->add_option("--n", cfg.n)->required()->check(CLI::PositiveNumber);
  cur->add_option("--mode", cfg.mode)->check(CLI::IsMember({"direct", "semisimple"}));
  cur->add_option("--catalog", cfg.catalog_file)->check(CLI::ExistingFile);
  cur->add_option("--aut", cfg.aut_file)->check(CLI::ExistingFile);
  cur->add_option("--class", cfg.class_filter);
  cur->add_option("--budget", cfg.budget)->check(CLI::PositiveNumber);
  cur->add_option("--kappa-max", cfg.kappa_max)->check(CLI::PositiveNumber);
  cur->add_option("--format", cfg.format)->check(formats);

  auto* wit = app.add_subcommand("witness", "Derived series witness w_{n,a}");
  wit->add_option("word", cfg.words)->required()->expected(1)->allow_extra_args(false);
  wit->add_option("--n", cfg.n)->required();
  wit->add_option("--group", cfg.group_file)->check(CLI::ExistingFile);
  wit->add_option("--free-rank", cfg.free_rank)->check(CLI::PositiveNumber);
  wit->add_option("--kappa-max", cfg.kappa_max)->check(CLI::PositiveNumber);

  auto* lcm = app.add_subcommand("lcm", "Common multiple of several words");
  lcm->allow_extras();
  lcm->add_option("--group", cfg.group_file)->check(CLI::ExistingFile);
  lcm->add_option("--free-rank", cfg.free_rank)->check(CLI::PositiveNumber);
  lcm->add_option("--kappa-max", cfg.kappa_max)->check(CLI::PositiveNumber);

  auto* lie = app.add_subcommand("lietype", "Finite groups of Lie type: info, tits, ratio");
  lie->add_option("args", cfg.words)->required();
  lie->add_option("--n", cfg.n, "Multiplicity for ratio");
  lie->add_option("--budget", cfg.element_cap)->check(CLI::PositiveNumber);

  auto* chk = app.add_subcommand("check", "Run invariant checks against a group file");
  chk->add_option("groupfile", cfg.group_file)->required()->check(CLI::ExistingFile);
  chk->add_option("--n", cfg.n, "Maximal word length");
  chk->add_option("--samples", cfg.samples)->check(CLI::PositiveNumber);
  chk->add_option("--seed", cfg.seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (cfg.subcommand == "lcm") {
    // Taken raw so that commutator brackets are not split as list syntax.
    cfg.words = lcm->remaining();
    if (cfg.words.empty()) {
      err << "usage error: lcm needs at least one word\n";
      return 2;
    }
    for (const auto& w : cfg.words) {
      if (w.rfind("--", 0) == 0) {
        err << "usage error: unknown option " << w << "\n";
        return 2;
      }
    }
  }
  cfg.pipeline = !cfg.group_file.empty() && cfg.subcommand == "curve";

  try {
    const std::string& s = cfg.subcommand;
    if (s == "separate") return cmd_separate(cfg, out);
    if (s == "verify") return cmd_verify(cfg, out);
    if (s == "depth") return cmd_depth(cfg, out);
    if (s == "curve") return cmd_curve(cfg, out);
    if (s == "witness") return cmd_witness(cfg, out);
    if (s == "lcm") return cmd_lcm(cfg, out);
    if (s == "lietype") return cmd_lietype(cfg, out);
    if (s == "check") return cmd_check(cfg, out);
    err << "usage error: unknown subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rfsep
