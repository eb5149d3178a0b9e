// Command line front end: seeded generation, products, characteristic
// function evaluation, divisor summaries, fingerprints, conjugacy testing,
// and the verification suites. JSON in, canonical JSON out.
//
// Exit codes: 0 success, 1 verification failure (or unexpected internal
// error), 2 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "collig/charfn.hpp"
#include "collig/colligation.hpp"
#include "collig/divisor.hpp"
#include "collig/error.hpp"
#include "collig/invariants.hpp"
#include "collig/json_io.hpp"
#include "collig/semigroup.hpp"
#include "collig/verify.hpp"

using namespace collig;

namespace {

// Global flags. mode is kept as the raw string so "not given" is
// distinguishable: a few commands pick a natural default per input.
struct Options {
  std::string mode;
  std::optional<std::uint64_t> seed;
  double tol = 1e-9;
  int trials = 20;
  int max_word_len = -1;
  int det_cap = 12;
  int amplify = 1;
  std::string in_path;
};

std::uint64_t resolve_seed(const Options& opt) {
  if (opt.seed) return *opt.seed;
  if (const char* env = std::getenv("COLLIG_SEED")) {
    const std::string s(env);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("COLLIG_SEED must be a nonnegative integer, got '" +
                       s + "'");
    try {
      return std::stoull(s);
    } catch (const std::out_of_range&) {
      throw InputError("COLLIG_SEED out of range: '" + s + "'");
    }
  }
  return 12345;
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("invalid JSON from " + origin + ": " + e.what());
  }
}

Json read_json(const std::string& path) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
    return parse_json_text(ss.str(), "standard input");
  }
  std::ifstream f(path);
  if (!f) throw InputError("cannot open input file '" + path + "'");
  ss << f.rdbuf();
  return parse_json_text(ss.str(), "'" + path + "'");
}

void emit(const Json& j) { std::cout << dump_canonical(j); }

Mode doc_mode(const ColligationVar& v) {
  return std::holds_alternative<Colligation<ExactScalar>>(v) ? Mode::exact
                                                             : Mode::floating;
}

// When --mode was given it must agree with the document.
void check_mode_flag(const Options& opt, Mode have) {
  if (opt.mode.empty()) return;
  if (parse_mode(opt.mode) != have)
    throw InputError(std::string("document mode '") + mode_name(have) +
                     "' does not match --mode " + opt.mode);
}

// ---- random --------------------------------------------------------------

struct RandomArgs {
  int alpha = 0, m = 0, N = 0;
  std::string flavor = "general";
};

int cmd_random(const RandomArgs& args, const Options& opt) {
  const Flavor flavor = parse_flavor(args.flavor);
  // Unitary classes only exist over floats, so an unspecified mode follows
  // the flavor; everything else defaults to exact.
  const Mode mode = !opt.mode.empty()
                        ? parse_mode(opt.mode)
                        : (flavor == Flavor::unitary ? Mode::floating
                                                     : Mode::exact);
  const Shape shape{args.alpha, args.m, args.N};
  Rng rng(resolve_seed(opt));
  Json out;
  if (mode == Mode::exact) {
    const auto C = random_colligation_exact(shape, flavor, rng);
    const auto bad = validate(C);
    if (!bad.empty())
      throw std::runtime_error("generated colligation is invalid: " +
                               bad.front());
    out = colligation_to_json(C);
  } else {
    const auto C = random_colligation_float(shape, flavor, rng);
    const auto bad = validate(C);
    if (!bad.empty())
      throw std::runtime_error("generated colligation is invalid: " +
                               bad.front());
    out = colligation_to_json(C);
  }
  emit(out);
  return 0;
}

// ---- product ---------------------------------------------------------------

// Factors come either as positional files (one colligation each) or, with no
// files, as a JSON array on standard input. A single file holding an array
// also works. The product multiplies left to right.
int cmd_product(const std::vector<std::string>& files, const Options& opt) {
  std::vector<Json> docs;
  if (files.empty()) {
    Json j = read_json(opt.in_path);
    if (!j.is_array())
      throw InputError("product expects a JSON array of colligations");
    for (auto& e : j) docs.push_back(std::move(e));
  } else if (files.size() == 1) {
    Json j = read_json(files[0]);
    if (j.is_array())
      for (auto& e : j) docs.push_back(std::move(e));
    else
      docs.push_back(std::move(j));
  } else {
    for (const auto& f : files) docs.push_back(read_json(f));
  }
  if (docs.empty()) throw InputError("product needs at least one factor");

  ColligationVar acc = colligation_from_json(docs[0]);
  for (size_t i = 1; i < docs.size(); ++i) {
    ColligationVar next = colligation_from_json(docs[i]);
    if (acc.index() != next.index())
      throw InputError("product factors must share a mode");
    if (auto* a = std::get_if<Colligation<ExactScalar>>(&acc))
      acc = circ(*a, std::get<Colligation<ExactScalar>>(next));
    else
      acc = circ(std::get<Colligation<Cx>>(acc),
                 std::get<Colligation<Cx>>(next));
  }
  check_mode_flag(opt, doc_mode(acc));
  std::visit([](const auto& C) { emit(colligation_to_json(C)); }, acc);
  return 0;
}

// ---- charfn ----------------------------------------------------------------

// Input document: {"colligation": <doc>, "S": <matrix>}. With --amplify j
// the argument is the (j m) x (j m) matrix for the j-fold amplification.
int cmd_charfn(const Options& opt) {
  const Json j = read_json(opt.in_path);
  if (!j.is_object() || !j.contains("colligation") || !j.contains("S"))
    throw InputError("charfn expects {\"colligation\": ..., \"S\": ...}");
  if (opt.amplify < 1) throw InputError("--amplify must be >= 1");
  const ColligationVar v = colligation_from_json(j.at("colligation"));
  check_mode_flag(opt, doc_mode(v));
  Json out;
  if (const auto* C = std::get_if<Colligation<ExactScalar>>(&v)) {
    const Mat<ExactScalar> S = exact_mat_from_json(j.at("S"));
    out["value"] = mat_to_json(charfn_eval_amplified(*C, opt.amplify, S));
    out["mode"] = mode_name(Mode::exact);
  } else {
    const auto& Cf = std::get<Colligation<Cx>>(v);
    const Mat<Cx> S = float_mat_from_json(j.at("S"));
    out["value"] = mat_to_json(charfn_eval_amplified(Cf, opt.amplify, S));
    out["mode"] = mode_name(Mode::floating);
  }
  emit(out);
  return 0;
}

// ---- divisor ---------------------------------------------------------------

int cmd_divisor(const Options& opt) {
  const ColligationVar v = colligation_from_json(read_json(opt.in_path));
  const auto* C = std::get_if<Colligation<ExactScalar>>(&v);
  if (!C)
    throw InputError(
        "divisor summaries need an exact colligation (float arguments only "
        "support pointwise evaluation)");
  check_mode_flag(opt, Mode::exact);
  emit(divisor_summary_to_json(divisor_summary(*C, opt.det_cap)));
  return 0;
}

// ---- invariants ---------------------------------------------------------------

int cmd_invariants(const Options& opt) {
  const ColligationVar v = colligation_from_json(read_json(opt.in_path));
  check_mode_flag(opt, doc_mode(v));
  std::visit(
      [&](const auto& C) {
        emit(fingerprint_to_json(fingerprint(C, opt.max_word_len)));
      },
      v);
  return 0;
}

// ---- conjtest ---------------------------------------------------------------

// Input document: {"first": <colligation>, "second": <colligation>}.
int cmd_conjtest(const Options& opt) {
  const Json j = read_json(opt.in_path);
  if (!j.is_object() || !j.contains("first") || !j.contains("second"))
    throw InputError("conjtest expects {\"first\": ..., \"second\": ...}");
  const ColligationVar v1 = colligation_from_json(j.at("first"));
  const ColligationVar v2 = colligation_from_json(j.at("second"));
  if (v1.index() != v2.index())
    throw InputError("both colligations must use the same mode");
  check_mode_flag(opt, doc_mode(v1));
  const std::uint64_t seed = resolve_seed(opt);
  Json out;
  auto fill = [&](const auto& C1, const auto& C2) {
    const auto verdict = conjugacy_oracle(C1, C2, opt.trials, seed);
    out["verdict"] = conjugacy_kind_name(verdict.kind);
    out["witness"] =
        verdict.witness ? mat_to_json(*verdict.witness) : Json(nullptr);
  };
  if (const auto* C1 = std::get_if<Colligation<ExactScalar>>(&v1))
    fill(*C1, std::get<Colligation<ExactScalar>>(v2));
  else
    fill(std::get<Colligation<Cx>>(v1), std::get<Colligation<Cx>>(v2));
  emit(out);
  return 0;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const std::string& suite, const Options& opt) {
  RunConfig cfg;
  // An unspecified mode runs each suite where it is at home; "all" picks
  // its own modes regardless.
  cfg.mode = !opt.mode.empty()
                 ? parse_mode(opt.mode)
                 : (suite == "unitarity" ? Mode::floating : Mode::exact);
  cfg.seed = resolve_seed(opt);
  cfg.tol = opt.tol;
  cfg.trials = opt.trials;
  cfg.max_word_len = opt.max_word_len;
  cfg.det_cap = opt.det_cap;
  if (cfg.tol <= 0) throw InputError("--tol must be positive");
  if (cfg.trials < 1) throw InputError("--trials must be >= 1");

  const std::vector<Report> reports = run_suites(suite, cfg);
  Json jreports = Json::array();
  bool ok = true;
  for (const Report& r : reports) {
    ok = ok && r.ok();
    jreports.push_back(report_to_json(r));
  }
  Json out;
  out["reports"] = std::move(jreports);
  out["ok"] = ok;
  emit(out);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"colligation semigroup toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--mode", opt.mode, "exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--seed", opt.seed,
                 "RNG seed (default: COLLIG_SEED env, then 12345)");
  app.add_option("--tol", opt.tol, "float-mode comparison tolerance")
      ->capture_default_str();
  app.add_option("--trials", opt.trials, "case count for suites and oracle")
      ->capture_default_str();
  app.add_option("--max-word-len", opt.max_word_len,
                 "fingerprint word length cap (default: N^2 per shape)");
  app.add_option("--det-cap", opt.det_cap,
                 "symbolic determinant size cap")
      ->capture_default_str();
  app.add_option("--amplify", opt.amplify, "amplification level for charfn")
      ->capture_default_str();
  app.add_option("--in", opt.in_path, "input file (default: standard input)");

  RandomArgs rnd_args;
  auto* rnd = app.add_subcommand("random", "generate a random colligation");
  rnd->add_option("--alpha", rnd_args.alpha, "corner block size")->required();
  rnd->add_option("--m", rnd_args.m, "number of inner directions")->required();
  rnd->add_option("--N", rnd_args.N, "inner block size")->required();
  rnd->add_option("--flavor", rnd_args.flavor,
                  "general, invertible, or unitary")
      ->check(CLI::IsMember({"general", "invertible", "unitary"}));

  std::vector<std::string> product_files;
  auto* prod = app.add_subcommand(
      "product", "compose colligations (first factor leftmost)");
  prod->add_option("files", product_files,
                   "colligation files (default: JSON array on stdin)");

  auto* chf = app.add_subcommand(
      "charfn", "evaluate the characteristic function at a matrix");
  auto* div = app.add_subcommand(
      "divisor", "divisor polynomial and multiplicities (exact mode)");
  auto* inv = app.add_subcommand(
      "invariants", "conjugacy fingerprint of a colligation");
  auto* cnj = app.add_subcommand(
      "conjtest", "decide conjugacy of two colligations");

  std::string suite;
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite,
                  "multiplicativity, unitarity, divisor, relations, "
                  "reconstruction, separation, or all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (rnd->parsed()) return cmd_random(rnd_args, opt);
    if (prod->parsed()) return cmd_product(product_files, opt);
    if (chf->parsed()) return cmd_charfn(opt);
    if (div->parsed()) return cmd_divisor(opt);
    if (inv->parsed()) return cmd_invariants(opt);
    if (cnj->parsed()) return cmd_conjtest(opt);
    if (ver->parsed()) return cmd_verify(suite, opt);
    std::cerr << "error: no command given\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PoleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
