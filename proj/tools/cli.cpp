#include "cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "qhyp/acceptance.hpp"
#include "qhyp/json_io.hpp"
#include "qhyp/pairs.hpp"
#include "qhyp/sampling.hpp"

namespace qhyp {

namespace {

struct Options {
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::string format = "json";
  int signature = 2;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(path + ": " + e.what());
  }
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

HermitianSpace space_of(const HMatrix& m) { return HermitianSpace::corner(static_cast<int>(m.rows()) - 1); }

Isometry isometry_from_json(const Json& j) {
  HMatrix m = hmatrix_from_json(j);
  if (m.rows() < 2) throw MalformedInput("matrix must be at least 2x2");
  try {
    return Isometry::make(space_of(m), m);
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(e.what());
  }
}

std::pair<Isometry, Isometry> pair_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("B")) throw MalformedInput("pair must have \"A\" and \"B\"");
  return {isometry_from_json(j["A"]), isometry_from_json(j["B"])};
}

int classify_cmd(const std::string& file, std::ostream& out) {
  Json in = read_json(file);
  Isometry a = isometry_from_json(in);
  Json report = classify_report(a);
  int code = 0;
  if (in.contains("expect")) {
    bool match = in["expect"].is_string() && in["expect"].get<std::string>() == to_string(a.classification());
    report["expect_matches"] = match;
    code = match ? 0 : 1;
  }
  emit(out, report);
  return code;
}

int invariants_cmd(const std::string& file, const Options& o, std::ostream& out) {
  PointConfig c = config_from_json(read_json(file));
  InvariantProfile p = profile(c);
  if (o.format == "csv") {
    out << profile_csv(p);
  } else {
    Json j = to_json(p);
    j["semi_normalized"] = to_json(semi_normalize(c));
    emit(out, j);
  }
  return 0;
}

int congruent_cmd(const std::string& fa, const std::string& fb, const Options& o, std::ostream& out) {
  PointConfig a = config_from_json(read_json(fa)), b = config_from_json(read_json(fb));
  Decision d = congruent(a, b, o.tol);
  emit(out, to_json(d));
  return d.exit_code();
}

int conjugate_pair_cmd(const std::string& f1, const std::string& f2, const Options& o, std::ostream& out) {
  auto [a, b] = pair_from_json(read_json(f1));
  auto [a2, b2] = pair_from_json(read_json(f2));
  if (a.n() != a2.n()) throw MalformedInput("pairs live in different dimensions");
  // the witness is verified at 100 tol (1e-7 at the default)
  Decision d = pair_conjugate(a, b, a2, b2, 100 * o.tol);
  emit(out, to_json(d));
  return d.exit_code();
}

Json sample_one(const std::string& kind, int n, int m, int i, std::uint64_t seed) {
  auto sp = HermitianSpace::corner(n);
  Rng rng(seed);
  auto regular = [&](Classification k) {
    auto a = random_semisimple(sp, random_regular_spec(k, n, rng), rng());
    Json j = to_json(a.matrix());
    j["expect"] = to_string(k);
    return j;
  };
  auto random_kind = [&] { return rng() % 2 ? Classification::Hyperbolic : Classification::Elliptic; };
  if (kind == "hyperbolic") return regular(Classification::Hyperbolic);
  if (kind == "elliptic") return regular(Classification::Elliptic);
  if (kind == "isometry") return to_json(random_isometry(sp, rng));
  if (kind == "config") return to_json(gram_of(sp, random_config_lifts(sp, m, i, rng)));
  if (kind == "pair") {
    Json a = regular(random_kind());
    Json b = regular(random_kind());
    return Json{{"A", a}, {"B", b}};
  }
  throw MalformedInput("unknown sample kind " + kind);
}

int sample_cmd(const std::string& kind, int count, int m, int i, const Options& o, std::ostream& out) {
  if (o.signature < 1) throw MalformedInput("--signature must be at least 1");
  if (kind == "config" && (m < 3 || i == 1 || i == 2 || i < 0 || i > m))
    throw MalformedInput("config sampling needs m >= 3 and i in {0, 3, ..., m}");
  Json items = Json::array();
  for (int k = 0; k < count; ++k) {
    std::uint64_t s = o.seed * 1000003ULL + static_cast<std::uint64_t>(k);
    items.push_back(Json{{"seed", s}, {"object", sample_one(kind, o.signature, m, i, s)}});
  }
  emit(out, Json{{"kind", kind}, {"n", o.signature}, {"seed", o.seed}, {"items", items}});
  return 0;
}

std::vector<int> parse_suite(const std::string& suite) {
  std::vector<int> ids;
  if (suite == "all") {
    for (int k = 1; k <= kCriteria; ++k) ids.push_back(k);
    return ids;
  }
  std::stringstream ss(suite);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      int id = std::stoi(tok, &used);
      if (used != tok.size() || id < 1 || id > kCriteria) throw std::invalid_argument(tok);
      ids.push_back(id);
    } catch (const std::exception&) {
      throw MalformedInput("--suite expects all or a comma list of 1.." + std::to_string(kCriteria));
    }
  }
  return ids;
}

int verify_cmd(const std::string& suite, const Options& o, std::ostream& out) {
  auto results = run_acceptance(parse_suite(suite), o.seed);
  bool all = true;
  if (o.format == "json") {
    Json arr = Json::array();
    for (const auto& r : results) {
      Json checks = Json::array();
      for (const auto& c : r.checks)
        checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"total", c.total}, {"detail", c.detail}});
      arr.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass()}, {"checks", checks}});
      all = all && r.pass();
    }
    emit(out, arr);
  } else {
    for (const auto& r : results) {
      out << r.line() << '\n';
      all = all && r.pass();
    }
  }
  return all ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quaternionic hyperbolic configurations and isometries"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--tol", o.tol, "base tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--signature", o.signature, "n in Sp(n,1) for sampling");

  std::string f1, f2, kind, suite = "all";
  int count = 1, m = 4, i = 4;
  auto* classify = app.add_subcommand("classify", "classify an isometry");
  classify->add_option("matrix", f1)->required();
  auto* invariants = app.add_subcommand("invariants", "invariant profile of a configuration");
  invariants->add_option("config", f1)->required();
  auto* congr = app.add_subcommand("congruent", "decide congruence of two configurations");
  congr->add_option("first", f1)->required();
  congr->add_option("second", f2)->required();
  auto* conj = app.add_subcommand("conjugate-pair", "decide conjugacy of two pairs");
  conj->add_option("first", f1)->required();
  conj->add_option("second", f2)->required();
  auto* sample = app.add_subcommand("sample", "generate seeded random objects");
  sample->add_option("kind", kind, "hyperbolic|elliptic|isometry|config|pair")->required();
  sample->add_option("--count", count)->check(CLI::NonNegativeNumber);
  sample->add_option("--m", m);
  sample->add_option("--i", i);
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--suite", suite);

  // options are accepted before or after the verb
  for (auto* sub : {classify, invariants, congr, conj, sample, verify}) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify) return classify_cmd(f1, out);
    if (*invariants) return invariants_cmd(f1, o, out);
    if (*congr) return congruent_cmd(f1, f2, o, out);
    if (*conj) return conjugate_pair_cmd(f1, f2, o, out);
    if (*sample) return sample_cmd(kind, count, m, i, o, out);
    if (*verify) {
      if (o.format == "csv" || !app.count("--format")) o.format = "text";
      return verify_cmd(suite, o, out);
    }
  } catch (const MalformedInput& e) {
    err << "malformed input: " << e.what() << '\n';
    return 2;
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violated: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedIsometry& e) {
    err << "unsupported: " << e.what() << '\n';
    return 2;
  } catch (const DegenerateConfiguration& e) {
    err << "degenerate configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "malformed input: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace qhyp
