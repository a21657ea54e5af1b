// Command-line harness: sample points, run twist flows, decide orbit
// equality, and run the randomized verification suites.
//
// Exit codes: 0 success, 1 verification failure (or inconclusive orbit
// verdict), 2 usage or input errors. GOLDMAN_TOL overrides the default
// tolerance wherever --tol is not given explicitly.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "goldman/serialize.hpp"
#include "goldman/verify.hpp"

namespace {

using namespace goldman;

std::optional<double> env_tol() {
  const char* s = std::getenv("GOLDMAN_TOL");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !(v > 0))
    throw CLI::ValidationError("GOLDMAN_TOL", "not a positive number");
  return v;
}

std::vector<SurfaceCase> parse_cases(const std::string& text) {
  std::vector<SurfaceCase> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::optional<SurfaceCase> kase = case_from_name(item);
    if (!kase) throw CLI::ValidationError("--case", "unknown case " + item);
    out.push_back(*kase);
  }
  if (out.empty()) throw CLI::ValidationError("--case", "empty case list");
  return out;
}

// "2", "1,3", or "1..3"
std::vector<int> parse_k_list(const std::string& text) {
  std::vector<int> out;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    int lo = std::stoi(text.substr(0, dots));
    int hi = std::stoi(text.substr(dots + 2));
    for (int k = lo; k <= hi; ++k) out.push_back(k);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(std::stoi(item));
  }
  if (out.empty()) throw CLI::ValidationError("--k", "empty k list");
  return out;
}

std::vector<double> parse_t_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  if (out.empty()) throw CLI::ValidationError("--t", "empty time list");
  return out;
}

Su2d parse_group_element(const std::string& text) {
  std::vector<double> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) c.push_back(std::stod(item));
  if (c.size() != 4)
    throw InvalidElement("group element must be four comma-separated numbers");
  return Su2d(c[0], c[1], c[2], c[3]);
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_sample(const SurfaceSpec& spec, const std::string& variety,
               const std::string& x_text, std::uint64_t seed, int count,
               std::optional<double> tol_flag, const std::string& out_path) {
  double tolerance = tol_flag.value_or(env_tol().value_or(tol::sampler));
  std::optional<Su2d> x;
  if (variety == "Nx") {
    if (x_text.empty())
      throw CLI::ValidationError("--x", "required when --variety Nx");
    x = parse_group_element(x_text);
  } else if (!x_text.empty()) {
    throw CLI::ValidationError("--x", "only meaningful with --variety Nx");
  }

  Output out(out_path);
  for (int i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, std::uint64_t(i)));
    PointRecord rec;
    rec.spec = spec;
    rec.variety = variety;
    rec.x = x;
    rec.seed = seed;
    rec.index = i;
    if (variety == "R")
      rec.point = sample_base<double>(spec, rng);
    else if (variety == "Rtilde")
      rec.point = sample_cover<double>(spec, rng);
    else
      rec.point = sample_fixed_stratum<double>(spec, *x, rng);
    double res = record_residual(rec);
    if (!(res < tolerance)) {
      std::cerr << "sampled point misses the variety: residual " << res
                << " at index " << i << "\n";
      return 1;
    }
    out.stream() << to_json(rec).dump() << "\n";
  }
  return 0;
}

int cmd_flow(const std::string& point_path, const std::string& flow,
             const std::string& t_text, std::optional<double> tol_flag,
             const std::string& out_path) {
  double tolerance = tol_flag.value_or(env_tol().value_or(tol::membership));
  std::vector<double> t_values = parse_t_list(t_text);
  PointRecord rec = load_point_record(point_path);
  const bool base = record_is_base(rec);
  if (record_residual(rec) > tolerance)
    throw NotInVariety("input point misses the variety, residual " +
                       std::to_string(record_residual(rec)));
  if ((flow == "xi") != base)
    throw CLI::ValidationError(
        "--flow", flow == "xi" ? "xi flows points of R; this file holds a "
                                 "doubled point"
                               : "this flow needs a doubled point; the file "
                                 "holds a point of R");

  json points = json::array();
  json residuals = json::array();
  for (double t : t_values) {
    if (base) {
      RepPointd p = base_twist_flow(std::get<RepPointd>(rec.point), t);
      points.push_back(to_json(p));
      residuals.push_back(relation_residual(rec.spec, p));
    } else {
      const DoubleRepPointd& q = std::get<DoubleRepPointd>(rec.point);
      DoubleRepPointd qf;
      if (flow == "phi")
        qf = cover_twist_first(q, t);
      else if (flow == "psi")
        qf = cover_twist_second(q, t);
      else
        qf = composite_flow(q, t);
      points.push_back(to_json(qf));
      residuals.push_back(cover_relation_residual_max(rec.spec, qf));
    }
  }

  json traj{{"spec", to_json(rec.spec)},
            {"flow", flow},
            {"t_values", t_values},
            {"points", points},
            {"residuals", residuals}};
  Output out(out_path);
  out.stream() << traj.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& case_text,
               const std::string& k_text, int trials, std::uint64_t seed,
               std::optional<double> tol_flag, bool negative_control,
               const std::string& out_path) {
  SuiteOptions opts;
  opts.seed = seed;
  opts.trials = trials;
  opts.negative_control = negative_control;
  if (tol_flag)
    opts.tol_override = tol_flag;
  else if (auto env = env_tol())
    opts.tol_override = env;

  std::vector<Suite> suites;
  if (suite == "all")
    suites = {Suite::Su2, Suite::Variety, Suite::Flows, Suite::Theorem};
  else if (suite == "su2")
    suites = {Suite::Su2};
  else if (suite == "variety")
    suites = {Suite::Variety};
  else if (suite == "flows")
    suites = {Suite::Flows};
  else if (suite == "theorem")
    suites = {Suite::Theorem};
  else
    throw CLI::ValidationError("--suite", "unknown suite " + suite);

  std::vector<SurfaceSpec> specs;
  for (SurfaceCase kase : parse_cases(case_text))
    for (int k : parse_k_list(k_text)) {
      SurfaceSpec spec{kase, k};
      validate_spec(spec, false);
      specs.push_back(spec);
    }

  json reports = json::array();
  bool ok = true;
  for (Suite s : suites) {
    if (s == Suite::Su2) {
      VerificationReport r = run_su2_suite(opts);
      ok = ok && r.pass();
      reports.push_back(to_json(r));
      continue;
    }
    for (const SurfaceSpec& spec : specs) {
      VerificationReport r = run_suite(s, spec, opts);
      ok = ok && r.pass();
      reports.push_back(to_json(r));
    }
  }

  Output out(out_path);
  out.stream() << reports.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_orbit_eq(const std::string& a_path, const std::string& b_path,
                 std::optional<double> tol_flag, const std::string& out_path) {
  PointRecord ra = load_point_record(a_path);
  PointRecord rb = load_point_record(b_path);
  if (!(ra.spec == rb.spec))
    throw SpecMismatch("the two points live on different surfaces");
  if (record_is_base(ra) != record_is_base(rb))
    throw SpecMismatch("one point is doubled and the other is not");

  OrbitOptions opt;
  if (auto t = tol_flag ? tol_flag : env_tol()) opt.witness_tol = *t;

  json j;
  OrbitVerdict verdict;
  if (record_is_base(ra)) {
    OrbitResult<double> r = same_orbit(std::get<RepPointd>(ra.point),
                                       std::get<RepPointd>(rb.point), ra.spec,
                                       opt);
    verdict = r.verdict;
    j = json{{"verdict", verdict_name(r.verdict)},
             {"kernel_dim", r.kernel_dim}};
    if (r.verdict == OrbitVerdict::Equal) {
      j["witness"] = json{{"g", to_json(*r.witness_g)}};
      j["witness_defect"] = r.witness_defect;
    }
  } else {
    OrbitResult<double> r =
        same_orbit_pair(std::get<DoubleRepPointd>(ra.point),
                        std::get<DoubleRepPointd>(rb.point), ra.spec, opt);
    verdict = r.verdict;
    j = json{{"verdict", verdict_name(r.verdict)},
             {"kernel_dim", r.kernel_dim}};
    if (r.verdict == OrbitVerdict::Equal) {
      j["witness"] = json{{"g", to_json(*r.witness_g)},
                          {"h", to_json(*r.witness_h)}};
      j["witness_defect"] = r.witness_defect;
    }
  }
  Output out(out_path);
  out.stream() << j.dump(2) << "\n";
  return verdict == OrbitVerdict::Inconclusive ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Twist flows on SU(2) representation varieties of nonorientable "
      "surfaces and their orientation double covers"};
  app.require_subcommand(1);

  std::string case_text = "i", k_text = "1", variety = "R", x_text;
  std::string verify_case_text = "i,ii,iii", verify_k_text = "1..3";
  std::uint64_t seed = 0;
  int count = 1, trials = -1;
  bool allow_k0 = false, negative_control = false;
  double tol_value = 0;
  std::string out_path, point_path, flow = "composite", t_text = "0";
  std::string suite = "all", a_path, b_path;

  CLI::App* sample = app.add_subcommand("sample", "Draw points of a variety");
  sample->add_option("--case", case_text, "surface case: i, ii, or iii");
  sample->add_option("--k", k_text, "number of handle generators");
  sample
      ->add_option("--variety", variety,
                   "R (base), Rtilde (doubled), or Nx (deck-fixed stratum)")
      ->check(CLI::IsMember({"R", "Rtilde", "Nx"}));
  sample->add_option("--x", x_text,
                     "twisting element \"w,x,y,z\" (Nx only)");
  sample->add_option("--seed", seed, "RNG seed")->required();
  sample->add_option("--count", count, "number of points")
      ->check(CLI::NonNegativeNumber);
  sample->add_flag("--allow-k0", allow_k0, "accept k = 0");
  CLI::Option* sample_tol =
      sample->add_option("--tol", tol_value, "membership tolerance");
  sample->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* flow_cmd =
      app.add_subcommand("flow", "Run a twist flow over a list of times");
  flow_cmd->add_option("--point", point_path, "point file (JSON record)")
      ->required();
  flow_cmd
      ->add_option("--flow", flow,
                   "xi (base), phi (first cylinder), psi (second cylinder), "
                   "or composite")
      ->check(CLI::IsMember({"xi", "phi", "psi", "composite"}));
  flow_cmd->add_option("--t", t_text, "comma-separated times");
  CLI::Option* flow_tol =
      flow_cmd->add_option("--tol", tol_value, "membership tolerance");
  flow_cmd->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* verify =
      app.add_subcommand("verify", "Run randomized verification suites");
  verify->add_option("--suite", suite, "su2, variety, flows, theorem, or all")
      ->check(CLI::IsMember({"su2", "variety", "flows", "theorem", "all"}));
  verify->add_option("--case", verify_case_text, "comma list of surface cases");
  verify->add_option("--k", verify_k_text, "k list: \"2\", \"1,3\", or \"1..3\"");
  verify->add_option("--trials", trials, "trials per suite and spec");
  verify->add_option("--seed", seed, "base seed (trial i uses a derived seed)");
  CLI::Option* verify_tol =
      verify->add_option("--tol", tol_value, "override the suite tolerance");
  verify->add_flag("--negative-control", negative_control,
                   "run only the built-in corrupted fixture (must fail)");
  verify->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* orbit =
      app.add_subcommand("orbit-eq", "Decide conjugation-orbit equality");
  orbit->add_option("--a", a_path, "first point file")->required();
  orbit->add_option("--b", b_path, "second point file")->required();
  CLI::Option* orbit_tol =
      orbit->add_option("--tol", tol_value, "witness acceptance tolerance");
  orbit->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sample->parsed()) {
      std::optional<SurfaceCase> kase = case_from_name(case_text);
      if (!kase)
        throw CLI::ValidationError("--case", "unknown case " + case_text);
      SurfaceSpec spec{*kase, std::stoi(k_text)};
      validate_spec(spec, allow_k0);
      std::optional<double> tol_flag;
      if (*sample_tol) tol_flag = tol_value;
      return cmd_sample(spec, variety, x_text, seed, count, tol_flag,
                        out_path);
    }
    if (flow_cmd->parsed()) {
      std::optional<double> tol_flag;
      if (*flow_tol) tol_flag = tol_value;
      return cmd_flow(point_path, flow, t_text, tol_flag, out_path);
    }
    if (verify->parsed()) {
      std::optional<double> tol_flag;
      if (*verify_tol) tol_flag = tol_value;
      return cmd_verify(suite, verify_case_text, verify_k_text, trials, seed,
                        tol_flag, negative_control, out_path);
    }
    if (orbit->parsed()) {
      std::optional<double> tol_flag;
      if (*orbit_tol) tol_flag = tol_value;
      return cmd_orbit_eq(a_path, b_path, tol_flag, out_path);
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const DegenerateElement& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
