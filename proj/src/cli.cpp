#include "triwalk/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "triwalk/errors.hpp"
#include "triwalk/interrobang.hpp"
#include "triwalk/limit_cdf.hpp"
#include "triwalk/qmark.hpp"
#include "triwalk/triangle.hpp"
#include "triwalk/walk.hpp"

namespace triwalk {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string double_string(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(std::min(digits, 17)) << v;
  return os.str();
}

json rational_json(const Rational& r, int digits) {
  return json{{"num", r.num().get_str()},
              {"den", r.den().get_str()},
              {"decimal", decimal_string(r, digits)}};
}

json exact_json(const ExactNumber& x, int digits) {
  if (ex_is_rational(x)) {
    json j = rational_json(std::get<Rational>(x), digits);
    j["kind"] = "rational";
    return j;
  }
  const QuadraticSurd& s = std::get<QuadraticSurd>(x);
  return json{{"kind", "surd"},
              {"a", s.a().get_str()},
              {"b", s.b().get_str()},
              {"c", s.c().get_str()},
              {"d", s.d().get_str()},
              {"text", ex_to_string(x)},
              {"decimal", double_string(ex_to_double(x), digits)}};
}

Rational parse_rational(const std::string& text) {
  const ExactNumber x = parse_exact(text);
  if (!ex_is_rational(x)) {
    throw ValidationError("expected a rational number, got \"" + text + "\"");
  }
  return std::get<Rational>(x);
}

/// Writes {"manifest": ..., "result": ...} with an FNV-1a checksum of the
/// compact result payload.
void emit(std::ostream& out, const std::string& command,
          const std::optional<std::string>& config,
          const std::optional<std::uint64_t>& seed, const json& result) {
  std::ostringstream checksum;
  checksum << "fnv1a64:" << std::hex << std::setfill('0') << std::setw(16)
           << fnv1a64(result.dump());
  json manifest{{"command", command},
                {"version", kVersion},
                {"checksum", checksum.str()}};
  manifest["config"] = config ? json(*config) : json(nullptr);
  manifest["seed"] = seed ? json(*seed) : json(nullptr);
  out << json{{"manifest", manifest}, {"result", result}}.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Configuration selection: a builtin by name, or three --wall specs + --base.

struct ConfigChoice {
  std::string name = "pgl2";
  std::vector<std::string> walls;
  std::string base;
};

HLine parse_wall(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ValidationError("wall spec needs kind:params, got \"" + spec + "\"");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string params = spec.substr(colon + 1);
  try {
    if (kind == "vertical" || kind == "v") {
      return HLine::vertical(std::stod(params));
    }
    if (kind == "semicircle" || kind == "s") {
      const auto comma = params.find(',');
      if (comma == std::string::npos) {
        throw ValidationError("semicircle needs center,radius: \"" + spec +
                              "\"");
      }
      return HLine::semicircle(std::stod(params.substr(0, comma)),
                               std::stod(params.substr(comma + 1)));
    }
  } catch (const std::invalid_argument&) {
    throw ValidationError("cannot parse wall numbers in \"" + spec + "\"");
  } catch (const std::out_of_range&) {
    throw ValidationError("wall number out of range in \"" + spec + "\"");
  }
  throw ValidationError("unknown wall kind \"" + kind +
                        "\" (use vertical:x or semicircle:c,r)");
}

HPoint parse_point(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos) {
    throw ValidationError("base point needs x,y, got \"" + spec + "\"");
  }
  try {
    return {std::stod(spec.substr(0, comma)), std::stod(spec.substr(comma + 1))};
  } catch (const std::invalid_argument&) {
    throw ValidationError("cannot parse base point \"" + spec + "\"");
  } catch (const std::out_of_range&) {
    throw ValidationError("base point out of range: \"" + spec + "\"");
  }
}

void add_config_options(CLI::App* sub, ConfigChoice& choice) {
  sub->add_option("--config", choice.name,
                  "builtin configuration: pgl2, right-angle or ideal")
      ->default_val("pgl2");
  sub->add_option("--wall", choice.walls,
                  "custom wall, three of: vertical:x or semicircle:c,r");
  sub->add_option("--base", choice.base, "custom base point x,y");
}

std::pair<TriangleConfig, std::string> resolve_config(
    const ConfigChoice& choice) {
  if (!choice.walls.empty() || !choice.base.empty()) {
    if (choice.walls.size() != 3 || choice.base.empty()) {
      throw ValidationError(
          "a custom configuration needs exactly three --wall options and a "
          "--base point");
    }
    const std::array<HLine, 3> lines = {parse_wall(choice.walls[0]),
                                        parse_wall(choice.walls[1]),
                                        parse_wall(choice.walls[2])};
    return {make_config(lines, parse_point(choice.base)), "custom"};
  }
  if (choice.name == "pgl2") return {builtin_pgl2(), "pgl2"};
  if (choice.name == "right-angle") return {builtin_right_angle(), "right-angle"};
  if (choice.name == "ideal") return {builtin_ideal(), "ideal"};
  throw ValidationError("unknown configuration \"" + choice.name +
                        "\" (pgl2, right-angle, ideal, or --wall/--base)");
}

json wall_json(const HLine& line) {
  if (line.kind == HLine::Kind::Vertical) {
    return json{{"kind", "vertical"}, {"x0", line.x0}};
  }
  return json{{"kind", "semicircle"}, {"center", line.x0},
              {"radius", line.radius}};
}

json coxeter_json(const CoxeterMatrix& m) {
  auto entry = [](int v) {
    return v == CoxeterMatrix::kInfinity ? json(nullptr) : json(v);
  };
  return json{{"m12", entry(m.m12)}, {"m13", entry(m.m13)},
              {"m23", entry(m.m23)}};
}

/// Shared singular-function evaluation with a per-command cache.
Rational interro_cached(const ExactNumber& x, InterroContext& ctx) {
  if (ex_is_rational(x)) return ctx.eval(std::get<Rational>(x));
  return interro_surd(std::get<QuadraticSurd>(x));
}

struct Grid {
  Rational lo;
  Rational hi;
  Rational step;
};

Grid parse_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw ValidationError("grid needs lo:hi:step, got \"" + spec + "\"");
  }
  Grid g{parse_rational(spec.substr(0, c1)),
         parse_rational(spec.substr(c1 + 1, c2 - c1 - 1)),
         parse_rational(spec.substr(c2 + 1))};
  if (g.step.sign() <= 0 || g.hi < g.lo) {
    throw ValidationError("grid must have lo <= hi and step > 0");
  }
  return g;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open output file \"" + path + "\"");
  f << std::setprecision(17);
  return f;
}

}  // namespace

namespace {

/// mpz_class's string constructor rejects an explicit '+' sign.
Integer parse_integer(const std::string& s) {
  return s.front() == '+' ? Integer(s.substr(1)) : Integer(s);
}

}  // namespace

ExactNumber parse_exact(const std::string& text) {
  static const std::regex rational_re(R"(^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$)");
  static const std::regex full_surd_re(
      R"(^\s*\(\s*([+-]?\d+)\s*([+-])\s*(?:(\d+)\s*\*\s*)?sqrt\(\s*(\d+)\s*\)\s*\)\s*(?:/\s*([+-]?\d+))?\s*$)");
  static const std::regex bare_surd_re(
      R"(^\s*([+-]?)\s*(?:(\d+)\s*\*\s*)?sqrt\(\s*(\d+)\s*\)\s*(?:/\s*([+-]?\d+))?\s*$)");

  std::smatch m;
  if (std::regex_match(text, m, rational_re)) {
    const Integer num = parse_integer(m[1].str());
    const Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
    return Rational(num, den);
  }
  if (std::regex_match(text, m, full_surd_re)) {
    const Integer a = parse_integer(m[1].str());
    Integer b = m[3].matched ? Integer(m[3].str()) : Integer(1);
    if (m[2].str() == "-") b = -b;
    const Integer d(m[4].str());
    const Integer c = m[5].matched ? parse_integer(m[5].str()) : Integer(1);
    return QuadraticSurd(a, b, c, d);
  }
  if (std::regex_match(text, m, bare_surd_re)) {
    Integer b = m[2].matched ? Integer(m[2].str()) : Integer(1);
    if (m[1].str() == "-") b = -b;
    const Integer d(m[3].str());
    const Integer c = m[4].matched ? parse_integer(m[4].str()) : Integer(1);
    return QuadraticSurd(0, b, c, d);
  }
  throw ValidationError(
      "cannot parse \"" + text +
      "\" as an exact number (use p/q, sqrt(d), b*sqrt(d)/c, or "
      "(a+b*sqrt(d))/c)");
}

std::string decimal_string(const Rational& r, int digits) {
  if (digits < 0) throw std::domain_error("decimal_string: digits < 0");
  const bool negative = r.sign() < 0;
  Integer num = abs(r.num());
  const Integer den = r.den();
  std::string s = negative ? "-" : "";
  s += Integer(num / den).get_str();
  if (digits > 0) {
    Integer rem = num % den;
    s += '.';
    for (int i = 0; i < digits; ++i) {
      rem *= 10;
      s += Integer(rem / den).get_str();
      rem %= den;
    }
  }
  return s;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "exact singular-function arithmetic and hyperbolic reflection walks"};
  app.require_subcommand(1);
  int exit_override = 0;

  // -- validate ------------------------------------------------------------
  auto* validate = app.add_subcommand(
      "validate", "check a configuration and report its derived data");
  auto validate_cfg = std::make_shared<ConfigChoice>();
  add_config_options(validate, *validate_cfg);
  validate->callback([&out, validate_cfg]() {
    const auto [cfg, label] = resolve_config(*validate_cfg);
    json pairs = json::array();
    const std::pair<int, int> index_pairs[3] = {{1, 2}, {1, 3}, {2, 3}};
    for (const auto& [i, j] : index_pairs) {
      const PairClassification pc =
          classify_pair(cfg.line(i), cfg.line(j), cfg.base);
      json p{{"walls", std::to_string(i) + "," + std::to_string(j)}};
      switch (pc.kind) {
        case PairClassification::Kind::Crossing:
          p["kind"] = "crossing";
          p["m"] = pc.m;
          p["angle"] = pc.angle;
          break;
        case PairClassification::Kind::Asymptotic:
          p["kind"] = "asymptotic";
          p["m"] = nullptr;
          break;
        case PairClassification::Kind::Disjoint:
          p["kind"] = "disjoint";
          p["m"] = nullptr;
          break;
      }
      pairs.push_back(std::move(p));
    }
    const DiskConfig disk = disk_normalize(cfg);
    json disk_walls = json::array();
    for (const DiskCircle& c : disk.walls) {
      disk_walls.push_back(json{{"center", {c.center.real(), c.center.imag()}},
                                {"radius", c.radius}});
    }
    const json result{
        {"admissible", true},
        {"walls",
         {wall_json(cfg.line(1)), wall_json(cfg.line(2)), wall_json(cfg.line(3))}},
        {"base", {cfg.base.real(), cfg.base.imag()}},
        {"coxeter", coxeter_json(cfg.coxeter)},
        {"pairs", pairs},
        {"disk_walls", disk_walls},
        {"contraction", contraction_constant(disk)}};
    emit(out, "validate", label, std::nullopt, result);
  });

  // -- simulate ------------------------------------------------------------
  auto* simulate = app.add_subcommand(
      "simulate", "sample limit points of independent reduced walks");
  auto sim_cfg = std::make_shared<ConfigChoice>();
  add_config_options(simulate, *sim_cfg);
  auto sim_batch = std::make_shared<BatchParams>();
  auto sim_out = std::make_shared<std::string>();
  simulate->add_option("--walks", sim_batch->walks, "number of walks")
      ->default_val(1000);
  simulate->add_option("--seed", sim_batch->seed, "random seed")
      ->default_val(1);
  simulate->add_option("--target", sim_batch->target_width,
                       "bracket width to certify")
      ->default_val(1e-6);
  simulate->add_option("--max-steps", sim_batch->max_steps,
                       "crossing budget per walk")
      ->default_val(10000);
  simulate->add_option("--threads", sim_batch->threads,
                       "worker threads (0 = TRIWALK_THREADS or hardware)")
      ->default_val(0);
  simulate->add_option("--out", *sim_out, "write the sorted samples as CSV");
  simulate->callback([&out, sim_cfg, sim_batch, sim_out]() {
    const auto [cfg, label] = resolve_config(*sim_cfg);
    const BatchResult br = batch_sample(cfg, *sim_batch);
    json quantiles;
    for (const double q : {0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99}) {
      const auto idx = static_cast<std::size_t>(
          q * static_cast<double>(br.samples.size() - 1));
      quantiles[double_string(q, 3)] = br.samples[idx];
    }
    double mean = 0.0;
    for (const double z : br.samples) mean += z;
    mean /= static_cast<double>(br.samples.size());
    json result{{"walks", br.samples.size()},
                {"target_width", sim_batch->target_width},
                {"max_steps", sim_batch->max_steps},
                {"max_steps_used", br.max_steps_used},
                {"unbounded_count", br.unbounded_count},
                {"min", br.samples.front()},
                {"max", br.samples.back()},
                {"mean", mean},
                {"quantiles", quantiles},
                {"samples_csv", nullptr}};
    if (!sim_out->empty()) {
      std::ofstream f = open_csv(*sim_out);
      f << "zeta\n";
      for (const double z : br.samples) f << z << "\n";
      result["samples_csv"] = *sim_out;
    }
    emit(out, "simulate", label, sim_batch->seed, result);
  });

  // -- cdf -----------------------------------------------------------------
  auto* cdf = app.add_subcommand(
      "cdf", "exact limiting distribution of the arithmetic configuration");
  auto cdf_at = std::make_shared<std::vector<std::string>>();
  auto cdf_digits = std::make_shared<int>(12);
  cdf->add_option("--at", *cdf_at, "evaluation point (exact)")->required();
  cdf->add_option("--decimal-digits", *cdf_digits, "decimal rendering length")
      ->default_val(12);
  cdf->callback([&out, cdf_at, cdf_digits]() {
    InterroContext ctx;
    json points = json::array();
    for (const std::string& text : *cdf_at) {
      const ExactNumber x = parse_exact(text);
      const CdfValue v = limit_cdf(x, &ctx);
      points.push_back(json{{"x", exact_json(x, *cdf_digits)},
                            {"value", rational_json(v.value, *cdf_digits)},
                            {"branch", v.branch}});
    }
    emit(out, "cdf", "pgl2", std::nullopt, json{{"points", points}});
  });

  // -- interro ---------------------------------------------------------------
  auto* interro_cmd = app.add_subcommand(
      "interro", "exact values of the quartic-base singular function");
  auto interro_at = std::make_shared<std::vector<std::string>>();
  auto interro_digits = std::make_shared<int>(12);
  interro_cmd->add_option("--at", *interro_at, "argument in [0, 1] (exact)")
      ->required();
  interro_cmd
      ->add_option("--decimal-digits", *interro_digits,
                   "decimal rendering length")
      ->default_val(12);
  interro_cmd->callback([&out, interro_at, interro_digits]() {
    InterroContext ctx;
    json points = json::array();
    for (const std::string& text : *interro_at) {
      const ExactNumber x = parse_exact(text);
      points.push_back(
          json{{"x", exact_json(x, *interro_digits)},
               {"value", rational_json(interro_cached(x, ctx), *interro_digits)}});
    }
    emit(out, "interro", std::nullopt, std::nullopt, json{{"points", points}});
  });

  // -- qmark -----------------------------------------------------------------
  auto* qmark_cmd = app.add_subcommand(
      "qmark", "exact values of the binary-base singular function");
  auto qmark_at = std::make_shared<std::vector<std::string>>();
  auto qmark_digits = std::make_shared<int>(12);
  qmark_cmd->add_option("--at", *qmark_at, "argument (exact)")->required();
  qmark_cmd
      ->add_option("--decimal-digits", *qmark_digits,
                   "decimal rendering length")
      ->default_val(12);
  qmark_cmd->callback([&out, qmark_at, qmark_digits]() {
    json points = json::array();
    for (const std::string& text : *qmark_at) {
      const ExactNumber x = parse_exact(text);
      const QMarkValue v = qmark(x);
      json value = rational_json(v.value, *qmark_digits);
      value["is_dyadic"] = v.is_dyadic;
      points.push_back(json{{"x", exact_json(x, *qmark_digits)},
                            {"value", std::move(value)}});
    }
    emit(out, "qmark", std::nullopt, std::nullopt, json{{"points", points}});
  });

  // -- invert ----------------------------------------------------------------
  auto* invert = app.add_subcommand(
      "invert", "invert either singular function at a rational value");
  auto inv_qmark = std::make_shared<std::string>();
  auto inv_interro = std::make_shared<std::string>();
  auto inv_eps = std::make_shared<std::string>("1/1000000000");
  auto inv_digits = std::make_shared<int>(12);
  invert->add_option("--qmark", *inv_qmark,
                     "value of the binary-base function to invert exactly");
  invert->add_option("--interro", *inv_interro,
                     "value of the quartic-base function to bracket");
  invert->add_option("--eps", *inv_eps, "bracket width for --interro")
      ->default_val("1/1000000000");
  invert->add_option("--decimal-digits", *inv_digits,
                     "decimal rendering length")
      ->default_val(12);
  invert->callback([&out, inv_qmark, inv_interro, inv_eps, inv_digits]() {
    const bool has_q = !inv_qmark->empty();
    const bool has_i = !inv_interro->empty();
    if (has_q == has_i) {
      throw ValidationError("pass exactly one of --qmark or --interro");
    }
    if (has_q) {
      const Rational y = parse_rational(*inv_qmark);
      const ExactNumber x = qmark_inverse(y);
      emit(out, "invert", std::nullopt, std::nullopt,
           json{{"function", "qmark"},
                {"y", rational_json(y, *inv_digits)},
                {"x", exact_json(x, *inv_digits)}});
      return;
    }
    const Rational y = parse_rational(*inv_interro);
    const Rational eps = parse_rational(*inv_eps);
    const auto [lo, hi] = interro_inverse(y, eps);
    emit(out, "invert", std::nullopt, std::nullopt,
         json{{"function", "interro"},
              {"y", rational_json(y, *inv_digits)},
              {"eps", rational_json(eps, *inv_digits)},
              {"lower", rational_json(lo, *inv_digits)},
              {"upper", rational_json(hi, *inv_digits)},
              {"exact", lo == hi}});
  });

  // -- fraction-search ---------------------------------------------------------
  auto* fsearch = app.add_subcommand(
      "fraction-search",
      "search for a bounded-denominator rational preimage of the "
      "quartic-base function");
  auto fs_value = std::make_shared<std::string>();
  auto fs_max_den = std::make_shared<std::string>();
  auto fs_budget = std::make_shared<std::size_t>(std::size_t(1) << 22);
  auto fs_digits = std::make_shared<int>(12);
  fsearch->add_option("--value", *fs_value, "target value (rational)")
      ->required();
  fsearch->add_option("--max-den", *fs_max_den, "denominator bound")
      ->required();
  fsearch->add_option("--budget", *fs_budget, "probe budget")
      ->default_val(std::size_t(1) << 22);
  fsearch->add_option("--decimal-digits", *fs_digits,
                      "decimal rendering length")
      ->default_val(12);
  fsearch->callback([&out, fs_value, fs_max_den, fs_budget, fs_digits]() {
    const Rational y = parse_rational(*fs_value);
    const Rational bound = parse_rational(*fs_max_den);
    if (!bound.is_integer() || bound.sign() <= 0) {
      throw ValidationError("--max-den must be a positive integer");
    }
    const std::optional<Rational> found =
        fraction_search(y, bound.num(), nullptr, *fs_budget);
    json result{{"y", rational_json(y, *fs_digits)},
                {"max_den", bound.num().get_str()},
                {"budget", *fs_budget},
                {"found", found.has_value()}};
    result["value"] =
        found ? rational_json(*found, *fs_digits) : json(nullptr);
    emit(out, "fraction-search", std::nullopt, std::nullopt, result);
  });

  // -- stationarity ------------------------------------------------------------
  auto* stationarity = app.add_subcommand(
      "stationarity",
      "exact fold-stationarity certificate of the closed-form law");
  auto st_at = std::make_shared<std::vector<std::string>>();
  auto st_grid = std::make_shared<std::string>();
  auto st_digits = std::make_shared<int>(12);
  stationarity->add_option("--at", *st_at, "check point (exact)");
  stationarity->add_option("--grid", *st_grid, "check grid lo:hi:step");
  stationarity
      ->add_option("--decimal-digits", *st_digits, "decimal rendering length")
      ->default_val(12);
  stationarity->callback([&out, &exit_override, st_at, st_grid, st_digits]() {
    std::vector<ExactNumber> xs;
    for (const std::string& text : *st_at) xs.push_back(parse_exact(text));
    if (!st_grid->empty()) {
      const Grid g = parse_grid(*st_grid);
      for (Rational x = g.lo; x <= g.hi; x += g.step) xs.emplace_back(x);
    }
    if (xs.empty()) {
      const Grid g = parse_grid("-3:3:1/4");
      for (Rational x = g.lo; x <= g.hi; x += g.step) xs.emplace_back(x);
    }
    InterroContext ctx;
    json points = json::array();
    bool all_hold = true;
    for (const ExactNumber& x : xs) {
      const StationarityCheck sc = stationarity_check(x, &ctx);
      all_hold = all_hold && sc.holds;
      points.push_back(json{{"x", exact_json(x, *st_digits)},
                            {"lhs", rational_json(sc.lhs, *st_digits)},
                            {"rhs", rational_json(sc.rhs, *st_digits)},
                            {"terms",
                             {rational_json(sc.terms[0], *st_digits),
                              rational_json(sc.terms[1], *st_digits),
                              rational_json(sc.terms[2], *st_digits)}},
                            {"holds", sc.holds}});
    }
    emit(out, "stationarity", "pgl2", std::nullopt,
         json{{"points", points}, {"all_hold", all_hold}});
    if (!all_hold) exit_override = 4;
  });

  // -- coupling ------------------------------------------------------------
  auto* coupling = app.add_subcommand(
      "coupling", "coupled boundary folds against the contraction envelope");
  auto cp_cfg = std::make_shared<ConfigChoice>();
  add_config_options(coupling, *cp_cfg);
  auto cp_params = std::make_shared<CouplingParams>();
  auto cp_out = std::make_shared<std::string>();
  coupling->add_option("--pairs", cp_params->pairs, "coupled pairs")
      ->default_val(1000);
  coupling->add_option("--horizon", cp_params->horizon, "fold steps")
      ->default_val(40);
  coupling->add_option("--seed", cp_params->seed, "random seed")
      ->default_val(1);
  coupling->add_option("--out", *cp_out, "write per-step rows as CSV");
  coupling->callback([&out, cp_cfg, cp_params, cp_out]() {
    const auto [cfg, label] = resolve_config(*cp_cfg);
    const CouplingResult cr = coupling_experiment(cfg, *cp_params);
    json rows = json::array();
    std::size_t violations = 0;
    for (std::size_t m = 0; m < cr.mean_distance.size(); ++m) {
      const bool within =
          cr.mean_distance[m] <= cr.bound[m] + 3.0 * cr.std_error[m];
      if (!within) ++violations;
      rows.push_back(json{{"m", m},
                          {"mean", cr.mean_distance[m]},
                          {"std_error", cr.std_error[m]},
                          {"bound", cr.bound[m]},
                          {"within", within}});
    }
    json result{{"contraction", cr.contraction},
                {"pairs", cp_params->pairs},
                {"horizon", cp_params->horizon},
                {"rows", rows},
                {"violations", violations},
                {"rows_csv", nullptr}};
    if (!cp_out->empty()) {
      std::ofstream f = open_csv(*cp_out);
      f << "m,mean,std_error,bound\n";
      for (std::size_t m = 0; m < cr.mean_distance.size(); ++m) {
        f << m << "," << cr.mean_distance[m] << "," << cr.std_error[m] << ","
          << cr.bound[m] << "\n";
      }
      result["rows_csv"] = *cp_out;
    }
    emit(out, "coupling", label, cp_params->seed, result);
  });

  // -- contraction -----------------------------------------------------------
  auto* contraction = app.add_subcommand(
      "contraction", "boundary contraction certificate of a configuration");
  auto ct_cfg = std::make_shared<ConfigChoice>();
  add_config_options(contraction, *ct_cfg);
  contraction->callback([&out, ct_cfg]() {
    const auto [cfg, label] = resolve_config(*ct_cfg);
    const DiskConfig disk = disk_normalize(cfg);
    json walls = json::array();
    for (const DiskCircle& c : disk.walls) {
      walls.push_back(json{{"center", {c.center.real(), c.center.imag()}},
                           {"radius", c.radius}});
    }
    emit(out, "contraction", label, std::nullopt,
         json{{"contraction", contraction_constant(disk)},
              {"disk_walls", walls}});
  });

  // -- plot-data -------------------------------------------------------------
  auto* plot = app.add_subcommand(
      "plot-data", "write CSV series for external plotting");
  auto pl_cfg = std::make_shared<ConfigChoice>();
  add_config_options(plot, *pl_cfg);
  auto pl_what = std::make_shared<std::string>();
  auto pl_out = std::make_shared<std::string>();
  auto pl_grid = std::make_shared<std::string>("-25:25:1/8");
  auto pl_walks = std::make_shared<std::size_t>(2000);
  auto pl_seed = std::make_shared<std::uint64_t>(1);
  auto pl_stream = std::make_shared<std::uint64_t>(0);
  auto pl_stride = std::make_shared<std::size_t>(1);
  auto pl_pairs = std::make_shared<std::size_t>(1000);
  auto pl_horizon = std::make_shared<std::size_t>(40);
  auto pl_digits = std::make_shared<int>(12);
  plot->add_option("--what", *pl_what, "series: cdf, ecdf, trajectory, coupling")
      ->required()
      ->check(CLI::IsMember({"cdf", "ecdf", "trajectory", "coupling"}));
  plot->add_option("--out", *pl_out, "CSV output path")->required();
  plot->add_option("--grid", *pl_grid, "grid lo:hi:step for cdf/ecdf")
      ->default_val("-25:25:1/8");
  plot->add_option("--walks", *pl_walks, "walks for ecdf")->default_val(2000);
  plot->add_option("--seed", *pl_seed, "random seed")->default_val(1);
  plot->add_option("--stream", *pl_stream, "walk stream for trajectory")
      ->default_val(0);
  plot->add_option("--stride", *pl_stride, "trajectory decimation stride")
      ->default_val(1);
  plot->add_option("--pairs", *pl_pairs, "pairs for coupling")
      ->default_val(1000);
  plot->add_option("--horizon", *pl_horizon, "steps for coupling")
      ->default_val(40);
  plot->add_option("--decimal-digits", *pl_digits, "decimal digits for cdf")
      ->default_val(12);
  plot->callback([&out, pl_cfg, pl_what, pl_out, pl_grid, pl_walks, pl_seed,
                  pl_stream, pl_stride, pl_pairs, pl_horizon, pl_digits]() {
    const auto [cfg, label] = resolve_config(*pl_cfg);
    std::size_t rows = 0;
    std::string columns;

    if (*pl_what == "cdf") {
      if (label != "pgl2") {
        throw ValidationError(
            "the exact distribution is available only for the pgl2 "
            "configuration");
      }
      const Grid g = parse_grid(*pl_grid);
      std::ofstream f = open_csv(*pl_out);
      columns = "x,cdf";
      f << columns << "\n";
      InterroContext ctx;
      for (Rational x = g.lo; x <= g.hi; x += g.step) {
        f << x.to_double() << ","
          << decimal_string(limit_cdf(ExactNumber(x), &ctx).value, *pl_digits)
          << "\n";
        ++rows;
      }
    } else if (*pl_what == "ecdf") {
      const Grid g = parse_grid(*pl_grid);
      BatchParams bp;
      bp.seed = *pl_seed;
      bp.walks = *pl_walks;
      const BatchResult br = batch_sample(cfg, bp);
      std::ofstream f = open_csv(*pl_out);
      const bool exact = label == "pgl2";
      columns = exact ? "x,empirical,exact" : "x,empirical";
      f << columns << "\n";
      InterroContext ctx;
      for (Rational x = g.lo; x <= g.hi; x += g.step) {
        f << x.to_double() << "," << ecdf_at(br.samples, x.to_double());
        if (exact) {
          f << ","
            << decimal_string(limit_cdf(ExactNumber(x), &ctx).value,
                              *pl_digits);
        }
        f << "\n";
        ++rows;
      }
    } else if (*pl_what == "trajectory") {
      WalkParams wp;
      wp.seed = *pl_seed;
      wp.stream = *pl_stream;
      wp.trajectory_stride = *pl_stride == 0 ? 1 : *pl_stride;
      const WalkReport r = run_walk(cfg, wp);
      std::ofstream f = open_csv(*pl_out);
      columns = "step,x,y";
      f << columns << "\n";
      for (const TrajectoryPoint& tp : r.trajectory) {
        f << tp.step << "," << tp.x << "," << tp.y << "\n";
        ++rows;
      }
    } else {  // coupling
      CouplingParams cp;
      cp.seed = *pl_seed;
      cp.pairs = *pl_pairs;
      cp.horizon = *pl_horizon;
      const CouplingResult cr = coupling_experiment(cfg, cp);
      std::ofstream f = open_csv(*pl_out);
      columns = "m,mean,std_error,bound";
      f << columns << "\n";
      for (std::size_t m = 0; m < cr.mean_distance.size(); ++m) {
        f << m << "," << cr.mean_distance[m] << "," << cr.std_error[m] << ","
          << cr.bound[m] << "\n";
        ++rows;
      }
    }
    emit(out, "plot-data", label, *pl_seed,
         json{{"what", *pl_what},
              {"out", *pl_out},
              {"columns", columns},
              {"rows", rows}});
  });

  // -- ks --------------------------------------------------------------------
  auto* ks = app.add_subcommand(
      "ks", "empirical law against the exact one on a rational grid");
  auto ks_walks = std::make_shared<std::size_t>(2000);
  auto ks_seed = std::make_shared<std::uint64_t>(1);
  auto ks_grid = std::make_shared<std::string>("-25:25:1/8");
  auto ks_target = std::make_shared<double>(1e-6);
  auto ks_max_steps = std::make_shared<std::size_t>(10000);
  auto ks_threads = std::make_shared<int>(0);
  ks->add_option("--walks", *ks_walks, "number of walks")->default_val(2000);
  ks->add_option("--seed", *ks_seed, "random seed")->default_val(1);
  ks->add_option("--grid", *ks_grid, "comparison grid lo:hi:step")
      ->default_val("-25:25:1/8");
  ks->add_option("--target", *ks_target, "bracket width to certify")
      ->default_val(1e-6);
  ks->add_option("--max-steps", *ks_max_steps, "crossing budget per walk")
      ->default_val(10000);
  ks->add_option("--threads", *ks_threads,
                 "worker threads (0 = TRIWALK_THREADS or hardware)")
      ->default_val(0);
  ks->callback([&out, ks_walks, ks_seed, ks_grid, ks_target, ks_max_steps,
                ks_threads]() {
    const Grid g = parse_grid(*ks_grid);
    BatchParams bp;
    bp.seed = *ks_seed;
    bp.walks = *ks_walks;
    bp.target_width = *ks_target;
    bp.max_steps = *ks_max_steps;
    bp.threads = *ks_threads;
    const BatchResult br = batch_sample(builtin_pgl2(), bp);
    const double d = max_cdf_discrepancy(br.samples, g.lo, g.hi, g.step);
    emit(out, "ks", "pgl2", *ks_seed,
         json{{"walks", *ks_walks},
              {"grid", *ks_grid},
              {"target_width", *ks_target},
              {"unbounded_count", br.unbounded_count},
              {"discrepancy", d}});
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    return exit_override;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceededError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InternalInvariantError& e) {
    err << "internal invariant failed: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace triwalk
