#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eulerdet/elliptic/curve.hpp"
#include "eulerdet/io/json_io.hpp"
#include "eulerdet/suites/suites.hpp"

namespace {

using namespace eulerdet;
using json = nlohmann::json;
using Q = BigRational;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct Config {
  std::string format = "json";
  std::uint64_t seed = 0;
  int precision = kDefaultDvrPrecision;
  int iwasawa_a = 3, iwasawa_b = 8;
  double tolerance = kDefaultPurityTolerance;
  int degree_bound = 4;
  std::optional<long> sturm_bound;
  bool timing = false;

  void validate() const {
    if (format != "json" && format != "table") throw Error(ErrorCode::UsageError, "--format must be json or table");
    if (precision < 1 || iwasawa_a < 1 || iwasawa_b < 1) throw Error(ErrorCode::UsageError, "precisions must be >= 1");
    if (!(tolerance > 0)) throw Error(ErrorCode::UsageError, "tolerance must be > 0");
    if (degree_bound < 1) throw Error(ErrorCode::UsageError, "degree bound must be >= 1");
    if (sturm_bound && *sturm_bound < 1) throw Error(ErrorCode::UsageError, "Sturm bound must be >= 1");
  }
};

// Config file keys mirror the flags; flags given on the command line win.
void apply_config_file(Config& c, const std::string& path, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UsageError, "cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::UsageError, std::string("config file is not JSON: ") + e.what());
  }
  auto given = [&](const char* flag) { return app.count(flag) > 0; };
  try {
    if (j.contains("format") && !given("--format")) c.format = j["format"].get<std::string>();
    if (j.contains("seed") && !given("--seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("precision") && !given("--precision")) c.precision = j["precision"].get<int>();
    if (j.contains("tolerance") && !given("--tolerance")) c.tolerance = j["tolerance"].get<double>();
    if (j.contains("sturm_bound") && !given("--sturm-bound")) c.sturm_bound = j["sturm_bound"].get<long>();
    if (j.contains("degree_bound")) c.degree_bound = j["degree_bound"].get<int>();
    if (j.contains("iwasawa_precision")) {
      const auto& ip = j["iwasawa_precision"];
      if (!ip.is_array() || ip.size() != 2) throw Error(ErrorCode::UsageError, "iwasawa_precision must be [a, b]");
      c.iwasawa_a = ip[0].get<int>();
      c.iwasawa_b = ip[1].get<int>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::UsageError, std::string("bad config value: ") + e.what());
  }
}

struct Outcome {
  json outputs;
  std::optional<bool> pass;  // set by check-style commands
};

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Table rendering

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool is_scalar_array(const json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
}

bool is_record_array(const json& v) {
  return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_object(); });
}

std::string cell_text(const json& v) {
  if (v.is_primitive()) return scalar_text(v);
  if (v.is_object() && v.contains("text")) return scalar_text(v["text"]);
  if (is_scalar_array(v)) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + scalar_text(x);
    return "[" + s + "]";
  }
  return v.dump();
}

void render_records(std::ostream& os, const json& rows, const std::string& indent) {
  std::vector<std::string> cols;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::vector<std::size_t> width(cols.size());
  std::vector<std::vector<std::string>> cells;
  for (std::size_t c = 0; c < cols.size(); ++c) width[c] = cols[c].size();
  for (const auto& r : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      line.push_back(r.contains(cols[c]) ? cell_text(r[cols[c]]) : "");
      width[c] = std::max(width[c], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    os << indent;
    for (std::size_t c = 0; c < line.size(); ++c) {
      os << line[c];
      if (c + 1 < line.size()) os << std::string(width[c] - line[c].size() + 2, ' ');
    }
    os << "\n";
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
}

void render_table(std::ostream& os, const json& j, const std::string& indent = "") {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      os << indent << k << ":\n";
      render_table(os, v, indent + "  ");
    } else if (is_record_array(v)) {
      os << indent << k << ":\n";
      render_records(os, v, indent + "  ");
    } else {
      os << indent << k << ": " << cell_text(v) << "\n";
    }
  }
}

// ---------------------------------------------------------------------------
// JSON helpers for reports

json poly_json(const Polynomial<Q>& p) { return {{"coefficients", io::encode_polynomial(p)}, {"text", p.to_string("X")}}; }

json poly_json(const Polynomial<QT>& p) {
  json c = json::array();
  for (const auto& x : p.coefficients()) c.push_back(io::codec<QT>::encode(x));
  return {{"coefficients", c}};
}

std::vector<long> parse_long_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::UsageError, "expected a comma-separated list of integers, got \"" + s + "\"");
    }
  }
  return out;
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, what + " is not valid JSON: " + e.what());
  }
}

EllipticCurveQ curve_arg(const std::string& s) { return io::decode_curve(parse_json_text(s, "--curve")); }

json line_json(const GradedLine<Q>& l) { return {{"degree", l.degree}, {"scalar", l.scalar.to_string()}}; }
json line_json(const GradedLine<QT>& l) { return {{"degree", l.degree}, {"scalar", io::codec<QT>::encode(l.scalar)}}; }

std::string provenance_name(LineProvenance p) {
  switch (p) {
    case LineProvenance::Local: return "local";
    case LineProvenance::Partial: return "partial";
    case LineProvenance::Global: return "global";
  }
  return "?";
}

template <class R>
json encode_scalar(const R& x) {
  return io::codec<R>::encode(x);
}

json purity_json(const PurityVerdict& v) {
  json g = json::array();
  for (const auto& gr : v.graded) {
    g.push_back({{"index", gr.index},
                 {"dimension", gr.dimension},
                 {"weight", gr.weight},
                 {"char_poly", poly_json(gr.char_poly)},
                 {"functional_equation", gr.functional_equation},
                 {"modulus_ok", gr.modulus.pass},
                 {"modulus_squared", gr.modulus.modulus_squared},
                 {"pure", gr.pure()}});
  }
  return {{"pure", v.pure}, {"graded", g}};
}

// ---------------------------------------------------------------------------
// Commands

struct Args {
  std::string curve, curve1, curve2, sigma, conductors, s_list, input;
  long prime = 0, p = 5, ell = 0;
  long component = 0, psi = 0, phi = 1;
  std::optional<int> weight;
  bool flip_convention = false;
  double scale = 1.0;
};

class Cli {
 public:
  Cli() : app_("Euler factors, determinant lines and congruences of local Galois data", "eulerdet") {
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.add_option("--format", cfg_.format, "Output format: json or table");
    app_.add_option("--seed", cfg_.seed, "RNG seed for seeded suites");
    app_.add_option("--precision", cfg_.precision, "DVR precision for unit tests (Z/p^n)");
    app_.add_option("--tolerance", cfg_.tolerance, "Relative tolerance of the purity modulus test");
    app_.add_option("--sturm-bound", sturm_, "Override the Sturm bound in congruence checks");
    app_.add_option("--config", config_path_, "JSON config file; flags override its values");
    app_.add_flag("--stdin", use_stdin_, "Read the JSON payload from stdin");
    app_.add_option("--input", a_.input, "JSON payload, or @path to read it from a file");
    app_.add_flag("--timing", cfg_.timing, "Add wall-clock timing to the report (breaks byte-identical output)");

    add("curve-ap", "a_ell of a curve [a1,a2,a3,a4,a6] at a prime", [this](CLI::App* s) {
      s->add_option("--curve", a_.curve)->required();
      s->add_option("--prime", a_.prime)->required();
    }, [this] { return curve_ap(); });
    add("curve-euler", "Euler factor and local Weil-Deligne model of a curve", [this](CLI::App* s) {
      s->add_option("--curve", a_.curve)->required();
      s->add_option("--prime", a_.prime)->required();
      s->add_option("--p", a_.p);
    }, [this] { return curve_euler(); });
    add("congruence-check", "a_ell(E1) = a_ell(E2) mod p up to the Sturm bound", [this](CLI::App* s) {
      s->add_option("--curve1", a_.curve1)->required();
      s->add_option("--curve2", a_.curve2)->required();
      s->add_option("--p", a_.p);
      s->add_option("--conductors", a_.conductors, "N1,N2 (default: upper bounds from the discriminants)");
    }, [this] { return congruence(); });
    add("unit-analysis", "p-adic valuations of Euler factors at 1", [this](CLI::App* s) {
      s->add_option("--curve", a_.curve)->required();
      s->add_option("--sigma", a_.sigma)->required();
      s->add_option("--p", a_.p);
    }, [this] { return unit_analysis_cmd(); });
    add("paper-example", "Full reproduction of the congruent pair of conductors 52 and 364", [](CLI::App*) {},
        [this] { return paper_example(); });
    add("wd-euler", "Euler factor of a Weil-Deligne representation (payload)", [](CLI::App*) {},
        [this] { return wd_euler(); });
    add("wd-purity", "Purity of the monodromy graded pieces (payload)", [this](CLI::App* s) {
      s->add_option("--weight", a_.weight, "Override the weight in the payload");
    }, [this] { return wd_purity(); });
    add("wd-interpolate", "Euler factors of specializations of a family over Q(T) (payload)", [](CLI::App*) {},
        [this] { return wd_interpolate(); });
    add("family-euler", "Local determinant lines of a family at ell (payload)", [this](CLI::App* s) {
      s->add_option("--ell", a_.ell, "prime in Sigma \\ {p}; all of them when omitted");
    }, [this] { return family_euler(); });
    add("family-partial-det", "Partial determinant Delta_S of a family (payload)", [this](CLI::App* s) {
      s->add_option("--S", a_.s_list)->required();
      s->add_option("--component", a_.component);
    }, [this] { return family_partial_det(); });
    add("obstruction-scan", "Unit test of Euler values at two points (payload or the congruent pair)",
        [this](CLI::App* s) {
          s->add_option("--psi", a_.psi, "index of the first point");
          s->add_option("--phi", a_.phi, "index of the second point");
        },
        [this] { return obstruction(); });
    add("discrepancy-demo", "Generic vs pointwise Euler factors on a non-domain family", [](CLI::App*) {},
        [this] { return discrepancy(); });
    add("char-ideal", "Characteristic and Fitting ideals of a Lambda-presentation (payload)", [](CLI::App*) {},
        [this] { return char_ideal_cmd(); });
    add("trace-check", "Trace formula on a zero-dimensional scheme and Selmer cone additivity (payload)",
        [](CLI::App*) {}, [this] { return trace_check(); });
    add("det-torsion", "Determinant degree and torsion of a perfect complex (payload)", [](CLI::App*) {},
        [this] { return det_torsion(); });
    add("selftest", "All property suites at the given seed", [this](CLI::App* s) {
      s->add_option("--scale", a_.scale, "Multiply the case counts")->group("");
      s->add_flag("--flip-convention", a_.flip_convention)->group("");
    }, [this] { return selftest(); });
  }

  int run(int argc, char** argv) {
    std::string command;
    try {
      try {
        app_.parse(argc, argv);
      } catch (const CLI::CallForHelp& e) {
        return app_.exit(e);
      } catch (const CLI::CallForAllHelp& e) {
        return app_.exit(e);
      } catch (const CLI::ParseError& e) {
        throw Error(ErrorCode::UsageError, e.what());
      }
      if (!config_path_.empty()) apply_config_file(cfg_, config_path_, app_);
      if (app_.count("--sturm-bound") > 0) cfg_.sturm_bound = sturm_;
      cfg_.validate();
      for (auto* sub : app_.get_subcommands()) command = sub->get_name();
      std::string raw_args;
      for (int i = 1; i < argc; ++i) raw_args += std::string(argv[i]) + '\0';

      auto t0 = std::chrono::steady_clock::now();
      Outcome out = handlers_.at(command)();
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

      json report{{"command", command},
                  {"inputs_digest", fnv1a_hex(raw_args + (payload_ ? payload_->dump() : std::string()))},
                  {"outputs", out.outputs}};
      if (out.pass) report["pass"] = *out.pass;
      if (cfg_.timing) report["timing_ms"] = ms;
      emit(report);
      return out.pass && !*out.pass ? kExitCheckFailed : kExitPass;
    } catch (const Error& e) {
      return fail(command, std::string(error_code_name(e.code())), e.what());
    } catch (const std::exception& e) {
      return fail(command, "InvalidArgument", e.what());
    }
  }

 private:
  using Handler = std::function<Outcome()>;

  void add(const std::string& name, const std::string& help, const std::function<void(CLI::App*)>& setup,
           Handler h) {
    setup(app_.add_subcommand(name, help));
    handlers_.emplace(name, std::move(h));
  }

  int fail(const std::string& command, const std::string& code, std::string message) {
    if (message.rfind(code + ": ", 0) == 0) message.erase(0, code.size() + 2);
    json err{{"error", {{"code", code}, {"message", message}}}};
    if (!command.empty()) err["command"] = command;
    if (code == "UsageError") err["error"]["help"] = app_.help();
    std::cout << err.dump(2) << "\n";
    return kExitInputError;
  }

  void emit(const json& report) {
    if (cfg_.format == "table") {
      render_table(std::cout, report);
    } else {
      std::cout << report.dump(2) << "\n";
    }
  }

  const json& payload() {
    if (!payload_) {
      std::string text;
      if (use_stdin_) {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
      } else if (!a_.input.empty() && a_.input[0] == '@') {
        std::ifstream in(a_.input.substr(1));
        if (!in) throw Error(ErrorCode::UsageError, "cannot read " + a_.input.substr(1));
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
      } else if (!a_.input.empty()) {
        text = a_.input;
      } else {
        throw Error(ErrorCode::UsageError, "this command needs a JSON payload (--input or --stdin)");
      }
      payload_ = parse_json_text(text, "payload");
    }
    return *payload_;
  }

  bool has_payload() const { return use_stdin_ || !a_.input.empty(); }

  Outcome curve_ap() {
    auto e = curve_arg(a_.curve);
    auto t = reduction_type(e, a_.prime);
    json o{{"curve", io::encode_curve(e)}, {"prime", a_.prime}, {"reduction", reduction_type_name(t)},
           {"a", hecke_eigenvalue(e, a_.prime)}};
    o["point_count"] = reduced_point_count(e, a_.prime).count;
    return {o, std::nullopt};
  }

  Outcome curve_euler() {
    auto e = curve_arg(a_.curve);
    auto f = euler_factor_motive(e, a_.prime, a_.p);
    auto wd = local_wd_model(e, a_.prime, a_.p);
    json o{{"curve", io::encode_curve(e)},
           {"prime", a_.prime},
           {"p", a_.p},
           {"reduction", reduction_type_name(reduction_type(e, a_.prime))},
           {"euler_factor", poly_json(f)},
           {"value_at_1", f.evaluate(Q(1)).to_string()},
           {"wd_model", io::encode_wd(wd)},
           {"wd_euler_factor", poly_json(euler_factor(wd))}};
    return {o, std::nullopt};
  }

  Outcome congruence() {
    auto e1 = curve_arg(a_.curve1), e2 = curve_arg(a_.curve2);
    std::optional<std::pair<Integer, Integer>> cond;
    if (!a_.conductors.empty()) {
      auto c = parse_long_list(a_.conductors);
      if (c.size() != 2) throw Error(ErrorCode::UsageError, "--conductors takes N1,N2");
      cond = std::make_pair(Integer(c[0]), Integer(c[1]));
    }
    auto rep = congruence_check(e1, e2, a_.p, cfg_.sturm_bound, cond);
    json fails = json::array();
    for (const auto& f : rep.failures) fails.push_back({{"ell", f.ell}, {"a1", f.a1}, {"a2", f.a2}});
    json o{{"curve1", io::encode_curve(e1)}, {"curve2", io::encode_curve(e2)}, {"p", rep.p},
           {"level", rep.level.to_string()}, {"bound", rep.bound}, {"checked", rep.checked},
           {"failures", fails}, {"congruent", rep.congruent}};
    return {o, rep.congruent};
  }

  static json unit_rows(const std::vector<UnitRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"ell", r.ell}, {"euler_factor", r.euler.to_string("X")}, {"value_at_1", r.value.to_string()},
                     {"valuation", r.valuation}, {"unit", r.valuation == 0}});
    }
    return out;
  }

  Outcome unit_analysis_cmd() {
    auto e = curve_arg(a_.curve);
    auto rows = unit_analysis(e, parse_long_list(a_.sigma), a_.p);
    return {{{"curve", io::encode_curve(e)}, {"p", a_.p}, {"rows", unit_rows(rows)}}, std::nullopt};
  }

  static json obstruction_json(const ObstructionReport& r) {
    json rows = json::array();
    for (const auto& x : r.rows) {
      rows.push_back({{"ell", x.ell}, {"value_psi", x.value_psi.to_string()}, {"valuation_psi", x.valuation_psi},
                      {"value_phi", x.value_phi.to_string()}, {"valuation_phi", x.valuation_phi}});
    }
    return {{"p", r.p}, {"precision", r.precision}, {"rows", rows}, {"psi_unit", r.psi_unit},
            {"phi_unit", r.phi_unit}, {"impossible", r.impossible}};
  }

  Outcome paper_example() {
    auto rep = congruent_pair_example();
    json checks = json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"check", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
    }
    json o{{"checks", checks},
           {"congruence", {{"p", rep.congruence.p}, {"level", rep.congruence.level.to_string()},
                           {"bound", rep.congruence.bound}, {"primes_checked", rep.congruence.checked.size()},
                           {"failures", rep.congruence.failures.size()}}},
           {"obstruction", obstruction_json(rep.obstruction)},
           {"units_E1", unit_rows(unit_analysis(example_curve_e1(), {2, 7, 13}, 5))},
           {"units_E2", unit_rows(unit_analysis(example_curve_e2(), {2, 7, 13}, 5))}};
    return {o, rep.pass};
  }

  bool payload_over_qt() {
    const auto& j = payload();
    return j.value("ring", std::string("Q")).find("(T)") != std::string::npos;
  }

  template <class R>
  static json wd_euler_json(const WeilDeligneRep<R>& wd) {
    auto inv = inertia_invariants(wd);
    return {{"ell", wd.ell()}, {"dimension", wd.dimension()}, {"invariants_dimension", inv.cols()},
            {"euler_factor", poly_json(euler_factor(wd))}, {"monodromy_rank", rank(wd.monodromy())},
            {"monodromy_rank_bound", monodromy_rank_bound(wd)}};
  }

  Outcome wd_euler() {
    RationalField q;
    if (payload_over_qt()) return {wd_euler_json(io::decode_wd<QT>(payload(), ring_context_t<QT>{q})), std::nullopt};
    return {wd_euler_json(io::decode_wd<Q>(payload(), q)), std::nullopt};
  }

  Outcome wd_purity() {
    auto wd = io::decode_wd<Q>(payload(), RationalField{});
    int w = a_.weight ? *a_.weight : wd.weight();
    auto v = check_purity(wd, w, cfg_.tolerance);
    json o = purity_json(v);
    o["weight"] = w;
    o["tolerance"] = cfg_.tolerance;
    return {o, v.pure};
  }

  Outcome wd_interpolate() {
    RationalField q;
    const auto& j = payload();
    auto fam = io::decode_wd<QT>(io::field(j, "family"), ring_context_t<QT>{q});
    std::vector<Specialization> specs;
    for (const auto& s : io::field(j, "specializations")) {
      Specialization sp{io::decode_rational(io::field(s, "at")), std::nullopt};
      if (s.contains("declared_pure")) sp.declared_pure = s["declared_pure"].get<bool>();
      specs.push_back(sp);
    }
    auto reps = check_interpolation(fam, specs, cfg_.tolerance);
    json rows = json::array();
    bool ok = true;
    for (const auto& r : reps) {
      ok = ok && r.consistent;
      json row{{"at", r.value.to_string()}, {"specialized_then_computed", poly_json(r.specialized_then_computed)},
               {"computed_after", poly_json(r.computed_after)}, {"generic_rank", r.generic_rank},
               {"specialized_rank", r.specialized_rank}, {"rank_bound", r.rank_bound}, {"pure", r.pure},
               {"match", r.match}, {"inequality_holds", r.inequality_holds}, {"degree_jump", r.degree_jump},
               {"consistent", r.consistent}};
      if (r.declared_pure) row["declared_pure"] = *r.declared_pure;
      rows.push_back(std::move(row));
    }
    return {{{"family_euler_factor", poly_json(reps.empty() ? euler_factor(fam) : reps[0].family_euler)},
             {"reports", rows}},
            ok};
  }

  template <class F>
  auto with_family(F&& f) {
    auto fam = io::decode_family(payload());
    return std::visit(std::forward<F>(f), fam);
  }

  Outcome family_euler() {
    return with_family([&](const auto& f) -> Outcome {
      std::vector<long> ells = a_.ell != 0 ? std::vector<long>{a_.ell} : f.ramified();
      json rows = json::array();
      bool ok = true;
      for (long l : ells) {
        auto lines = local_determinant_lines(f, l);
        for (std::size_t k = 0; k < lines.size(); ++k) {
          bool agree = lines[k].generator == lines[k].torsion;
          ok = ok && agree;
          rows.push_back({{"ell", l}, {"component", k}, {"euler_factor", poly_json(euler_factor(f.local(l, k)))},
                          {"generator", encode_scalar(lines[k].generator)}, {"torsion", encode_scalar(lines[k].torsion)},
                          {"degree", lines[k].line.line.degree}, {"agree", agree}});
        }
      }
      return {{{"ring", f.ring()}, {"p", f.p()}, {"lines", rows}}, ok};
    });
  }

  Outcome family_partial_det() {
    return with_family([&](const auto& f) -> Outcome {
      auto line = partial_determinant(f, parse_long_list(a_.s_list), static_cast<std::size_t>(a_.component));
      return {{{"provenance", provenance_name(line.provenance)}, {"S", line.s}, {"sigma", line.sigma},
               {"line", line_json(line.line)}},
              std::nullopt};
    });
  }

  Outcome obstruction() {
    auto scan = [&](const auto& f) -> Outcome {
      const auto& pts = f.points();
      auto idx = [&](long i) -> std::size_t {
        if (i < 0 || static_cast<std::size_t>(i) >= pts.size()) {
          throw Error(ErrorCode::InvalidArgument, "no point with index " + std::to_string(i));
        }
        return static_cast<std::size_t>(i);
      };
      const auto& psi = pts[idx(a_.psi)];
      const auto& phi = pts[idx(a_.phi)];
      json o = obstruction_json(obstruction_scan(f, psi, phi, cfg_.precision));
      o["psi"] = psi.label;
      o["phi"] = phi.label;
      return {o, std::nullopt};
    };
    if (has_payload()) return with_family(scan);
    auto e1 = example_curve_e1(), e2 = example_curve_e2();
    return scan(congruent_pair_family(e1, e2, 5, {2, 5, 7, 13}));
  }

  Outcome discrepancy() {
    const bool demo = !has_payload();
    AlgebraicFamily<QT> fam = demo ? discrepancy_demo_family() : std::get<AlgebraicFamily<QT>>(io::decode_family(payload()));
    json rows = json::array();
    bool pure_equal = true, nonpure_differs = false;
    for (const auto& pt : fam.points()) {
      auto rep = euler_discrepancy(fam, pt.component, pt.hom);
      pure_equal = pure_equal && (!pt.pure || rep.equal);
      nonpure_differs = nonpure_differs || (!pt.pure && !rep.equal);
      for (const auto& r : rep.rows) {
        rows.push_back({{"point", pt.label}, {"component", pt.component}, {"pure", pt.pure}, {"ell", r.ell},
                        {"generic_factor_image", r.generic_factor_image.to_string("X")},
                        {"pointwise_factor", r.pointwise_factor.to_string("X")},
                        {"monodromy_killed", r.monodromy_killed}, {"equal", r.equal}});
      }
    }
    json o{{"family", io::encode_family(fam)}, {"rows", rows}, {"pure_points_agree", pure_equal},
           {"non_classical_discrepancy", nonpure_differs}};
    return {o, pure_equal && (!demo || nonpure_differs)};
  }

  Outcome char_ideal_cmd() {
    const auto& j = payload();
    IwasawaRing lam{io::decode_long(io::field(j, "p")),
                    j.contains("p_precision") ? static_cast<int>(io::decode_long(j["p_precision"])) : cfg_.iwasawa_a,
                    j.contains("t_precision") ? static_cast<int>(io::decode_long(j["t_precision"])) : cfg_.iwasawa_b};
    auto m = io::decode_matrix<IwasawaElement>(io::field(j, "presentation"), lam);
    auto rep = fitting_in_char_ideal(m);
    json fitt = json::array();
    for (const auto& x : rep.fitt0) fitt.push_back(io::codec<IwasawaElement>::encode(x));
    json o{{"p", lam.p}, {"p_precision", lam.p_precision}, {"t_precision", lam.t_precision},
           {"determinant", io::codec<IwasawaElement>::encode(rep.char_ideal.determinant)},
           {"generator", io::codec<IwasawaElement>::encode(rep.char_ideal.generator)},
           {"generator_text", rep.char_ideal.generator.to_string()},
           {"mu", rep.char_ideal.mu}, {"lambda", rep.char_ideal.lambda},
           {"fitt0", fitt}, {"fitt0_in_char_ideal", rep.contained}};
    return {o, rep.contained};
  }

  Outcome trace_check() {
    const auto& j = payload();
    json o = json::object();
    bool ok = true;
    bool any = false;
    const json* scheme = j.contains("scheme") ? &j["scheme"] : (j.contains("points") ? &j : nullptr);
    if (scheme) {
      any = true;
      auto rep = trace_formula_check(io::decode_zero_scheme(*scheme));
      ok = ok && rep.equal;
      o["trace_formula"] = {{"product_formula", poly_json(rep.lhs_denominator)},
                            {"cohomological_formula", poly_json(rep.rhs_denominator)},
                            {"equal", rep.equal}};
    }
    if (j.contains("selmer")) {
      any = true;
      auto d = io::decode_selmer(j["selmer"]);
      long expected = d.global.euler_characteristic();
      for (const auto& pl : d.places) expected += pl.condition.complex().euler_characteristic() - pl.condition.full().euler_characteristic();
      auto cone = selmer_cone(d);
      bool additive = cone.euler_characteristic() == expected;
      ok = ok && additive;
      o["selmer"] = {{"cone", io::encode_complex(cone)}, {"euler_characteristic", cone.euler_characteristic()},
                     {"expected", expected}, {"additive", additive}};
    }
    if (!any) throw Error(ErrorCode::InvalidArgument, "payload needs \"scheme\" (or \"points\") and/or \"selmer\"");
    return {o, ok};
  }

  template <class R>
  static json torsion_json(const PerfectComplex<R>& c) {
    json o{{"euler_characteristic", c.euler_characteristic()}, {"det_degree", det_complex(c).degree}};
    try {
      auto td = torsion_detail(c);
      o["acyclic"] = true;
      o["torsion"] = encode_scalar(td.value);
      json ranks = json::object();
      for (auto [i, r] : td.differential_ranks) ranks[std::to_string(i)] = r;
      o["differential_ranks"] = ranks;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotAcyclic) throw;
      o["acyclic"] = false;
    }
    return o;
  }

  Outcome det_torsion() {
    const auto& j = payload();
    const json& cj = j.contains("complex") ? j["complex"] : j;
    const json ring = j.value("ring", json("Q"));
    if (ring.is_object()) {
      PAdicRing r{io::decode_long(io::field(ring, "p")), static_cast<int>(io::decode_long(io::field(ring, "precision")))};
      return {torsion_json(io::decode_complex<PAdic>(cj, r)), std::nullopt};
    }
    if (ring != json("Q")) throw Error(ErrorCode::UnsupportedRing, "det-torsion works over Q or {\"p\", \"precision\"}");
    return {torsion_json(io::decode_complex<Q>(cj, RationalField{})), std::nullopt};
  }

  Outcome selftest() {
    suites::SuiteOptions o;
    o.seed = cfg_.seed;
    o.scale = a_.scale;
    o.flip_convention = a_.flip_convention;
    json results = json::array();
    bool ok = true;
    for (const auto& s : suites::all_suites()) {
      auto r = s.run(o);
      ok = ok && r.pass;
      results.push_back(suites::to_json(r));
    }
    return {{{"seed", cfg_.seed}, {"suites", results}}, ok};
  }

  CLI::App app_;
  Config cfg_;
  Args a_;
  long sturm_ = 0;
  std::string config_path_;
  bool use_stdin_ = false;
  std::optional<json> payload_;
  std::map<std::string, Handler> handlers_;
};

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  return cli.run(argc, argv);
}
