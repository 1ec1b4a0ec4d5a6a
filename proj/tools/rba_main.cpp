#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rba/error.hpp"
#include "rba/hilbert.hpp"
#include "rba/indicator.hpp"
#include "rba/ingest.hpp"
#include "rba/integrality.hpp"
#include "rba/quaternion.hpp"
#include "rba/rba_io.hpp"
#include "rba/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kNegative = 1, kInputError = 2 };

struct Options {
  bool json = false;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  bool exact = false;
  bool floating = false;
  std::string out;
};

rba::ToleranceConfig tolerance(const Options& o) {
  rba::ToleranceConfig t;
  if (o.tol) t.eps_residual = *o.tol;
  if (o.seed) {
    t.rng_seed = *o.seed;
  } else if (const char* env = std::getenv("RBA_SEED"); env && *env) {
    try {
      std::size_t pos = 0;
      t.rng_seed = std::stoull(env, &pos);
      if (pos != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw rba::Error(rba::ErrorCode::invalid_input, std::string("RBA_SEED is not an integer: ") + env);
    }
  }
  t.check();
  return t;
}

/// Writes via a temporary file and rename so readers never see partial output.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  const fs::path target(o.out);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw rba::Error(rba::ErrorCode::invalid_input, "cannot write " + tmp.string());
    f << text;
    if (!f.flush()) throw rba::Error(rba::ErrorCode::invalid_input, "cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

rba::Rba apply_mode(const rba::Rba& in, const Options& o, const rba::ToleranceConfig& tol) {
  if (o.floating) return in.to_float();
  if (!o.exact || in.is_exact()) return in;
  std::vector<rba::Scalar> lambda;
  for (const auto& v : in.tensor()) {
    const double x = v.to_double();
    auto q = rba::snap_rational(x, tol.eps_zero * std::max(1.0, std::abs(x)), rba::kSnapDenominator);
    if (!q || rba::to_double(*q) != x) {
      throw rba::Error(rba::ErrorCode::invalid_input,
                       "--exact: structure constant " + rba::format_double(x) + " is not a small rational");
    }
    lambda.emplace_back(*q);
  }
  return rba::Rba(in.rank(), std::move(lambda), in.star_map(), in.labels());
}

rba::Rba load(const std::string& path, const Options& o, const rba::ToleranceConfig& tol) {
  if (path == "-") {
    const std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return apply_mode(rba::parse_rba(text), o, tol);
  }
  return apply_mode(rba::read_rba_file(path), o, tol);
}

std::vector<std::string> expand(const std::vector<std::string>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) {
    if (p != "-" && fs::is_directory(p)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".rba") found.push_back(e.path().string());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

int cmd_analyze(const Options& o, const std::vector<std::string>& inputs) {
  const auto tol = tolerance(o);
  const auto paths = expand(inputs);
  if (paths.empty()) throw rba::Error(rba::ErrorCode::invalid_input, "no .rba inputs found");
  int code = kPass;
  std::string text;
  json batch = json::array();
  for (const auto& p : paths) {
    const rba::AnalysisReport r = rba::analyze(load(p, o, tol), tol, p);
    if (!r.passed) code = kNegative;
    if (o.json) {
      if (paths.size() == 1) {
        text = rba::to_json(r);
      } else {
        batch.push_back(json::parse(rba::to_json(r)));
      }
    } else {
      text += rba::render_text(r);
      if (paths.size() > 1) text += '\n';
    }
  }
  if (o.json && paths.size() > 1) text = batch.dump(2) + "\n";
  emit(o, text);
  return code;
}

int cmd_validate(const Options& o, const std::string& path) {
  const auto tol = tolerance(o);
  const rba::ValidationReport v = rba::validate(load(path, o, tol), tol);
  std::ostringstream os;
  if (o.json) {
    json checks = json::array();
    for (const auto& c : v.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.max_residual}, {"detail", c.detail}});
    }
    os << json{{"checks", checks}, {"passed", v.ok()}}.dump(2) << '\n';
  } else {
    for (const auto& c : v.checks) {
      os << (c.passed ? "ok    " : "FAIL  ") << c.name << "  residual " << rba::format_double(c.max_residual);
      if (!c.detail.empty()) os << "  " << c.detail;
      os << '\n';
    }
  }
  emit(o, os.str());
  return v.ok() ? kPass : kNegative;
}

int cmd_quaternion(const Options& o, const std::string& path) {
  const auto tol = tolerance(o);
  const rba::AnalysisReport r = rba::analyze(load(path, o, tol), tol, path);
  if (!r.quaternion) {
    std::string why = "no quaternion symbol: the algebra needs exactly one nonreal pair and a degree-2 character";
    for (const auto& n : r.notes) why += "\n  " + n;
    if (r.one_pair_lemma && *r.one_pair_lemma != "holds") why += "\n  " + *r.one_pair_lemma;
    throw rba::Error(rba::ErrorCode::precondition, why);
  }
  const auto& q = *r.quaternion;
  std::ostringstream os;
  if (o.json) {
    json places = json::object();
    for (const auto& [p, v] : q.hilbert) places[p] = v;
    const auto num = [](const rba::Scalar& s) {
      return s.is_exact() ? json(rba::rational_to_string(s.exact())) : json(s.to_double());
    };
    os << json{{"a", num(q.a)},
               {"beta", num(q.beta)},
               {"xd_square", num(q.xd_square)},
               {"field_mode", q.field_mode},
               {"verdict", q.verdict},
               {"hilbert", places},
               {"anticommutation_residual", q.anticommutation_residual},
               {"x_residual", q.x_residual}}
              .dump(2)
       << '\n';
  } else {
    os << "a = " << q.a.to_string() << "\nbeta = " << q.beta.to_string() << "\nX(d)^2 = " << q.xd_square.to_string()
       << " I\nfield: " << q.field_mode << '\n';
    for (const auto& [p, v] : q.hilbert) os << "(a,b)_" << p << " = " << v << '\n';
    os << "verdict: " << q.verdict << '\n';
  }
  emit(o, os.str());
  return q.verdict == "division" ? kNegative : kPass;
}

int cmd_hilbert(const Options& o, const std::string& a_text, const std::string& b_text) {
  const rba::Rational a = rba::parse_rational(a_text);
  const rba::Rational b = rba::parse_rational(b_text);
  const rba::HilbertProfile h = rba::hilbert_profile(a, b);
  const std::string verdict = h.split ? "split" : "division";
  std::ostringstream os;
  if (o.json) {
    json places = json::object();
    for (const auto& [p, v] : h.values) places[p.to_string()] = v;
    os << json{{"a", rba::rational_to_string(a)},
               {"b", rba::rational_to_string(b)},
               {"places", places},
               {"product", h.product},
               {"verdict", verdict}}
              .dump(2)
       << '\n';
  } else {
    for (const auto& [p, v] : h.values) os << p.to_string() << ": " << (v > 0 ? "+1" : "-1") << '\n';
    os << "product: " << (h.product > 0 ? "+1" : "-1") << "\nverdict: " << verdict << '\n';
  }
  emit(o, os.str());
  return h.split ? kPass : kNegative;
}

int cmd_integrality(const Options& o, const std::string& path) {
  const auto tol = tolerance(o);
  const rba::AnalysisReport r = rba::analyze(load(path, o, tol), tol, path);
  if (!r.integrality) throw rba::Error(rba::ErrorCode::precondition, "input failed validation");
  const auto& ig = *r.integrality;
  std::ostringstream os;
  if (o.json) {
    json j = json::parse(rba::to_json(r))["integrality"];
    os << j.dump(2) << '\n';
  } else {
    os << "integral: " << (ig.integral ? "yes" : "no") << '\n';
    for (const auto& e : ig.offending) {
      os << "  lambda(" << e.i << "," << e.j << "," << e.k << ") = " << e.value.to_string() << '\n';
    }
    if (ig.offending_count > ig.offending.size()) {
      os << "  ... " << ig.offending_count - ig.offending.size() << " more\n";
    }
    if (ig.two_adic_verdict) {
      os << "2-adic obstruction: " << *ig.two_adic_verdict << '\n';
      for (const auto& row : ig.two_adic_rows) {
        os << "  phi = (" << row.phi1.to_string() << ", " << row.phi2.to_string() << ", " << row.phi3.to_string()
           << "), -(1+2phi1+2phi2)/2 = " << row.phi3_formula.to_string() << ", v2 =";
        for (const auto& v : row.valuations) os << ' ' << (v ? std::to_string(*v) : std::string("inf"));
        os << '\n';
      }
    }
  }
  emit(o, os.str());
  return ig.integral ? kPass : kNegative;
}

int cmd_example(const Options& o, const std::string& name) {
  if (name != "rank7") throw rba::Error(rba::ErrorCode::invalid_input, "unknown example '" + name + "'");
  emit(o, rba::format_rba(rba::build_rank7_example(), "noncommutative rank-7 RBA with nu(chi) = -1"));
  return kPass;
}

int cmd_from_group(const Options& o, const std::string& path) {
  emit(o, rba::format_rba(rba::from_group(rba::read_cayley_file(path)), "group algebra of " + path));
  return kPass;
}

int cmd_from_scheme(const Options& o, const std::string& path) {
  emit(o, rba::format_rba(rba::from_scheme(rba::read_scheme_file(path)), "adjacency algebra of " + path));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reality-based algebra analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--tol", o.tol, "Residual tolerance (eps_residual)")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Random seed (overrides RBA_SEED)");
  auto* exact = app.add_flag("--exact", o.exact, "Require exact rational structure constants");
  auto* floating = app.add_flag("--float", o.floating, "Force floating-point mode");
  exact->excludes(floating);
  app.add_option("--out", o.out, "Write output to this file atomically");

  std::vector<std::string> analyze_paths;
  std::string path, a_text, b_text, example_name;

  auto* analyze = app.add_subcommand("analyze", "Full pipeline report");
  analyze->add_option("inputs", analyze_paths, ".rba file, '-' for stdin, or a directory")->required();
  auto* validate = app.add_subcommand("validate", "Check the RBA axioms");
  validate->add_option("input", path)->required();
  auto* quaternion = app.add_subcommand("quaternion", "Quaternion symbol of a one-nonreal-pair RBA");
  quaternion->add_option("input", path)->required();
  auto* hilbert = app.add_subcommand("hilbert", "Local Hilbert symbols of (a, b) over Q");
  hilbert->add_option("a", a_text)->required();
  hilbert->add_option("b", b_text)->required();
  auto* integrality = app.add_subcommand("check-integrality", "Integrality of the structure constants");
  integrality->add_option("input", path)->required();
  auto* example = app.add_subcommand("example", "Emit a bundled example as .rba");
  example->add_option("name", example_name)->required();
  auto* from_group = app.add_subcommand("from-group", "Group algebra RBA from a Cayley table");
  from_group->add_option("cayley", path)->required();
  auto* from_scheme = app.add_subcommand("from-scheme", "Adjacency algebra RBA from relation matrices");
  from_scheme->add_option("scheme", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*analyze) return cmd_analyze(o, analyze_paths);
    if (*validate) return cmd_validate(o, path);
    if (*quaternion) return cmd_quaternion(o, path);
    if (*hilbert) return cmd_hilbert(o, a_text, b_text);
    if (*integrality) return cmd_integrality(o, path);
    if (*example) return cmd_example(o, example_name);
    if (*from_group) return cmd_from_group(o, path);
    if (*from_scheme) return cmd_from_scheme(o, path);
  } catch (const rba::Error& e) {
    if (o.json) {
      std::cout << json{{"error", {{"code", std::string(rba::to_string(e.code()))}, {"message", e.what()}}}}.dump(2)
                << '\n';
    }
    std::cerr << "error[" << rba::to_string(e.code()) << "]: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
