#include "rba/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "rba/decomp.hpp"
#include "rba/error.hpp"
#include "rba/indicator.hpp"
#include "rba/integrality.hpp"
#include "rba/quaternion.hpp"

namespace rba {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxOffending = 16;

ReportCheck residual_check(std::string name, double residual, double bound, std::string detail = {}) {
  return {std::move(name), residual <= bound, residual, std::move(detail)};
}

std::string note_for(const std::string& stage, const Error& e) {
  return stage + ": " + std::string(to_string(e.code())) + ": " + e.what();
}

void add_identities(AnalysisReport& out, const Rba& rba, const Decomposition& dec, const RegularRep& reg,
                    const ToleranceConfig& tol) {
  const double eps = tol.eps_residual;
  out.identities.push_back(residual_check("regular_representation", regular_rep_residual(rba, reg), eps));

  std::vector<CentralIdempotent> idem;
  for (const auto& row : dec.table.rows) idem.push_back(row.idempotent);
  const IdempotentResiduals ir = idempotent_residuals(rba, idem);
  out.identities.push_back(residual_check("idempotent_sum", ir.sum_to_identity, eps));
  out.identities.push_back(residual_check("idempotent_square", ir.idempotence, eps));
  out.identities.push_back(residual_check("idempotent_orthogonality", ir.orthogonality, eps));
  out.identities.push_back(residual_check("multiplicity_routes", dec.table.multiplicity_route_gap, eps));

  long square_sum = 0;
  for (const auto& row : dec.table.rows) square_sum += static_cast<long>(row.degree) * row.degree;
  out.identities.push_back({"degree_square_sum", square_sum == static_cast<long>(rba.rank()), 0.0,
                            std::to_string(square_sum) + " vs rank " + std::to_string(rba.rank())});

  Scalar mn(0);
  for (const auto& row : dec.table.rows) mn += row.multiplicity_value() * Scalar(row.degree);
  const Scalar& n = dec.degrees.order;
  const double mn_gap = std::abs((mn - n).to_double());
  const bool mn_exact = mn.is_exact() && n.is_exact();
  out.identities.push_back({"multiplicity_degree_sum",
                            mn_exact ? mn.exact() == n.exact() : mn_gap <= eps * std::max(1.0, n.to_double()),
                            mn_gap, mn.to_string() + " vs order " + n.to_string()});

  double row_gap = 0.0;
  bool rows_exact_ok = true;
  bool rows_all_exact = true;
  for (std::size_t c = 1; c < dec.table.size(); ++c) {
    const Character& psi = dec.table[c];
    row_gap = std::max(row_gap, std::abs(psi.values.sum()));
    if (psi.is_exact()) {
      Rational sum = 0;
      for (const auto& v : psi.exact_values) sum += *v;
      rows_exact_ok = rows_exact_ok && sum == 0;
    } else {
      rows_all_exact = false;
    }
  }
  const bool rows_ok = rows_exact_ok && (rows_all_exact || row_gap <= eps * std::max(1.0, n.to_double()));
  out.identities.push_back({"row_sums", rows_ok, row_gap, ""});
}

void fill_characters(AnalysisReport& out, const Decomposition& dec, const std::vector<double>& raw) {
  for (std::size_t c = 0; c < dec.table.size(); ++c) {
    const Character& chi = dec.table[c];
    ReportCharacter rc;
    rc.degree = chi.degree;
    rc.multiplicity = chi.multiplicity_value();
    rc.multiplicity_solve = chi.multiplicity_solve;
    rc.nu = chi.nu;
    rc.nu_raw = c < raw.size() ? raw[c] : 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(chi.values.size()); ++i) {
      const auto v = chi.values[static_cast<Eigen::Index>(i)];
      if (chi.nu && *chi.nu == 0) {
        rc.values.push_back({Scalar(v.real()), v.imag()});
      } else {
        rc.values.push_back({chi.value(i), std::nullopt});
      }
    }
    out.characters.push_back(std::move(rc));
  }
}

void star_reps(AnalysisReport& out, const Rba& rba, const Decomposition& dec, const ToleranceConfig& tol) {
  double worst = 0.0;
  bool any = false;
  for (std::size_t c = 0; c < dec.table.size(); ++c) {
    const Character& chi = dec.table[c];
    ReportCharacter& rc = out.characters[c];
    if (!chi.nu) continue;
    if (*chi.nu == 0) {
      rc.star_rep = "complex";
      continue;
    }
    if (*chi.nu == -1) {
      rc.star_rep = "quaternionic";
      continue;
    }
    try {
      const StarRep rep = star_rep_extract(rba, dec.degrees, chi, tol);
      const StarRepResiduals res = check_star_rep(rep, rba);
      worst = std::max({worst, res.identity, res.homomorphism, res.star});
      any = true;
      rc.star_rep = "split";
      const CharpolyReport cp = charpoly_check(rep, rba, chi, tol);
      rc.charpoly_rational = cp.all_rational;
      if (cp.lemma_violation) out.notes.push_back("charpoly: rational character with irrational coefficients");
    } catch (const Error& e) {
      rc.star_rep = "failed";
      out.notes.push_back(note_for("star_rep[" + std::to_string(c) + "]", e));
    }
  }
  if (any) out.identities.push_back(residual_check("star_representations", worst, tol.eps_residual));
}

void one_pair(AnalysisReport& out, const Rba& rba, const Decomposition& dec, const IndicatorReport& ind,
              const ToleranceConfig& tol) {
  if (rba.nonreal_pairs().size() != 1 || rba.is_commutative(tol)) return;
  try {
    const OnePairAnalysis a = analyze_one_pair(rba, dec, ind, tol);
    out.one_pair_lemma = "holds";
    ReportQuaternion q;
    q.chi_index = a.verdict.chi_index;
    q.pair = a.verdict.pair;
    q.pair_star = a.verdict.pair_star;
    q.a = a.symbol.a;
    q.beta = a.symbol.beta;
    const Character& chi = dec.table[a.verdict.chi_index];
    const Scalar m = chi.multiplicity_value();
    q.xd_square = q.a.is_exact() && m.is_exact() ? q.a / (m * m) : Scalar(a.x.a / (m.to_double() * m.to_double()));
    q.ell = a.y.ell;
    q.field_mode = std::string(to_string(a.symbol.field_mode));
    q.verdict = std::string(to_string(a.symbol.overall));
    if (a.symbol.hilbert) {
      for (const auto& [place, v] : a.symbol.hilbert->values) q.hilbert.emplace_back(place.to_string(), v);
      q.hilbert_product = a.symbol.hilbert->product;
    }
    q.x_residual = a.x.scalar_residual;
    q.anticommutation_residual = a.y.anticommutation_residual;
    out.identities.push_back(residual_check("quaternion_x_scalar", a.x.scalar_residual, tol.eps_residual));
    out.identities.push_back(
        residual_check("quaternion_anticommutation", a.y.anticommutation_residual, tol.eps_residual));
    out.quaternion = std::move(q);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::lemma_violation) {
      out.one_pair_lemma = e.what();
      out.identities.push_back({"one_pair_lemma", false, 0.0, e.what()});
    } else {
      out.notes.push_back(note_for("quaternion", e));
    }
  }
}

void integrality(AnalysisReport& out, const Rba& rba, const Decomposition& dec, const IndicatorReport& ind,
                 const ToleranceConfig& tol) {
  ReportIntegrality ri;
  const IntegralityReport ic = integral_check(rba, tol);
  ri.integral = ic.integral;
  ri.offending_count = ic.offending.size();
  for (std::size_t e = 0; e < std::min(kMaxOffending, ic.offending.size()); ++e) {
    const auto& o = ic.offending[e];
    ri.offending.push_back({o.i, o.j, o.k, o.value});
  }

  std::vector<int> degrees;
  for (const auto& row : dec.table.rows) degrees.push_back(row.degree);
  if (rba.rank() == 7 && degrees == std::vector<int>{1, 1, 1, 2}) {
    try {
      out.rank7_class = rank7_trichotomy(rba, dec.table, ind);
      if (*out.rank7_class == 1) {
        const TwoAdicReport t = two_adic_obstruction(rba, dec.table, tol);
        ri.two_adic_verdict = std::string(to_string(t.verdict));
        for (const auto& row : t.rows) {
          ReportTwoAdicRow rr{row.phi1, row.phi2, row.phi3, row.phi3_formula, row.relation_holds, {}, ""};
          rr.valuations.assign(row.valuations.begin(), row.valuations.end());
          rr.verdict = std::string(to_string(row.verdict));
          ri.two_adic_rows.push_back(std::move(rr));
        }
      }
    } catch (const Error& e) {
      out.notes.push_back(note_for("rank7", e));
      if (e.code() != ErrorCode::precondition) out.identities.push_back({"rank7_trichotomy", false, 0.0, e.what()});
    }
  }
  out.integrality = std::move(ri);
}

}  // namespace

AnalysisReport analyze(const Rba& input, const ToleranceConfig& tol, const std::string& source) {
  tol.check();
  AnalysisReport out;
  out.source = source;
  out.seed = tol.rng_seed;
  out.eps_zero = tol.eps_zero;
  out.eps_cluster = tol.eps_cluster;
  out.eps_residual = tol.eps_residual;
  out.mode = input.is_exact() ? "exact" : "float";
  out.rank = input.rank();
  out.real_count = input.real_count();
  out.nonreal_pairs = input.nonreal_pairs();
  for (std::size_t i = 0; i < input.rank(); ++i) out.labels.push_back(input.label(i));

  const ValidationReport v = validate(input, tol);
  for (const auto& c : v.checks) out.validation.push_back({c.name, c.passed, c.max_residual, c.detail});
  if (!v.ok()) {
    out.notes.push_back("validation failed; later stages skipped");
    return out;
  }
  out.commutative = input.is_commutative(tol);

  const DegreeMap dm0 = degree_map(input, tol);
  const bool standard = is_standard(input, dm0, tol);
  out.standardized = !standard;
  const Rba rba = standard ? input : standardize(input, dm0).first;

  Decomposition dec = decompose(rba, tol);
  const RegularRep reg = regular_rep(rba);
  out.order = dec.degrees.order;
  out.degrees = dec.degrees.values;

  const IndicatorReport ind = indicator_report(dec.table, rba, dec.degrees, tol);
  out.s_predicted = ind.s_predicted;
  out.indicator_pattern = std::string(to_string(ind.pattern));
  out.indicator_max_deviation = ind.max_deviation;
  fill_characters(out, dec, ind.raw);

  add_identities(out, rba, dec, reg, tol);
  out.identities.push_back(residual_check("indicator_snap", ind.max_deviation, tol.eps_residual));
  out.identities.push_back({"real_count", real_count_check(ind), 0.0,
                            std::to_string(ind.s_predicted) + " vs " + std::to_string(ind.s_actual)});
  out.identities.push_back({"gap_identity", gap_identity_check(ind, rba.rank()), 0.0, ""});

  star_reps(out, rba, dec, tol);
  one_pair(out, rba, dec, ind, tol);
  integrality(out, rba, dec, ind, tol);

  out.passed = std::all_of(out.validation.begin(), out.validation.end(), [](const auto& c) { return c.passed; }) &&
               std::all_of(out.identities.begin(), out.identities.end(), [](const auto& c) { return c.passed; });
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json scalar_json(const Scalar& s) {
  if (s.is_exact()) return rational_to_string(s.exact());
  return s.to_double();
}

Scalar scalar_from(const json& j) {
  if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
  if (j.is_number_float()) return Scalar(j.get<double>());
  if (j.is_number_integer()) return Scalar(static_cast<double>(j.get<long long>()));
  throw Error(ErrorCode::parse, "expected a scalar, got " + j.dump());
}

template <class T>
json optional_json(const std::optional<T>& o) {
  return o ? json(*o) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

json check_json(const ReportCheck& c) {
  return {{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}, {"detail", c.detail}};
}

ReportCheck check_from(const json& j) {
  return {j.at("name").get<std::string>(), j.at("passed").get<bool>(), j.at("residual").get<double>(),
          j.at("detail").get<std::string>()};
}

json checks_json(const std::vector<ReportCheck>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(check_json(c));
  return a;
}

std::vector<ReportCheck> checks_from(const json& j) {
  std::vector<ReportCheck> out;
  for (const auto& c : j) out.push_back(check_from(c));
  return out;
}

json value_json(const ReportValue& v) {
  if (!v.im) return scalar_json(v.re);
  return {{"re", v.re.to_double()}, {"im", *v.im}};
}

ReportValue value_from(const json& j) {
  if (j.is_object()) return {Scalar(j.at("re").get<double>()), j.at("im").get<double>()};
  return {scalar_from(j), std::nullopt};
}

json character_json(const ReportCharacter& c) {
  json values = json::array();
  for (const auto& v : c.values) values.push_back(value_json(v));
  return {{"degree", c.degree},
          {"values", values},
          {"multiplicity", scalar_json(c.multiplicity)},
          {"multiplicity_solve", c.multiplicity_solve},
          {"nu", optional_json(c.nu)},
          {"nu_raw", c.nu_raw},
          {"star_rep", c.star_rep},
          {"charpoly_rational", optional_json(c.charpoly_rational)}};
}

ReportCharacter character_from(const json& j) {
  ReportCharacter c;
  c.degree = j.at("degree").get<int>();
  for (const auto& v : j.at("values")) c.values.push_back(value_from(v));
  c.multiplicity = scalar_from(j.at("multiplicity"));
  c.multiplicity_solve = j.at("multiplicity_solve").get<double>();
  c.nu = optional_from<int>(j.at("nu"));
  c.nu_raw = j.at("nu_raw").get<double>();
  c.star_rep = j.at("star_rep").get<std::string>();
  c.charpoly_rational = optional_from<bool>(j.at("charpoly_rational"));
  return c;
}

json quaternion_json(const ReportQuaternion& q) {
  json places = json::array();
  for (const auto& [p, v] : q.hilbert) places.push_back({{"place", p}, {"value", v}});
  return {{"chi_index", q.chi_index},
          {"pair", json::array({q.pair, q.pair_star})},
          {"a", scalar_json(q.a)},
          {"beta", scalar_json(q.beta)},
          {"xd_square", scalar_json(q.xd_square)},
          {"ell", optional_json(q.ell)},
          {"field_mode", q.field_mode},
          {"verdict", q.verdict},
          {"hilbert", places},
          {"hilbert_product", optional_json(q.hilbert_product)},
          {"x_residual", q.x_residual},
          {"anticommutation_residual", q.anticommutation_residual}};
}

ReportQuaternion quaternion_from(const json& j) {
  ReportQuaternion q;
  q.chi_index = j.at("chi_index").get<std::size_t>();
  q.pair = j.at("pair").at(0).get<std::size_t>();
  q.pair_star = j.at("pair").at(1).get<std::size_t>();
  q.a = scalar_from(j.at("a"));
  q.beta = scalar_from(j.at("beta"));
  q.xd_square = scalar_from(j.at("xd_square"));
  q.ell = optional_from<std::size_t>(j.at("ell"));
  q.field_mode = j.at("field_mode").get<std::string>();
  q.verdict = j.at("verdict").get<std::string>();
  for (const auto& p : j.at("hilbert")) {
    q.hilbert.emplace_back(p.at("place").get<std::string>(), p.at("value").get<int>());
  }
  q.hilbert_product = optional_from<int>(j.at("hilbert_product"));
  q.x_residual = j.at("x_residual").get<double>();
  q.anticommutation_residual = j.at("anticommutation_residual").get<double>();
  return q;
}

json integrality_json(const ReportIntegrality& r) {
  json off = json::array();
  for (const auto& o : r.offending) off.push_back({{"index", json::array({o.i, o.j, o.k})}, {"value", scalar_json(o.value)}});
  json rows = json::array();
  for (const auto& row : r.two_adic_rows) {
    json vals = json::array();
    for (const auto& v : row.valuations) vals.push_back(optional_json(v));
    rows.push_back({{"phi", json::array({scalar_json(row.phi1), scalar_json(row.phi2), scalar_json(row.phi3)})},
                    {"phi3_formula", scalar_json(row.phi3_formula)},
                    {"relation_holds", row.relation_holds},
                    {"valuations", vals},
                    {"verdict", row.verdict}});
  }
  return {{"integral", r.integral},
          {"offending_count", r.offending_count},
          {"offending", off},
          {"two_adic_verdict", optional_json(r.two_adic_verdict)},
          {"two_adic_rows", rows}};
}

ReportIntegrality integrality_from(const json& j) {
  ReportIntegrality r;
  r.integral = j.at("integral").get<bool>();
  r.offending_count = j.at("offending_count").get<std::size_t>();
  for (const auto& o : j.at("offending")) {
    const auto& idx = o.at("index");
    r.offending.push_back({idx.at(0).get<std::size_t>(), idx.at(1).get<std::size_t>(), idx.at(2).get<std::size_t>(),
                           scalar_from(o.at("value"))});
  }
  r.two_adic_verdict = optional_from<std::string>(j.at("two_adic_verdict"));
  for (const auto& row : j.at("two_adic_rows")) {
    ReportTwoAdicRow rr;
    const auto& phi = row.at("phi");
    rr.phi1 = scalar_from(phi.at(0));
    rr.phi2 = scalar_from(phi.at(1));
    rr.phi3 = scalar_from(phi.at(2));
    rr.phi3_formula = scalar_from(row.at("phi3_formula"));
    rr.relation_holds = row.at("relation_holds").get<bool>();
    for (const auto& v : row.at("valuations")) rr.valuations.push_back(optional_from<int>(v));
    rr.verdict = row.at("verdict").get<std::string>();
    r.two_adic_rows.push_back(std::move(rr));
  }
  return r;
}

}  // namespace

std::string to_json(const AnalysisReport& r) {
  json j;
  j["meta"] = {{"tool", r.tool},
               {"version", r.version},
               {"source", r.source},
               {"seed", r.seed},
               {"mode", r.mode},
               {"tolerance",
                {{"eps_zero", r.eps_zero}, {"eps_cluster", r.eps_cluster}, {"eps_residual", r.eps_residual}}}};
  json pairs = json::array();
  for (const auto& [a, b] : r.nonreal_pairs) pairs.push_back(json::array({a, b}));
  j["summary"] = {{"rank", r.rank},
                  {"real_count", r.real_count},
                  {"nonreal_pairs", pairs},
                  {"labels", r.labels},
                  {"commutative", r.commutative},
                  {"standardized", r.standardized},
                  {"order", r.order ? scalar_json(*r.order) : json(nullptr)}};
  j["validation"] = checks_json(r.validation);
  json degrees = json::array();
  for (const auto& d : r.degrees) degrees.push_back(scalar_json(d));
  j["degrees"] = degrees;
  json chars = json::array();
  for (const auto& c : r.characters) chars.push_back(character_json(c));
  j["characters"] = chars;
  j["indicators"] = {{"s_predicted", optional_json(r.s_predicted)},
                     {"pattern", optional_json(r.indicator_pattern)},
                     {"max_deviation", r.indicator_max_deviation}};
  j["identities"] = checks_json(r.identities);
  j["classification"] = {{"one_pair_lemma", optional_json(r.one_pair_lemma)},
                         {"rank7_class", optional_json(r.rank7_class)}};
  j["quaternion"] = r.quaternion ? quaternion_json(*r.quaternion) : json(nullptr);
  j["integrality"] = r.integrality ? integrality_json(*r.integrality) : json(nullptr);
  j["notes"] = r.notes;
  j["passed"] = r.passed;
  return j.dump(2) + "\n";
}

AnalysisReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("report JSON: ") + e.what());
  }
  try {
    AnalysisReport r;
    const auto& meta = j.at("meta");
    r.tool = meta.at("tool").get<std::string>();
    r.version = meta.at("version").get<std::string>();
    r.source = meta.at("source").get<std::string>();
    r.seed = meta.at("seed").get<std::uint64_t>();
    r.mode = meta.at("mode").get<std::string>();
    const auto& t = meta.at("tolerance");
    r.eps_zero = t.at("eps_zero").get<double>();
    r.eps_cluster = t.at("eps_cluster").get<double>();
    r.eps_residual = t.at("eps_residual").get<double>();

    const auto& s = j.at("summary");
    r.rank = s.at("rank").get<std::size_t>();
    r.real_count = s.at("real_count").get<std::size_t>();
    for (const auto& p : s.at("nonreal_pairs")) r.nonreal_pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
    r.labels = s.at("labels").get<std::vector<std::string>>();
    r.commutative = s.at("commutative").get<bool>();
    r.standardized = s.at("standardized").get<bool>();
    if (!s.at("order").is_null()) r.order = scalar_from(s.at("order"));

    r.validation = checks_from(j.at("validation"));
    for (const auto& d : j.at("degrees")) r.degrees.push_back(scalar_from(d));
    for (const auto& c : j.at("characters")) r.characters.push_back(character_from(c));
    const auto& ind = j.at("indicators");
    r.s_predicted = optional_from<long>(ind.at("s_predicted"));
    r.indicator_pattern = optional_from<std::string>(ind.at("pattern"));
    r.indicator_max_deviation = ind.at("max_deviation").get<double>();
    r.identities = checks_from(j.at("identities"));
    const auto& cl = j.at("classification");
    r.one_pair_lemma = optional_from<std::string>(cl.at("one_pair_lemma"));
    r.rank7_class = optional_from<int>(cl.at("rank7_class"));
    if (!j.at("quaternion").is_null()) r.quaternion = quaternion_from(j.at("quaternion"));
    if (!j.at("integrality").is_null()) r.integrality = integrality_from(j.at("integrality"));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.passed = j.at("passed").get<bool>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("report JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// text

namespace {

std::string value_text(const ReportValue& v) {
  if (!v.im) return v.re.to_string();
  std::ostringstream os;
  os << format_double(v.re.to_double()) << (*v.im < 0 ? "-" : "+") << format_double(std::abs(*v.im)) << "i";
  return os.str();
}

void checks_text(std::ostringstream& os, const std::vector<ReportCheck>& cs) {
  for (const auto& c : cs) {
    os << "  " << (c.passed ? "ok  " : "FAIL") << "  " << c.name << "  residual " << format_double(c.residual);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << '\n';
  }
}

}  // namespace

std::string render_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "source: " << (r.source.empty() ? "-" : r.source) << '\n';
  os << "rank " << r.rank << ", " << r.mode << " mode, s = " << r.real_count << ", nonreal pairs:";
  for (const auto& [a, b] : r.nonreal_pairs) os << " (" << a << "," << b << ")";
  if (r.nonreal_pairs.empty()) os << " none";
  os << '\n';
  if (r.order) os << "order n = " << r.order->to_string() << (r.standardized ? " (standardized)" : "") << '\n';
  os << "validation:\n";
  checks_text(os, r.validation);

  if (!r.characters.empty()) {
    os << "character table (degree, multiplicity, nu | values):\n";
    for (const auto& c : r.characters) {
      os << "  " << c.degree << "  " << c.multiplicity.to_string() << "  "
         << (c.nu ? std::to_string(*c.nu) : std::string("?")) << "  |";
      for (const auto& v : c.values) os << ' ' << value_text(v);
      os << "   [" << c.star_rep << "]\n";
    }
  }
  if (r.indicator_pattern) {
    os << "indicator pattern: " << *r.indicator_pattern << ", s = sum nu psi(b0) = " << *r.s_predicted << '\n';
  }
  if (!r.identities.empty()) {
    os << "identities:\n";
    checks_text(os, r.identities);
  }
  if (r.one_pair_lemma) os << "one-nonreal-pair lemma: " << *r.one_pair_lemma << '\n';
  if (r.rank7_class) os << "rank-7 class: s = " << *r.rank7_class << '\n';
  if (r.quaternion) {
    const auto& q = *r.quaternion;
    os << "quaternion symbol (" << q.a.to_string() << ", " << q.beta.to_string() << ") over "
       << q.field_mode << ": " << q.verdict << '\n';
    os << "  X(d)^2 = " << q.xd_square.to_string() << " I\n";
    for (const auto& [p, v] : q.hilbert) os << "  (a,b)_" << p << " = " << v << '\n';
  }
  if (r.integrality) {
    const auto& ig = *r.integrality;
    os << "integral: " << (ig.integral ? "yes" : "no");
    if (!ig.integral) os << " (" << ig.offending_count << " non-integer entries)";
    os << '\n';
    if (ig.two_adic_verdict) os << "2-adic obstruction: " << *ig.two_adic_verdict << '\n';
  }
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  os << (r.passed ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace rba
