#include <cstdio>
#include <sstream>
#include <string>

#include "ngap/cli.hpp"
#include "ngap/errors.hpp"

namespace ngap::cli {

using nlohmann::json;

namespace {

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j.at(key).get<T>();
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_vec(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt6(v[i]);
  return s + ")";
}

std::string fmt_signs(const SignVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += std::string(i ? "," : "") + (v[i] > 0 ? "+" : "-");
  return s + ")";
}

}  // namespace

json to_json(const Report& r) {
  json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["n"] = r.n;
  j["p"] = r.p;
  put(j, "gamma", r.gamma);
  put(j, "beta", r.beta);
  put(j, "s_star", r.s_star);
  put(j, "witness", r.witness);
  j["method"] = r.method;
  j["certified"] = r.certified;

  json cc = json::object();
  put(cc, "beta_hypercube", r.cross_checks.beta_hypercube);
  put(cc, "beta_opnorm", r.cross_checks.beta_opnorm);
  put(cc, "beta_binary", r.cross_checks.beta_binary);
  put(cc, "oracle_gamma", r.cross_checks.oracle_gamma);
  put(cc, "oracle_beta", r.cross_checks.oracle_beta);
  put(cc, "formulas_agree", r.cross_checks.formulas_agree);
  put(cc, "oracle_agree", r.cross_checks.oracle_agree);
  j["cross_checks"] = cc;

  const Diagnostics& d = r.diagnostics;
  json dj;
  dj["projected_spectrum"] = d.projected_spectrum;
  dj["nonsingular"] = d.nonsingular;
  dj["min_pivot_ratio"] = d.min_pivot_ratio;
  put(dj, "ainv_u_dot_u", d.ainv_u_dot_u);
  put(dj, "M", d.m);
  put(dj, "z", d.z);
  dj["negative_type_marginal"] = d.negative_type_marginal;
  dj["strictness_marginal"] = d.strictness_marginal;
  dj["warnings"] = d.warnings;
  j["diagnostics"] = dj;

  if (r.inequality) {
    const InequalityCheck& q = *r.inequality;
    json qj;
    qj["trials"] = q.trials;
    qj["failures"] = q.failures;
    qj["max_scaled_slack"] = q.max_scaled_slack;
    put(qj, "witness_residual", q.witness_residual);
    put(qj, "maximality_confirmed", q.maximality_confirmed);
    j["inequality"] = qj;
  }
  put(j, "wall_time", r.wall_time);
  return j;
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.n = j.at("n").get<std::size_t>();
    r.p = j.at("p").get<double>();
    r.gamma = get_opt<double>(j, "gamma");
    r.beta = get_opt<double>(j, "beta");
    r.s_star = get_opt<SignVector>(j, "s_star");
    r.witness = get_opt<Vector>(j, "witness");
    r.method = j.at("method").get<std::string>();
    r.certified = j.at("certified").get<bool>();

    const json& cc = j.at("cross_checks");
    r.cross_checks.beta_hypercube = get_opt<double>(cc, "beta_hypercube");
    r.cross_checks.beta_opnorm = get_opt<double>(cc, "beta_opnorm");
    r.cross_checks.beta_binary = get_opt<double>(cc, "beta_binary");
    r.cross_checks.oracle_gamma = get_opt<double>(cc, "oracle_gamma");
    r.cross_checks.oracle_beta = get_opt<double>(cc, "oracle_beta");
    r.cross_checks.formulas_agree = get_opt<bool>(cc, "formulas_agree");
    r.cross_checks.oracle_agree = get_opt<bool>(cc, "oracle_agree");

    const json& dj = j.at("diagnostics");
    Diagnostics& d = r.diagnostics;
    d.projected_spectrum = dj.at("projected_spectrum").get<Vector>();
    d.nonsingular = dj.at("nonsingular").get<bool>();
    d.min_pivot_ratio = dj.at("min_pivot_ratio").get<double>();
    d.ainv_u_dot_u = get_opt<double>(dj, "ainv_u_dot_u");
    d.m = get_opt<double>(dj, "M");
    d.z = get_opt<Vector>(dj, "z");
    d.negative_type_marginal = dj.at("negative_type_marginal").get<bool>();
    d.strictness_marginal = dj.at("strictness_marginal").get<bool>();
    d.warnings = dj.at("warnings").get<std::vector<std::string>>();

    if (j.contains("inequality")) {
      const json& qj = j["inequality"];
      InequalityCheck q;
      q.trials = qj.at("trials").get<std::uint64_t>();
      q.failures = qj.at("failures").get<std::uint64_t>();
      q.max_scaled_slack = qj.at("max_scaled_slack").get<double>();
      q.witness_residual = get_opt<double>(qj, "witness_residual");
      q.maximality_confirmed = get_opt<bool>(qj, "maximality_confirmed");
      r.inequality = q;
    }
    r.wall_time = get_opt<double>(j, "wall_time");
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("report: ") + e.what());
  }
}

std::string emit_machine(const Report& r) { return to_json(r).dump(2) + "\n"; }

Report parse_machine(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return report_from_json(j);
}

std::string emit_text(const Report& r) {
  std::ostringstream o;
  o << "points      " << r.n << "\n";
  o << "p           " << fmt6(r.p) << "\n";
  o << "verdict     " << to_string(r.verdict) << "\n";
  if (r.gamma) o << "gamma       " << fmt6(*r.gamma) << "\n";
  if (r.beta) o << "beta        " << fmt6(*r.beta) << "   [" << r.method << (r.certified ? "" : ", NOT certified") << "]\n";
  if (r.s_star) o << "s*          " << fmt_signs(*r.s_star) << "\n";
  if (r.witness) o << "witness y0  " << fmt_vec(*r.witness) << "\n";

  const CrossChecks& c = r.cross_checks;
  if (c.beta_hypercube || c.beta_opnorm || c.beta_binary) {
    o << "cross-checks\n";
    if (c.beta_hypercube) o << "  beta (hypercube)     " << fmt6(*c.beta_hypercube) << "\n";
    if (c.beta_opnorm) o << "  beta (inf->1 norm)   " << fmt6(*c.beta_opnorm) << "\n";
    if (c.beta_binary) o << "  beta (4 x binary)    " << fmt6(*c.beta_binary) << "\n";
    if (c.formulas_agree) o << "  formulas agree       " << (*c.formulas_agree ? "yes" : "NO") << "\n";
  }
  if (c.oracle_gamma) {
    o << "  closed-form gamma    " << fmt6(*c.oracle_gamma);
    if (c.oracle_agree) o << (*c.oracle_agree ? "  (agrees)" : "  (MISMATCH)");
    o << "\n";
  }

  const Diagnostics& d = r.diagnostics;
  o << "diagnostics\n";
  o << "  spectrum on F        " << fmt_vec(d.projected_spectrum) << "\n";
  o << "  nonsingular          " << (d.nonsingular ? "yes" : "no") << " (min pivot ratio " << fmt6(d.min_pivot_ratio) << ")\n";
  if (d.ainv_u_dot_u) o << "  (A^-1 u|u)           " << fmt6(*d.ainv_u_dot_u) << "\n";
  if (d.m) o << "  M                    " << fmt6(*d.m) << "\n";
  if (d.negative_type_marginal) o << "  note: negative-type test is numerically marginal\n";
  if (d.strictness_marginal) o << "  note: strictness test is numerically marginal\n";
  for (const auto& w : d.warnings) o << "  warning: " << w << "\n";

  if (r.inequality) {
    const InequalityCheck& q = *r.inequality;
    o << "gap inequality\n";
    o << "  trials " << q.trials << ", failures " << q.failures << ", max scaled slack " << fmt6(q.max_scaled_slack) << "\n";
    if (q.witness_residual) o << "  witness residual     " << fmt6(*q.witness_residual) << "\n";
    if (q.maximality_confirmed) o << "  maximality           " << (*q.maximality_confirmed ? "confirmed" : "NOT confirmed") << "\n";
  }
  if (r.wall_time) o << "wall time   " << fmt6(*r.wall_time) << " s\n";
  return o.str();
}

}  // namespace ngap::cli
