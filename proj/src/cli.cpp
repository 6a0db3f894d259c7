#include "pptd/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pptd/bounds.hpp"
#include "pptd/code_lp.hpp"
#include "pptd/errors.hpp"
#include "pptd/fidelity.hpp"
#include "pptd/state_io.hpp"
#include "pptd/states.hpp"
#include "pptd/symmetry_lp.hpp"

namespace pptd::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSdpProvenance =
    "p.p.t. fidelity SDP: max Tr(F rho) over 0 <= F <= 1, -1/K <= F^Gamma <= 1/K";

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_number(v).c_str(), nullptr);
}

Json numbers(const RVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(number(v(i)));
  return arr;
}

template <typename T>
const T& need(const std::optional<T>& v, const char* flag, const std::string& sub) {
  if (!v) throw InvalidArgument(sub + " requires " + flag);
  return *v;
}

// Builds the input state from --state or --family; records what was used.
DensityMatrix resolve_state(const RunConfig& cfg, Json& doc) {
  const std::string& sub = cfg.subcommand;
  if (!cfg.state_path.empty()) {
    if (!cfg.family.empty()) throw InvalidArgument("give either --state or --family, not both");
    doc["state"] = cfg.state_path;
    return read_state_file(cfg.state_path);
  }
  if (cfg.family.empty()) throw InvalidArgument(sub + " requires --state or --family");
  doc["family"] = cfg.family;
  if (cfg.family == "isotropic") {
    const int d = need(cfg.d, "--d", sub);
    const double f = need(cfg.f, "--f", sub);
    doc["d"] = d;
    doc["f"] = number(f);
    return isotropic_state(d, f);
  }
  if (cfg.family == "werner") {
    const int d = need(cfg.d, "--d", sub);
    const double p = need(cfg.p, "--p", sub);
    doc["d"] = d;
    doc["p"] = number(p);
    return werner_state(d, p);
  }
  if (cfg.family == "maxent") {
    const int d = need(cfg.d, "--d", sub);
    doc["d"] = d;
    return max_entangled(d);
  }
  if (cfg.family == "max-correlated") {
    if (cfg.alpha_path.empty()) throw InvalidArgument("family max-correlated requires --alpha");
    doc["alpha"] = cfg.alpha_path;
    return max_correlated_state(read_correlation_file(cfg.alpha_path));
  }
  throw InvalidArgument("unknown family '" + cfg.family + "'");
}

std::optional<double> closed_form_fidelity(const RunConfig& cfg, double K) {
  if (!cfg.state_path.empty()) return std::nullopt;
  if (cfg.family == "isotropic") return fidelity_isotropic_closed(*cfg.d, *cfg.f, K);
  if (cfg.family == "maxent") return fidelity_maxent_closed(*cfg.d, K);
  if (cfg.family == "werner" && *cfg.p == 1.0) return fidelity_werner1_closed(*cfg.d, K);
  return std::nullopt;
}

Json do_fidelity(const RunConfig& cfg) {
  Json doc;
  doc["subcommand"] = "fidelity";
  const DensityMatrix rho = resolve_state(cfg, doc);
  const double K = need(cfg.K, "--K", cfg.subcommand);
  doc["K"] = number(K);
  const FidelityResult r = fidelity_ppt(rho, K, cfg.tol);
  doc["value"] = number(r.value);
  doc["dual_value"] = number(r.dual_value);
  doc["gap"] = number(r.gap);
  doc["dual_bound"] = number(dual_bound(rho, K, r.dual_D));
  doc["iterations"] = r.iterations;
  doc["provenance"] = kSdpProvenance;
  if (const auto closed = closed_form_fidelity(cfg, K)) {
    doc["closed_form"] = number(*closed);
    if (cfg.family == "isotropic") {
      doc["closed_form_provenance"] = "isotropic fidelity: 1/K, 1/K + (fd-1)/(d-1) (1-1/K), fd/K";
    } else if (cfg.family == "maxent") {
      doc["closed_form_provenance"] = "maximally entangled input: min(1, d/K)";
    } else {
      doc["closed_form_provenance"] = "antisymmetric Werner state: min(1, (d+2)/(dK))";
    }
  }
  return doc;
}

Json do_power_lp(const RunConfig& cfg, bool werner) {
  const std::string& sub = cfg.subcommand;
  const int d = need(cfg.d, "--d", sub);
  const int n = need(cfg.n, "--n", sub);
  const double K = need(cfg.K, "--K", sub);
  Json doc;
  doc["subcommand"] = sub;
  doc["d"] = d;
  PowerLpResult r = [&] {
    if (werner) {
      const double p = need(cfg.p, "--p", sub);
      doc["p"] = number(p);
      return werner_power_lp(d, p, n, K, cfg.tol);
    }
    const double f = need(cfg.f, "--f", sub);
    doc["f"] = number(f);
    return isotropic_power_lp(d, f, n, K, cfg.tol);
  }();
  doc["n"] = n;
  doc["K"] = number(K);
  doc["value"] = number(r.value);
  doc["dual_value"] = number(r.report.dual_value);
  doc["B"] = numbers(r.B.coeffs());
  doc["S"] = numbers(r.S.coeffs());
  doc["pivots"] = r.report.iterations;
  doc["provenance"] = werner
                          ? "Werner tensor-power LP over invariant block polynomials of F^Gamma"
                          : "isotropic tensor-power LP over invariant block polynomials of F";
  return doc;
}

Json do_bounds(const RunConfig& cfg) {
  Json doc;
  doc["subcommand"] = "bounds";
  std::vector<BoundReport> reports;
  if (cfg.state_path.empty() && cfg.family == "isotropic") {
    doc["family"] = "isotropic";
    doc["d"] = need(cfg.d, "--d", cfg.subcommand);
    doc["f"] = number(need(cfg.f, "--f", cfg.subcommand));
    reports = isotropic_bounds(*cfg.d, *cfg.f);
  } else if (cfg.state_path.empty() && cfg.family == "werner") {
    doc["family"] = "werner";
    doc["d"] = need(cfg.d, "--d", cfg.subcommand);
    doc["p"] = number(need(cfg.p, "--p", cfg.subcommand));
    reports = werner_bounds(*cfg.d, *cfg.p);
  } else if (cfg.state_path.empty() && cfg.family == "max-correlated") {
    if (cfg.alpha_path.empty()) throw InvalidArgument("family max-correlated requires --alpha");
    doc["family"] = "max-correlated";
    doc["alpha"] = cfg.alpha_path;
    reports = max_correlated_bounds(read_correlation_file(cfg.alpha_path));
  } else {
    reports = state_bounds(resolve_state(cfg, doc));
  }
  doc["consistent"] = bounds_consistent(reports);
  Json rows = Json::array();
  for (const auto& b : reports) {
    Json row;
    row["name"] = b.name;
    row["kind"] = std::string(to_string(b.kind));
    row["value"] = number(b.value);
    row["provenance"] = b.provenance;
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

Json enumerator_json(const EnumeratorSet& e) {
  Json out;
  out["A_prime"] = numbers(e.A_prime.coeffs());
  out["S"] = numbers(e.S_poly.coeffs());
  out["B"] = numbers(e.B_poly.coeffs());
  out["A"] = numbers(e.A_poly.coeffs());
  return out;
}

constexpr const char* kCodeProvenance =
    "LP bound for quantum codes: S_C, B_C, A_C, B_C - A_C/K coefficientwise >= 0; "
    "[x^n]A_C = 1 and A_j = K B_j for j < d (Shor-Laflamme distance condition)";

Json do_code_lp(const RunConfig& cfg) {
  const std::string& sub = cfg.subcommand;
  const CodeParams params{need(cfg.n, "--n", sub), need(cfg.K, "--K", sub),
                          need(cfg.d_min, "--d", sub), cfg.alphabet};
  const CodeLpOutcome o = code_lp_feasible(params);
  Json doc;
  doc["subcommand"] = "code-lp";
  doc["n"] = params.n;
  doc["K"] = number(params.K_dim);
  doc["d"] = params.d_min;
  doc["alphabet"] = params.k_alphabet;
  doc["verdict"] = std::string(to_string(o.verdict));
  doc["residual"] = number(o.residual);
  doc["verified"] = o.verified;
  if (o.enumerators) doc["enumerators"] = enumerator_json(*o.enumerators);
  if (o.certificate.size() > 0) doc["certificate"] = numbers(o.certificate);
  doc["provenance"] = kCodeProvenance;
  return doc;
}

Json do_code_table(const RunConfig& cfg) {
  Json doc;
  doc["subcommand"] = "code-table";
  doc["n_max"] = cfg.n_max;
  doc["alphabet"] = cfg.alphabet;
  doc["provenance"] = kCodeProvenance;
  Json rows = Json::array();
  for (const auto& o : code_lp_table(cfg.n_max, cfg.alphabet)) {
    Json row;
    row["n"] = o.params.n;
    row["K"] = number(o.params.K_dim);
    row["d"] = o.params.d_min;
    row["verdict"] = std::string(to_string(o.verdict));
    row["residual"] = number(o.residual);
    row["verified"] = o.verified;
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "nan";
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  return v.dump();
}

void flatten(const std::string& prefix, const Json& v, std::vector<std::pair<std::string, Json>>& out) {
  if (v.is_object()) {
    for (const auto& [key, item] : v.items()) {
      flatten(prefix.empty() ? key : prefix + "." + key, item, out);
    }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      flatten(prefix + "[" + std::to_string(i) + "]", v[i], out);
    }
  } else {
    out.emplace_back(prefix, v);
  }
}

// Table outputs become one CSV line per row with a leading header; single
// results become field,value lines.
void write_csv(const Json& doc, std::ostream& out) {
  if (doc.contains("rows")) {
    const Json& rows = doc["rows"];
    if (rows.empty()) return;
    bool first = true;
    for (const auto& [key, _] : rows[0].items()) {
      out << (first ? "" : ",") << key;
      first = false;
    }
    out << '\n';
    for (const auto& row : rows) {
      first = true;
      for (const auto& [_, v] : row.items()) {
        out << (first ? "" : ",") << csv_cell(v);
        first = false;
      }
      out << '\n';
    }
    return;
  }
  std::vector<std::pair<std::string, Json>> fields;
  flatten("", doc, fields);
  out << "field,value\n";
  for (const auto& [key, v] : fields) out << key << ',' << csv_cell(v) << '\n';
}

void write_json(const Json& doc, std::ostream& out) {
  // dump() prints the shortest round-trip form of the already rounded doubles.
  out << doc.dump(2) << '\n';
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  // Avoid printing -0.
  if (std::string(buf) == "-0") return "0";
  return buf;
}

double default_tolerance() {
  const char* env = std::getenv("PPT_DISTILL_TOL");
  if (env == nullptr || *env == '\0') return solver::kDefaultTolerance;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v >= kMinTolerance && v <= kMaxTolerance)) {
    throw InvalidArgument(std::string("PPT_DISTILL_TOL must be a number in [1e-10, 1e-3], got '") +
                          env + "'");
  }
  return v;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"p.p.t. distillation fidelities, symmetry LPs, entanglement bounds and code LPs",
               "pptd"};
  app.require_subcommand(1);
  std::optional<double> tol;
  std::string format;
  app.add_option("--tol", tol, "solver tolerance in [1e-10, 1e-3]")
      ->check(CLI::Range(kMinTolerance, kMaxTolerance));
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto state_opts = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "isotropic | werner | maxent | max-correlated")
        ->check(CLI::IsMember({"isotropic", "werner", "maxent", "max-correlated"}));
    sub->add_option("--state", cfg.state_path, "state JSON file");
    sub->add_option("--alpha", cfg.alpha_path, "correlation matrix JSON (max-correlated)");
    sub->add_option("--d", cfg.d, "local dimension");
    sub->add_option("--f", cfg.f, "isotropic fidelity");
    sub->add_option("--p", cfg.p, "Werner antisymmetric weight");
  };

  auto* fid = app.add_subcommand("fidelity", "F_Gamma(rho; K) by SDP");
  state_opts(fid);
  fid->add_option("--K", cfg.K, "target dimension");

  auto* iso = app.add_subcommand("isotropic-lp", "F_Gamma(I_d(f)^n; K) by LP");
  iso->add_option("--d", cfg.d)->required();
  iso->add_option("--f", cfg.f)->required();
  iso->add_option("--n", cfg.n)->required();
  iso->add_option("--K", cfg.K)->required();

  auto* wer = app.add_subcommand("werner-lp", "F_Gamma(W_d(p)^n; K) by LP");
  wer->add_option("--d", cfg.d)->required();
  wer->add_option("--p", cfg.p)->required();
  wer->add_option("--n", cfg.n)->required();
  wer->add_option("--K", cfg.K)->required();

  auto* bnd = app.add_subcommand("bounds", "upper and lower bounds on D_Gamma");
  state_opts(bnd);

  auto* clp = app.add_subcommand("code-lp", "LP bound feasibility for ((n, K, d))");
  clp->add_option("--n", cfg.n)->required();
  clp->add_option("--K", cfg.K)->required();
  clp->add_option("--d", cfg.d_min, "minimum distance")->required();
  clp->add_option("--alphabet", cfg.alphabet, "alphabet size k")->capture_default_str();

  auto* tab = app.add_subcommand("code-table", "code LP verdicts over a parameter grid");
  tab->add_option("--n-max", cfg.n_max)->capture_default_str();
  tab->add_option("--alphabet", cfg.alphabet)->capture_default_str();

  auto* st = app.add_subcommand("state", "write a named family state as JSON");
  state_opts(st);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.tol = tol ? *tol : default_tolerance();
    if (!format.empty()) cfg.format = format == "csv" ? Format::Csv : Format::Json;
    const Format fmt =
        cfg.format.value_or(cfg.subcommand == "code-table" ? Format::Csv : Format::Json);

    if (cfg.subcommand == "state") {
      if (fmt == Format::Csv) throw InvalidArgument("state output is JSON only");
      Json ignored;
      out << write_state(resolve_state(cfg, ignored)) << '\n';
      return kExitOk;
    }

    static const std::map<std::string, std::function<Json(const RunConfig&)>> handlers{
        {"fidelity", do_fidelity},
        {"isotropic-lp", [](const RunConfig& c) { return do_power_lp(c, false); }},
        {"werner-lp", [](const RunConfig& c) { return do_power_lp(c, true); }},
        {"bounds", do_bounds},
        {"code-lp", do_code_lp},
        {"code-table", do_code_table},
    };
    Json doc = handlers.at(cfg.subcommand)(cfg);
    doc["tolerance"] = number(cfg.tol);
    if (fmt == Format::Csv) {
      write_csv(doc, out);
    } else {
      write_json(doc, out);
    }
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolverError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitSolverError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("pptd");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pptd::cli
