#include "gluedforms/commands.hpp"

#include "gluedforms/parser.hpp"

#include <cctype>
#include <sstream>

namespace gluedforms {

using nlohmann::ordered_json;

namespace {

// Whitespace-separated words; brackets group, so "P2:(0, 5)" is one word.
std::vector<std::string> tokenize(const std::vector<std::string>& args) {
  std::string joined;
  for (const auto& a : args) joined += a + " ";
  std::vector<std::string> words;
  std::string cur;
  int depth = 0;
  for (char c : joined) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth <= 0 && std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) words.push_back(cur);
      cur.clear();
      depth = 0;
      continue;
    }
    cur += c;
  }
  if (depth > 0) throw UsageError("unbalanced bracket in arguments");
  return words;
}

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// Comma-separated items of "[a, b]" or "(a, b)" at bracket depth zero.
std::vector<std::string> list_items(std::string_view body) {
  std::vector<std::string> items;
  if (trimmed(body).empty()) return items;
  int depth = 0;
  std::string cur;
  for (char c : body) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      items.push_back(trimmed(cur));
      cur.clear();
      continue;
    }
    cur += c;
  }
  items.push_back(trimmed(cur));
  return items;
}

std::string_view bracket_body(std::string_view text, char open, char close, const char* what) {
  if (text.size() < 2 || text.front() != open || text.back() != close)
    throw UsageError(std::string("expected ") + what + " of the form " + open + "..." + close + ", got '" +
                     std::string(text) + "'");
  return text.substr(1, text.size() - 2);
}

Scalar parse_scalar(const std::string& text) {
  try {
    return evaluate(parse_expr(text, std::size_t{0}), std::span<const Scalar>{});
  } catch (const Error& e) {
    throw UsageError("bad number '" + text + "': " + e.what());
  }
}

Side parse_side(std::string_view tag) {
  if (tag == "P1") return Side::P1;
  if (tag == "P2") return Side::P2;
  throw UsageError("expected P1 or P2, got '" + std::string(tag) + "'");
}

struct Args {
  std::vector<std::string> words;
  std::size_t next = 0;

  bool done() const { return next >= words.size(); }
  const std::string& take(const char* what) {
    if (done()) throw UsageError(std::string("missing ") + what);
    return words[next++];
  }
  void keyword(const char* word) {
    const std::string& w = take(word);
    if (w != word) throw UsageError(std::string("expected '") + word + "', got '" + w + "'");
  }
  bool optional_keyword(const char* word) {
    if (done() || words[next] != word) return false;
    ++next;
    return true;
  }
  void finish() const {
    if (!done()) throw UsageError("unexpected argument '" + words[next] + "'");
  }
};

template <class F>
auto resolve(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
}

std::size_t parse_count(const std::string& text, const char* what) {
  std::size_t value = 0;
  std::size_t used = 0;
  try {
    value = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError(std::string("expected an integer ") + what);
  return value;
}

ordered_json scalars_json(const std::vector<Scalar>& values) {
  ordered_json a = ordered_json::array();
  for (const auto& v : values) a.push_back(v.str());
  return a;
}

ordered_json rationals_json(const std::vector<Rational>& values) {
  ordered_json a = ordered_json::array();
  for (const auto& v : values) a.push_back(to_string(v));
  return a;
}

ordered_json point_json(const PiecePoint& p) {
  ordered_json j;
  j["side"] = to_string(p.side);
  j["coords"] = rationals_json(p.coords);
  return j;
}

ordered_json covector_json(const Covector& c) {
  ordered_json j;
  j["point"] = point_json(c.base);
  j["components"] = scalars_json(c.components);
  return j;
}

bool all_exact_scalars(const std::vector<Scalar>& v) {
  for (const auto& s : v)
    if (!s.is_exact()) return false;
  return true;
}

const char* error_name(const std::exception& e) {
  if (dynamic_cast<const IncompatibleForms*>(&e)) return "IncompatibleForms";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const InvariantViolation*>(&e)) return "InvariantViolation";
  if (dynamic_cast<const DimensionError*>(&e)) return "DimensionError";
  if (dynamic_cast<const EvaluationError*>(&e)) return "EvaluationError";
  if (dynamic_cast<const ModeMismatch*>(&e)) return "ModeMismatch";
  return "Error";
}

GluedPoint glued_point(const GluedSpace& X, const PiecePoint& p) {
  if (p.coords.size() != X.piece(p.side).dim)
    throw UsageError(std::string(to_string(p.side)) + " points have " + std::to_string(X.piece(p.side).dim) +
                     (X.piece(p.side).dim == 1 ? " coordinate" : " coordinates"));
  return GluedPoint{p, false};
}

class Runner {
 public:
  Runner(const Scene& scene, const CommandOptions& options, Report& report, Args& args)
      : scene_(scene), options_(options), report_(report), args_(args) {}

  void check_compat() {
    const GluedSpace& X = glued();
    const OneForm& w1 = form();
    const OneForm& w2 = form();
    args_.finish();
    const CompatibilityResult r = check_compatible(X, w1, w2, sampling());
    report_.mode = r.mode;
    auto& j = report_.result;
    j["compatible"] = r.compatible;
    j["mode"] = to_string(r.mode);
    j["restricted"] = r.restricted.str();
    j["pulled"] = r.pulled.str();
    if (!r.compatible) j["difference"] = difference(r.restricted, r.pulled).str();
  }

  void glue_form() {
    const GluedSpace& X = glued();
    const OneForm& w1 = form();
    const OneForm& w2 = form();
    args_.finish();
    const FormPair fp = glue_forms(X, w1, w2, sampling());
    report_.mode = fp.mode();
    auto& j = report_.result;
    j["verified"] = fp.verified();
    j["w1"] = fp.w1().str();
    j["w2"] = fp.w2().str();
    j["restricted"] = restrict_to_Y(X, fp.w1()).str();
  }

  void eval_form() {
    const GluedSpace& X = glued();
    const OneForm& w1 = form();
    const OneForm& w2 = form();
    const std::string plot_text = args_.take("plot");
    std::optional<std::size_t> dim;
    if (args_.optional_keyword("dim")) dim = parse_count(args_.take("plot dimension"), "plot dimension");
    args_.finish();

    const auto colon = plot_text.find(':');
    if (colon == std::string::npos) throw UsageError("expected a plot like P1:(0, x0), got '" + plot_text + "'");
    const Side side = parse_side(plot_text.substr(0, colon));
    const auto items = list_items(bracket_body(trimmed(plot_text.substr(colon + 1)), '(', ')', "plot"));
    std::vector<Expr> comps;
    std::size_t bound = 0;
    for (const auto& item : items) {
      try {
        comps.push_back(parse_expr(item, dim ? *dim : std::size_t{64}));
      } catch (const ParseError& e) {
        throw UsageError("bad plot component '" + item + "': " + e.what());
      }
      bound = std::max(bound, comps.back().variable_bound());
    }
    const std::size_t k = dim ? *dim : std::max<std::size_t>(bound, 1);

    const FormPair fp = glue_forms(X, w1, w2, sampling());
    const Plot p = make_plot(X, side, SmoothMap(k, comps));
    const PulledForm pf = evaluate_on_plot(fp, p);
    report_.mode = fp.mode();
    auto& j = report_.result;
    j["plot"] = std::string(to_string(side)) + ":" + p.lift_map.str();
    j["domain_dim"] = k;
    j["form"] = pf.str();
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : pf.coeffs) coeffs.push_back(c.str());
    j["coefficients"] = coeffs;
  }

  void fibre() {
    const GluedSpace& X = glued();
    args_.keyword("at");
    const GluedPoint x = point(X);
    args_.finish();
    const FibreDescription fd = fibre_at(X, x);
    auto& j = report_.result;
    j["case"] = to_string(fd.point_class);
    j["dim"] = fd.dim;
    j["point"] = point_json(fd.point.rep);
    ordered_json basis = ordered_json::array();
    for (const auto& e : fd.basis) basis.push_back(scalars_json(coordinates(e)));
    j["basis"] = basis;
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < fd.constraints.rows(); ++r) rows.push_back(rationals_json(fd.constraints.row(r)));
    j["constraints"] = rows;
  }

  void oracle() {
    const GluedSpace& X = glued();
    args_.keyword("at");
    const GluedPoint x = point(X);
    unsigned degree = options_.degree;
    if (args_.optional_keyword("degree"))
      degree = static_cast<unsigned>(parse_count(args_.take("degree"), "degree"));
    args_.finish();
    if (degree == 0) throw UsageError("oracle degree must be at least 1");
    const std::size_t dim = fibre_oracle(X, x, degree);
    const FibreDescription fd = fibre_at(X, x);
    auto& j = report_.result;
    j["dim"] = dim;
    j["degree"] = degree;
    j["case"] = to_string(fd.point_class);
    j["fibre_dim"] = fd.dim;
    j["agrees"] = dim == fd.dim;
  }

  void rho() {
    const GluedSpace& X = glued();
    args_.keyword("at");
    const GluedPoint x = point(X);
    args_.keyword("element");
    const std::string element = args_.take("element coordinates");
    args_.finish();
    std::vector<Scalar> coords;
    for (const auto& item : list_items(bracket_body(element, '[', ']', "element")))
      coords.push_back(parse_scalar(item));
    const GluedPoint c = canonicalize(X, x);
    const PointClass cls = classify_point(X, c);
    const std::size_t expected =
        cls == PointClass::GlueLocus ? X.piece1.dim + X.piece2.dim : X.piece(c.rep.side).dim;
    if (coords.size() != expected)
      throw UsageError("a fibre element at this point has " + std::to_string(expected) + " coordinates");

    const FibreElement e = make_fibre_element(X, x, coords);
    auto& j = report_.result;
    j["case"] = to_string(cls);
    j["element"] = scalars_json(coordinates(e));
    std::vector<Scalar> all = coordinates(e);
    if (cls != PointClass::Interior2) {
      const Covector a = rho1(X, e);
      j["rho1"] = covector_json(a);
    } else {
      j["rho1"] = nullptr;
    }
    if (cls != PointClass::Interior1) {
      const Covector a = rho2(X, e);
      j["rho2"] = covector_json(a);
    } else {
      j["rho2"] = nullptr;
    }
    report_.mode = all_exact_scalars(all) ? VerdictMode::Exact : VerdictMode::Sampled;
  }

  void check_metric_compat() {
    const GluedSpace& X = glued();
    const PieceMetric& g1 = metric();
    const PieceMetric& g2 = metric();
    args_.finish();
    const MetricCompatibility mc = check_metrics_compatible(X, g1, g2, options_.samples, options_.seed);
    report_.mode = mc.mode;
    write_compatibility(mc);
  }

  void glue_metric_cmd() {
    const GluedSpace& X = glued();
    const PieceMetric& g1 = metric();
    const PieceMetric& g2 = metric();
    args_.finish();
    const GluedMetric gm = glue_metric(X, g1, g2, options_.samples, options_.seed);
    report_.mode = gm.compatibility.mode;
    auto& j = report_.result;
    j["g1"] = gm.g1.str();
    j["g2"] = gm.g2.str();
    j["full_rank"] = true;
    write_compatibility(gm.compatibility);
  }

  void gram_rank() {
    const GluedSpace& X = glued();
    const PieceMetric& g1 = metric();
    const PieceMetric& g2 = metric();
    args_.keyword("at");
    const GluedPoint x = point(X);
    args_.finish();
    const GluedMetric gm = glue_metric(X, g1, g2, options_.samples, options_.seed);
    const ScalarMatrix g = gram_matrix(gm, x);
    const RankResult r = scalar_rank(g);
    const FibreDescription fd = fibre_at(X, x);
    report_.mode = r.exact ? VerdictMode::Exact : VerdictMode::Sampled;
    auto& j = report_.result;
    j["case"] = to_string(fd.point_class);
    j["rank"] = r.rank;
    j["fibre_dim"] = fd.dim;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < g.rows(); ++i) rows.push_back(scalars_json(g.row(i)));
    j["gram"] = rows;
    j["metrics_compatible"] = gm.compatibility.compatible;
    j["metrics_compatible_mode"] = to_string(gm.compatibility.mode);
  }

 private:
  const GluedSpace& glued() {
    const std::string& name = args_.take("glued space name");
    return resolve([&]() -> const GluedSpace& { return scene_.glued(name); });
  }
  const OneForm& form() {
    const std::string& name = args_.take("form name");
    return resolve([&]() -> const OneForm& { return scene_.form(name); });
  }
  const PieceMetric& metric() {
    const std::string& name = args_.take("metric name");
    return resolve([&]() -> const PieceMetric& { return scene_.metric(name); });
  }
  GluedPoint point(const GluedSpace& X) { return glued_point(X, parse_piece_point(args_.take("point"))); }

  SamplingOptions sampling() const {
    SamplingOptions s;
    s.seed = options_.seed;
    s.samples = options_.samples;
    return s;
  }

  void write_compatibility(const MetricCompatibility& mc) {
    auto& j = report_.result;
    j["compatible"] = mc.compatible;
    j["mode"] = to_string(mc.mode);
    j["points_checked"] = mc.points_checked;
    j["violation"] = mc.violation ? ordered_json(*mc.violation) : ordered_json(nullptr);
  }

  const Scene& scene_;
  const CommandOptions& options_;
  Report& report_;
  Args& args_;
};

}  // namespace

PiecePoint parse_piece_point(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("expected a point like P2:(0, 5), got '" + text + "'");
  PiecePoint p;
  p.side = parse_side(trimmed(text.substr(0, colon)));
  for (const auto& item : list_items(bracket_body(trimmed(text.substr(colon + 1)), '(', ')', "point"))) {
    const Scalar s = parse_scalar(item);
    if (!s.is_exact()) throw UsageError("point coordinates must be exact rationals, got '" + item + "'");
    p.coords.push_back(s.exact());
  }
  return p;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check-compat",        "glue-form",   "eval-form",
                                              "fibre",               "oracle",      "rho",
                                              "check-metric-compat", "glue-metric", "gram-rank"};
  return names;
}

ordered_json Report::to_json() const {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["inputs"] = inputs;
  j["result"] = result.is_null() ? ordered_json::object() : result;
  j["mode"] = to_string(mode);
  j["seed"] = seed;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << command;
  for (const auto& i : inputs) out << ' ' << i;
  out << '\n';
  if (result.is_object())
    for (const auto& [key, value] : result.items())
      out << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  out << "  mode: " << to_string(mode) << '\n' << "  seed: " << seed << '\n';
  return out.str();
}

Report run_command(const Scene& scene, const std::string& command, const std::vector<std::string>& args,
                   const CommandOptions& options) {
  Report report;
  report.command = command;
  report.seed = options.seed;
  report.result = ordered_json::object();
  Args a{tokenize(args)};
  report.inputs = a.words;
  Runner run(scene, options, report, a);

  try {
    if (command == "check-compat") run.check_compat();
    else if (command == "glue-form") run.glue_form();
    else if (command == "eval-form") run.eval_form();
    else if (command == "fibre") run.fibre();
    else if (command == "oracle") run.oracle();
    else if (command == "rho") run.rho();
    else if (command == "check-metric-compat") run.check_metric_compat();
    else if (command == "glue-metric") run.glue_metric_cmd();
    else if (command == "gram-rank") run.gram_rank();
    else throw UsageError("unknown command '" + command + "'");
  } catch (const UsageError&) {
    throw;
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const Error& e) {
    report.exit_code = 1;
    report.result = ordered_json::object();
    report.result["error"] = error_name(e);
    report.result["message"] = e.what();
    if (const auto* inc = dynamic_cast<const IncompatibleForms*>(&e))
      report.result["difference"] = inc->difference().str();
  }
  return report;
}

}  // namespace gluedforms
