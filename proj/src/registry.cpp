#include "tyurin/registry.hpp"

#include "tyurin/errors.hpp"
#include "tyurin/ifunctions.hpp"
#include "tyurin/invariants.hpp"
#include "tyurin/periods.hpp"
#include "tyurin/picard_fuchs.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <future>
#include <set>
#include <sstream>
#include <thread>

namespace tyurin {

const char* const kVersion = "0.1.0";

const std::vector<CheckGroup>& check_groups() {
  static const std::vector<CheckGroup> groups = {
      {"fi-product", "functional-invariant product relations, both cases"},
      {"period-glue", "period Hadamard gluings: general, both, conifold, quintic, first block"},
      {"ifn-glue", "I-function gluings and coefficient identities"},
      {"pf-annihilate", "Picard-Fuchs operators on periods, catalogue and I-functions"},
      {"reconstruct", "residue of the pulled-back period against the direct series"},
      {"rel-i0", "relative I0 extraction against the LG I-functions"},
      {"hurwitz", "Hurwitz normal forms of the glued invariants"},
      {"lg-normal-form", "LG changes of variable of the first block"},
      {"negative-controls", "deliberate corruptions that must fail", false},
  };
  return groups;
}

ToricCI resolve_toric(const RunConfig& c) {
  if (c.inlineData) return *c.inlineData;
  return example(c.example);
}

std::vector<std::string> selected_groups(const RunConfig& c) {
  std::vector<std::string> out;
  for (const auto& g : check_groups()) {
    bool want = c.checks.empty()
                    ? g.byDefault
                    : std::find(c.checks.begin(), c.checks.end(), g.id) != c.checks.end();
    if (want) out.push_back(g.id);
  }
  return out;
}

namespace {

Frame frame_for(const RunConfig& c, const ToricCI& t, GlueCase k) {
  auto f = make_frame(k == GlueCase::Both ? both_blowup_base(t) : t, k, c.qOrder, c.q0Order);
  if (!c.autoWindow && c.window) f.window = *c.window;
  return f;
}

CheckResult shifted_period_control(int order) {
  auto f = make_frame(quintic_p4(), GlueCase::General, order, order);
  const auto& qs = f.t.qNames;
  auto lhs = hadamard_q(f0_X(f), f0_X0(f), qs);
  auto x1 = mul(f0_X1(f), Series::monomial(f.ctx(true), nullptr, {{f.y, 1}}));
  auto rhs = constant_term_y(hadamard_q(x1, f0_tX2(f), qs), f.y);
  return compare_series("", lhs, rhs, order, "X1 multiplied by y");
}

CheckResult wrong_solution_control(int order) {
  TruncationSpec tr;
  tr.maxTotalDegQ = order + 1;
  auto ctx = make_context(VarTable({"t"}, {}), tr);
  PFSystem sys{"catalogue-N3", {catalogue(3).op}, {}};
  auto r = verify_annihilation(sys, catalogue_holomorphic(catalogue(2), ctx), order);
  r.note = "N=3 operator on the N=2 holomorphic solution";
  return r;
}

void add_example_tasks(std::vector<Task>& out, const std::string& group, const RunConfig& c,
                       const ToricCI& t) {
  const std::string base = group + "/" + t.label + "/";
  for (auto k : {GlueCase::General, GlueCase::Both}) {
    const std::string id = base + to_string(k);
    if (group == "fi-product") {
      out.push_back({id, [t, k] {
                       return check_product_relation(k == GlueCase::Both ? both_blowup_base(t) : t, k);
                     }});
    } else if (group == "period-glue") {
      out.push_back({id, [c, t, k] { return verify_period_gluing(frame_for(c, t, k)); }});
    } else if (group == "reconstruct") {
      out.push_back({id, [c, t, k] { return verify_reconstruction(frame_for(c, t, k)); }});
    } else if (group == "ifn-glue") {
      out.push_back({id, [c, t, k] {
                       auto f = frame_for(c, t, k);
                       auto a = default_ialgebra(f.t, k, 3, c.algebraOrders);
                       auto r = verify_I_gluing(f, a);
                       std::string mod = "mod";
                       for (const auto& g : a.source->generators())
                         mod += " " + g.name + "^" + std::to_string(g.order);
                       r.note = r.note.empty() ? mod : mod + "; " + r.note;
                       return r;
                     }});
    }
  }
}

void add_group(std::vector<Task>& out, const std::string& g, const RunConfig& c, const ToricCI& t) {
  const int n = c.qOrder;
  if (g == "fi-product") {
    add_example_tasks(out, g, c, t);
  } else if (g == "period-glue") {
    add_example_tasks(out, g, c, t);
    out.push_back({"period-glue/conifold", [n] { return verify_conifold_period_gluing(n); }});
    for (int e : {1, 4})
      out.push_back({"period-glue/quintic-e" + std::to_string(e),
                     [n, e] { return verify_quintic_period_gluing(e, n); }});
    out.push_back({"period-glue/quintic-iterative", [n] { return verify_quintic_iterative(n); }});
    for (int k : {2, 3})
      out.push_back({"period-glue/first-block/n=" + std::to_string(k),
                     [n, k] { return verify_first_block(k, n); }});
  } else if (g == "ifn-glue") {
    add_example_tasks(out, g, c, t);
    out.push_back({"ifn-glue/conifold", [n] { return verify_conifold_I_gluing(n); }});
    for (int e : {1, 4})
      out.push_back({"ifn-glue/quintic-e" + std::to_string(e),
                     [n, e] { return verify_quintic_I_gluing(e, n); }});
    for (int b = 0; b <= 1; ++b)
      for (int a = 0; a <= 2; ++a)
        out.push_back({"ifn-glue/coeff-H" + std::to_string(a) + "P" + std::to_string(b),
                       [n, a, b] { return coefficient_identity(a, b, n); }});
    out.push_back({"ifn-glue/dual-route", [n] { return verify_I_dual_route(n); }});
  } else if (g == "pf-annihilate") {
    const int n2 = 2 * n;
    out.push_back({"pf-annihilate/k3", [n2] { return verify_k3_ode(n2); }});
    out.push_back({"pf-annihilate/tq5", [n] { return verify_tq5_system(n); }});
    out.push_back({"pf-annihilate/lg", [n] { return verify_lg_systems(n); }});
    for (int N : {2, 3, 4})
      for (bool lg : {false, true})
        out.push_back({"pf-annihilate/catalogue-N" + std::to_string(N) + (lg ? "/log" : "/holomorphic"),
                       [N, lg, n2] { return verify_catalogue(N, lg, n2); }});
    out.push_back({"pf-annihilate/operator-identity", [] { return verify_operator_identity(); }});
    out.push_back({"pf-annihilate/kodaira-j-parse", [] { return verify_kodaira_parse(); }});
    for (const std::string k : {"k3", "tq5", "lg-tx1", "lg-tx2"})
      out.push_back({"pf-annihilate/I-" + k, [k, n] { return verify_I_annihilation(k, n); }});
  } else if (g == "reconstruct") {
    add_example_tasks(out, g, c, t);
  } else if (g == "rel-i0") {
    out.push_back({"rel-i0/X1", [n] { return verify_relative_I0(RelSide::X1, n); }});
    out.push_back({"rel-i0/X2", [n] { return verify_relative_I0(RelSide::X2, n); }});
  } else if (g == "hurwitz") {
    out.push_back({"hurwitz/all-updated", [] { return verify_hurwitz_all(6, HurwitzVersion::Updated); }});
    out.push_back({"hurwitz/all-original", [] { return verify_hurwitz_all(4, HurwitzVersion::Original); }});
    out.push_back({"hurwitz/quintic-limit", [] { return verify_quintic_limit(); }});
    out.push_back({"hurwitz/conifold-rewrite", [] { return verify_conifold_rewrite(); }});
  } else if (g == "lg-normal-form") {
    for (auto side : {LGSide::X1, LGSide::X2})
      for (int k = 1; k <= 3; ++k)
        out.push_back({std::string("lg-normal-form/") + (side == LGSide::X1 ? "X1" : "X2") +
                           "/n=" + std::to_string(k),
                       [side, k] { return verify_lg_normal_form(side, k); }});
  } else if (g == "negative-controls") {
    // controls need at least one nontrivial degree to fail on
    const int m = std::max(n, 2);
    out.push_back({"negative-controls/fi-product-perturbed",
                   [t] { return check_product_relation(t, GlueCase::General, true); }});
    out.push_back({"negative-controls/period-glue-shifted", [m] { return shifted_period_control(m); }});
    out.push_back({"negative-controls/ifn-glue-wrong-image",
                   [m] { return verify_quintic_I_gluing(1, m, 2); }});
    out.push_back({"negative-controls/pf-wrong-solution", [m] { return wrong_solution_control(m); }});
    out.push_back({"negative-controls/pf-lg-mod-P2",
                   [m] { return verify_I_annihilation("lg-tx1", m, 2); }});
    out.push_back({"negative-controls/hurwitz-literal-sign", [] {
                     return verify_hurwitz({1, 1}, {1}, HurwitzVersion::OriginalLiteral);
                   }});
  }
}

CheckResult run_task(const Task& task, const std::string& extraNote) {
  auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = task.run();
  } catch (const WindowTooSmall& e) {
    r = skipped_result(task.id, std::string("window too small: ") + e.what());
  } catch (const std::exception& e) {
    r = skipped_result(task.id, std::string("error: ") + e.what());
  }
  r.checkId = task.id;
  r.wallTime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!extraNote.empty()) r.note = r.note.empty() ? extraNote : r.note + "; " + extraNote;
  return r;
}

} // namespace

std::vector<Task> plan(const RunConfig& c) {
  auto t = resolve_toric(c);
  std::vector<Task> out;
  for (const auto& g : selected_groups(c)) add_group(out, g, c, t);
  return out;
}

bool Report::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed(); });
}

int worker_count() {
  int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("TYURIN_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, hw));
  }
  return hw;
}

Report run(const RunConfig& c) {
  validate_config(c);
  auto t = resolve_toric(c);
  Report rep;
  rep.config = c;
  rep.label = t.label;
  rep.untestedRegime = t.dimension() == 1;
  auto tasks = plan(c);
  const std::string flag = rep.untestedRegime ? "untested regime: dimension 1" : "";
  const std::string exampleMark = "/" + t.label + "/";

  rep.results.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      bool fromExample = tasks[i].id.find(exampleMark) != std::string::npos;
      rep.results[i] = run_task(tasks[i], fromExample ? flag : "");
    }
  };
  const int w = std::min<int>(worker_count(), static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::future<void>> pool;
  for (int k = 1; k < w; ++k) pool.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : pool) f.get();
  return rep;
}

namespace {

using nlohmann::json;

template <class T>
T get_field(const json& j, const std::string& key, const std::string& path, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + key, "wrong type");
  }
}

std::vector<int> int_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of integers");
  std::vector<int> v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer())
      throw ConfigError(path + "[" + std::to_string(i) + "]", "expected an integer");
    v.push_back(j[i].get<int>());
  }
  return v;
}

std::vector<std::string> string_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of strings");
  std::vector<std::string> v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string())
      throw ConfigError(path + "[" + std::to_string(i) + "]", "expected a string");
    v.push_back(j[i].get<std::string>());
  }
  return v;
}

const std::set<std::string> kConfigKeys = {"example",    "toric",  "checks",        "qOrder",
                                           "q0Order",    "autoWindow", "window",    "algebraOrders",
                                           "report"};

} // namespace

ToricCI parse_toric(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const std::string p = path + ".";
  for (const char* k : {"r", "matrix", "groups", "refinement"})
    if (!j.contains(k)) throw ConfigError(p + k, "missing");
  ToricCI t;
  t.r = get_field<int>(j, "r", p, 0);
  const auto& m = j.at("matrix");
  if (!m.is_array()) throw ConfigError(p + "matrix", "expected an array of rows");
  for (std::size_t i = 0; i < m.size(); ++i)
    t.matrix.push_back(int_list(m[i], p + "matrix[" + std::to_string(i) + "]"));
  const auto& g = j.at("groups");
  if (!g.is_array()) throw ConfigError(p + "groups", "expected an array of groups");
  for (std::size_t i = 0; i < g.size(); ++i)
    t.groups.push_back(int_list(g[i], p + "groups[" + std::to_string(i) + "]"));
  const auto& ref = j.at("refinement");
  if (!ref.is_array() || ref.size() != 2) throw ConfigError(p + "refinement", "expected [S1, S2]");
  t.s1 = int_list(ref[0], p + "refinement[0]");
  t.s2 = int_list(ref[1], p + "refinement[1]");
  auto names = [&](const char* key, const std::string& stem) {
    if (j.contains(key)) return string_list(j.at(key), p + key);
    std::vector<std::string> v;
    for (int i = 1; i <= t.r; ++i) v.push_back(stem + std::to_string(i));
    return v;
  };
  t.qNames = names("qNames", "q");
  t.pNames = t.r == 1 && !j.contains("pNames") ? std::vector<std::string>{"H"} : names("pNames", "p");
  t.label = get_field<std::string>(j, "label", p, "inline");
  for (const auto& v : validate(t)) throw ConfigError(p + v.field, v.message);
  return t;
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("$", "config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!kConfigKeys.count(k)) throw ConfigError(k, "unknown field");
  RunConfig c;
  c.example = get_field<std::string>(j, "example", "", c.example);
  if (j.contains("toric")) c.inlineData = parse_toric(j.at("toric"));
  if (j.contains("checks")) c.checks = string_list(j.at("checks"), "checks");
  c.qOrder = get_field<int>(j, "qOrder", "", c.qOrder);
  c.q0Order = get_field<int>(j, "q0Order", "", c.q0Order);
  c.autoWindow = get_field<bool>(j, "autoWindow", "", c.autoWindow);
  if (j.contains("window")) {
    const auto& w = j.at("window");
    if (!w.is_object() || !w.contains("lo") || !w.contains("hi"))
      throw ConfigError("window", "expected {\"lo\": int, \"hi\": int}");
    c.window = Window{get_field<int>(w, "lo", "window.", 0), get_field<int>(w, "hi", "window.", 0)};
  }
  if (j.contains("algebraOrders")) {
    const auto& a = j.at("algebraOrders");
    if (!a.is_object()) throw ConfigError("algebraOrders", "expected an object");
    for (const auto& [k, v] : a.items()) {
      if (!v.is_number_integer()) throw ConfigError("algebraOrders." + k, "expected an integer");
      c.algebraOrders[k] = v.get<int>();
    }
  }
  c.report = get_field<std::string>(j, "report", "", c.report);
  validate_config(c);
  return c;
}

void validate_config(const RunConfig& c) {
  if (c.qOrder < 0) throw ConfigError("qOrder", "must be >= 0");
  if (c.q0Order < 0) throw ConfigError("q0Order", "must be >= 0");
  if (c.report != "text" && c.report != "json") throw ConfigError("report", "must be text or json");
  for (std::size_t i = 0; i < c.checks.size(); ++i) {
    const auto& g = check_groups();
    if (std::none_of(g.begin(), g.end(), [&](const CheckGroup& x) { return x.id == c.checks[i]; }))
      throw ConfigError("checks[" + std::to_string(i) + "]", "unknown check '" + c.checks[i] + "'");
  }
  if (!c.autoWindow && !c.window) throw ConfigError("window", "required when autoWindow is false");
  if (c.window && c.window->lo > 0) throw ConfigError("window.lo", "must be <= 0");
  if (c.window && c.window->hi < 0) throw ConfigError("window.hi", "must be >= 0");
  for (const auto& [k, v] : c.algebraOrders)
    if (v < 1) throw ConfigError("algebraOrders." + k, "must be >= 1");
  if (!c.inlineData) {
    try {
      example(c.example);
    } catch (const UnknownExample& e) {
      throw ConfigError("example", e.what());
    }
  }
}

json to_json(const CheckResult& r, bool wallTime) {
  json j;
  j["checkId"] = r.checkId;
  j["status"] = to_string(r.status);
  j["maxDegreeChecked"] = r.maxDegreeChecked;
  if (r.firstMismatch) {
    json e = json::object();
    for (const auto& [k, v] : r.firstMismatch->exponent) e[k] = v;
    j["firstMismatch"] = {{"exponent", e},
                          {"monomial", r.firstMismatch->monomial},
                          {"lhs", r.firstMismatch->lhs},
                          {"rhs", r.firstMismatch->rhs}};
  } else {
    j["firstMismatch"] = nullptr;
  }
  if (wallTime) j["wallTime"] = r.wallTime;
  j["note"] = r.note;
  return j;
}

json to_json(const Report& r, bool wallTime) {
  const auto& c = r.config;
  json cfg;
  cfg["example"] = c.inlineData ? json(nullptr) : json(c.example);
  cfg["label"] = r.label;
  cfg["checks"] = selected_groups(c);
  cfg["qOrder"] = c.qOrder;
  cfg["q0Order"] = c.q0Order;
  cfg["autoWindow"] = c.autoWindow;
  cfg["window"] = c.window ? json{{"lo", c.window->lo}, {"hi", c.window->hi}} : json(nullptr);
  cfg["algebraOrders"] = json(c.algebraOrders);
  cfg["untestedRegime"] = r.untestedRegime;
  json res = json::array();
  for (const auto& x : r.results) res.push_back(to_json(x, wallTime));
  return {{"config", cfg}, {"results", res}, {"version", kVersion}};
}

std::string to_text(const Report& r) {
  std::size_t w = 8;
  for (const auto& x : r.results) w = std::max(w, x.checkId.size());
  std::ostringstream os;
  os << "tyurin " << kVersion << "  example " << r.label << "  qOrder " << r.config.qOrder
     << "  q0Order " << r.config.q0Order << (r.untestedRegime ? "  [untested regime]" : "") << "\n";
  auto pad = [](std::string s, std::size_t n) {
    s.resize(std::max(n, s.size()), ' ');
    return s;
  };
  os << pad("check", w) << "  " << pad("status", 7) << "  deg  " << pad("time", 8) << "  note\n";
  int pass = 0;
  for (const auto& x : r.results) {
    char t[32];
    std::snprintf(t, sizeof t, "%.3fs", x.wallTime);
    os << pad(x.checkId, w) << "  " << pad(to_string(x.status), 7) << "  "
       << pad(std::to_string(x.maxDegreeChecked), 3) << "  " << pad(t, 8) << "  " << x.note << "\n";
    if (x.firstMismatch) {
      os << pad("", w) << "    first mismatch at";
      for (const auto& [k, v] : x.firstMismatch->exponent) os << " " << k << "^" << v;
      os << " [" << x.firstMismatch->monomial << "]: " << x.firstMismatch->lhs << " != "
         << x.firstMismatch->rhs << "\n";
    }
    pass += x.passed();
  }
  os << pass << "/" << r.results.size() << " passed\n";
  return os.str();
}

} // namespace tyurin
