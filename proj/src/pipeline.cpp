#include "folred/pipeline.hpp"

#include <chrono>
#include <functional>
#include <map>

#include "folred/holonomy.hpp"
#include "folred/normal_form.hpp"
#include "folred/pair.hpp"
#include "folred/parse.hpp"
#include "folred/seidenberg.hpp"
#include "json.hpp"

namespace folred {

namespace {

using Json = nlohmann::ordered_json;

struct Context {
  const InputDocument& doc;
  const PipelineConfig& cfg;
  Json inputs = Json::array();
  std::string dot;
};

const InputSlot& require(const InputDocument& doc, const std::string& label, std::size_t index) {
  const InputSlot* s = doc.find(label, index);
  if (!s) fail(ErrorCode::precondition, "missing input slot '" + label + "'");
  return *s;
}

FoliationGerm germ_slot(Context& cx, const std::string& label, std::size_t index) {
  const InputSlot& s = require(cx.doc, label, index);
  ParsedGerm g = parse_germ(s.text, s.line);
  cx.inputs.push_back({{"slot", label},
                       {"text", s.text},
                       {"kind", g.kind == InputKind::form ? "form" : "field"},
                       {"germ", print_germ(g.germ)}});
  return g.germ;
}

Json opt_scalar(const std::optional<Scalar>& s) { return s ? Json(s->to_string()) : Json(nullptr); }

Json linear_json(const LinearClass& lc) {
  Json j{{"tag", to_string(lc.tag)}, {"lambda", opt_scalar(lc.lambda)}};
  if (lc.tag == LinearTag::resonant_rational_negative) {
    j["p"] = lc.p;
    j["q"] = lc.q;
  }
  Json dirs = Json::array();
  for (const auto& d : lc.directions) dirs.push_back({{"line", d.line.to_string()}, {"eigenvalue", d.eigenvalue.to_string()}});
  j["eigen_directions"] = dirs;
  return j;
}

Json tree_json(const ReductionTree& t) {
  Json nodes = Json::array();
  for (const auto& n : t.nodes) {
    Json info = Json::object();
    for (const auto& [k, v] : n.info) info[k] = v;
    nodes.push_back({{"id", n.id},
                     {"parent", n.parent},
                     {"depth", n.depth},
                     {"path", n.path},
                     {"point", n.point ? Json(n.point->to_string()) : Json(nullptr)},
                     {"expanded", n.expanded},
                     {"dicritical", n.dicritical},
                     {"label", n.label},
                     {"info", info}});
  }
  return nodes;
}

Json invariants_json(const NormalFormInvariants& inv) {
  Json j{{"lambda_class", to_string(inv.cls)}, {"lambda", inv.lambda.to_string()}};
  if (inv.cls != LambdaClass::irrational) {
    j["p"] = inv.p;
    j["q"] = inv.q;
  }
  j["linearizable"] = inv.linearizable;
  if (!inv.linearizable) {
    j["k"] = inv.k;
    j["alpha"] = inv.alpha.to_string();
  }
  j["order"] = inv.order;
  return j;
}

Json map_json(const PlaneMap& m) { return {{"x", m.x.to_string()}, {"y", m.y.to_string()}}; }

Json run_classify(Context& cx) {
  FoliationGerm f = germ_slot(cx, "F", 0);
  Json j = linear_json(linear_classify(f));
  j["multiplicity"] = f.multiplicity();
  j["reduced"] = is_reduced(linear_classify(f).tag);
  return j;
}

ReduceOptions reduce_options(const PipelineConfig& cfg) {
  ReduceOptions o;
  o.order = cfg.order;
  o.depth_limit = cfg.depth_limit;
  return o;
}

Json run_seidenberg(Context& cx) {
  FoliationGerm f = germ_slot(cx, "F", 0);
  ReductionTree t = seidenberg_reduce(f, reduce_options(cx.cfg));
  cx.dot = t.to_dot("seidenberg");
  Json leaves = Json::array();
  for (int id : t.leaves()) {
    const TreeNode& n = t.nodes[id];
    Json info = Json::object();
    for (const auto& [k, v] : n.info) info[k] = v;
    leaves.push_back({{"node", id}, {"path", n.path}, {"label", n.label}, {"info", info}});
  }
  return {{"depth", t.depth()},
          {"nodes", static_cast<int>(t.nodes.size())},
          {"leaves", leaves},
          {"tree", tree_json(t)}};
}

Json run_pair(Context& cx) {
  FoliationGerm f1 = germ_slot(cx, "F1", 0), f2 = germ_slot(cx, "F2", 1);
  PairReductionReport r = pair_reduce(f1, f2, reduce_options(cx.cfg));
  cx.dot = r.tree.to_dot("pair_reduction");
  Json leaves = Json::array();
  for (const auto& l : r.leaves) {
    Json e{{"node", l.node}, {"path", r.tree.nodes[l.node].path}, {"type", to_string(l.type.tag)}, {"detail", l.type.to_string()}};
    if (l.type.k) e["k"] = l.type.k;
    if (l.type.l) e["l"] = l.type.l;
    leaves.push_back(e);
  }
  return {{"depth", r.depth},
          {"nodes", static_cast<int>(r.tree.nodes.size())},
          {"opposite_saddle_node_blowups", r.opposite_saddle_node_blowups},
          {"leaves", leaves},
          {"tree", tree_json(r.tree)}};
}

Json normal_form_json(const NormalFormResult& r) {
  Json stages = Json::array();
  for (const auto& s : r.transform.stages) {
    Json terms = Json::array();
    for (const auto& t : s.terms)
      terms.push_back({{"m", t.m}, {"n", t.n}, {"target", t.target.to_string()}, {"divisor", t.divisor.to_string()},
                       {"chosen", t.chosen.to_string()}});
    stages.push_back({{"kind", s.kind}, {"n", s.n}, {"terms", terms}});
  }
  int shown = std::min(r.transform.g.x_order(), r.transform.g.y_order());
  return {{"invariants", invariants_json(r.inv)},
          {"straightening",
           {{"identity", r.straightening.identity},
            {"separatrix", r.straightening.delta.to_string()},
            {"x_map", r.straightening.identity ? "x" : r.straightening.x_map.to_string()},
            {"y_map", r.straightening.identity ? "y" : r.straightening.y_map.to_string()}}},
          {"transform", {{"identity", r.transform.is_identity()}, {"g", r.transform.g.to_jet(shown).to_string()}, {"stages", stages}}},
          {"model", {{"scale", r.scale.to_string()}, {"f", r.model.f.to_jet(shown).to_string()}}}};
}

Json run_normal_form(Context& cx) {
  FoliationGerm f = germ_slot(cx, "F", 0);
  return normal_form_json(formal_normalize(f, cx.cfg.order));
}

Json run_holonomy(Context& cx) {
  FoliationGerm f = germ_slot(cx, "F", 0);
  NormalFormResult r = formal_normalize(f, cx.cfg.order);
  HolonomyJet h = holonomy_jet(r.inv, cx.cfg.order);
  DiffeoFormalClass c = diffeo_formal_invariants(h.phi);
  Json cls{{"multiplier", c.multiplier.to_string()}, {"periodic", c.periodic}};
  if (c.contact) {
    cls["contact"] = c.contact;
    cls["k"] = c.k;
    cls["leading"] = c.leading.to_string();
    cls["normalized"] = c.normalized.to_string();
    cls["ratio"] = c.ratio.to_string();
    cls["alpha"] = opt_scalar(c.alpha);
  }
  return {{"invariants", invariants_json(r.inv)},
          {"unit", "tau = -2*i*pi"},
          {"multiplier", h.phi.multiplier.to_string()},
          {"field", h.field.to_string()},
          {"tangent", h.phi.tangent.to_string()},
          {"iterate", h.iterate.to_string()},
          {"formal_class", cls}};
}

Json run_conjugacy(Context& cx) {
  FoliationGerm f = germ_slot(cx, "F", 0), g = germ_slot(cx, "G", 1);
  ConjugacyDecision d = formal_conjugacy_decide(f, g, cx.cfg.order);
  return {{"conjugate", d.conjugate},
          {"invariants_f", invariants_json(d.inv_f)},
          {"invariants_g", invariants_json(d.inv_g)},
          {"verified", d.verified},
          {"verified_through", cx.cfg.order - 1},
          {"note", d.note},
          {"transform", d.transform ? map_json(*d.transform) : Json(nullptr)}};
}

Json run_verify(Context& cx) {
  const InputSlot& ms = require(cx.doc, "phi", 99);
  PlaneMap phi = parse_map(ms.text, ms.line);
  cx.inputs.push_back({{"slot", "phi"}, {"text", ms.text}, {"map", print_map(phi)}});
  bool pair = cx.doc.find("F1", 99) || cx.doc.find("F2", 99);
  bool ok;
  if (pair) {
    FoliationGerm f1 = germ_slot(cx, "F1", 0), f2 = germ_slot(cx, "F2", 1);
    FoliationGerm g1 = germ_slot(cx, "G1", 2), g2 = germ_slot(cx, "G2", 3);
    ok = verify_pair_conjugacy(phi, f1, f2, g1, g2, cx.cfg.order);
  } else {
    FoliationGerm f = germ_slot(cx, "F", 0), g = germ_slot(cx, "G", 1);
    ok = wedge_vanishes(f, g, phi, cx.cfg.order);
  }
  return {{"pair", pair}, {"conjugate", ok}, {"verified_through", cx.cfg.order - 1}};
}

const std::map<std::string, std::function<Json(Context&)>>& table() {
  static const std::map<std::string, std::function<Json(Context&)>> t{
      {"classify", run_classify},           {"seidenberg", run_seidenberg},     {"pair-reduce", run_pair},
      {"normal-form", run_normal_form},     {"holonomy", run_holonomy},         {"conjugacy-decide", run_conjugacy},
      {"verify-conjugacy", run_verify}};
  return t;
}

}  // namespace

const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> names{"classify",    "seidenberg",       "pair-reduce",     "normal-form",
                                              "holonomy",    "conjugacy-decide", "verify-conjugacy"};
  return names;
}

PipelineReport run_pipeline(const std::string& document, const PipelineConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  PipelineReport out;
  Json report{{"schema_version", kReportSchemaVersion},
              {"pipeline", cfg.pipeline},
              {"config", {{"order", cfg.order}, {"depth_limit", cfg.depth_limit}}}};
  Json result;
  std::string message;
  Json inputs = Json::array();
  try {
    auto it = table().find(cfg.pipeline);
    if (it == table().end()) fail(ErrorCode::precondition, "unknown pipeline '" + cfg.pipeline + "'");
    if (cfg.order < 1) fail(ErrorCode::precondition, "order must be positive");
    if (cfg.depth_limit < 0) fail(ErrorCode::precondition, "depth limit must be non-negative");
    InputDocument doc = parse_document(document);
    Context cx{doc, cfg, Json::array(), {}};
    try {
      result = it->second(cx);
    } catch (...) {
      inputs = cx.inputs;
      throw;
    }
    inputs = cx.inputs;
    out.dot = cx.dot;
  } catch (const Error& e) {
    out.status = e.code();
    message = e.what();
  } catch (const std::exception& e) {
    out.status = ErrorCode::internal;
    message = e.what();
  }
  report["input"] = inputs;
  if (out.status == ErrorCode::ok) {
    report["status"] = "ok";
    report["result"] = result;
  } else {
    report["status"] = "error";
    report["error"] = {{"code", std::string(to_string(out.status))}, {"code_value", static_cast<int>(out.status)}, {"message", message}};
  }
  if (cfg.timing) {
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report["timing"] = {{"total_ms", ms}};
  }
  out.json = report.dump(2) + "\n";
  return out;
}

}  // namespace folred
