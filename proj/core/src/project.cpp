#include "moolts/project.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <utility>

#include "moolts/moo_parser.hpp"

namespace moolts::proj {

namespace {

using ojson = nlohmann::ordered_json;
using env::BoundedType;

[[noreturn]] void fail(const std::string& at, const std::string& msg) {
  throw ProjectError(at + ": " + msg);
}

const ojson& need(const ojson& j, const std::string& at, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(at, std::string("missing required key '") + key + "'");
  return *it;
}

void check_keys(const ojson& j, const std::string& at,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(at, "expected an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        ok = true;
        break;
      }
    if (!ok) fail(at, "unknown key '" + item.key() + "'");
  }
}

std::string get_string(const ojson& j, const std::string& at) {
  if (!j.is_string()) fail(at, "expected a string");
  return j.get<std::string>();
}

std::int64_t get_int(const ojson& j, const std::string& at) {
  if (!j.is_number_integer()) fail(at, "expected an integer");
  return j.get<std::int64_t>();
}

bool get_bool(const ojson& j, const std::string& at) {
  if (!j.is_boolean()) fail(at, "expected a boolean");
  return j.get<bool>();
}

const ojson& get_array(const ojson& j, const std::string& at) {
  if (!j.is_array()) fail(at, "expected an array");
  return j;
}

const ojson& get_object(const ojson& j, const std::string& at) {
  if (!j.is_object()) fail(at, "expected an object");
  return j;
}

// ---------------------------------------------------------------------------
// Values. Plain JSON covers numbers, booleans, null (void) and arrays
// (ordered sets); the string-like kinds are tagged one-key objects so that
// enum literals, process ids and string values stay distinguishable.

scpp::Value parse_value(const ojson& j, const std::string& at) {
  if (j.is_null()) return scpp::Value::void_value();
  if (j.is_boolean()) return scpp::Value::boolean(j.get<bool>());
  if (j.is_number_integer()) return scpp::Value::number(j.get<std::int64_t>());
  if (j.is_array()) {
    std::vector<scpp::Value> elems;
    std::size_t i = 0;
    for (const auto& e : j) {
      elems.push_back(parse_value(e, at + "/" + std::to_string(i)));
      ++i;
    }
    return scpp::Value::ordered_set(std::move(elems));
  }
  if (j.is_object()) {
    if (j.size() != 1)
      fail(at, "tagged value must have exactly one of 'enum', 'proc', 'string'");
    const auto& key = j.items().begin().key();
    const auto& val = j.items().begin().value();
    if (key == "enum") return scpp::Value::enum_lit(get_string(val, at + "/enum"));
    if (key == "proc") return scpp::Value::ptype(get_string(val, at + "/proc"));
    if (key == "string") return scpp::Value::string(get_string(val, at + "/string"));
    fail(at, "unknown value tag '" + key + "'");
  }
  if (j.is_string())
    fail(at, "bare strings are ambiguous; write {\"string\": ...}, {\"enum\": ...} or "
             "{\"proc\": ...}");
  fail(at, "not a representable value");
}

ojson value_to_json(const scpp::Value& v, const std::string& at) {
  using K = scpp::Value::Kind;
  switch (v.kind()) {
    case K::Void:
      return nullptr;
    case K::Boolean:
      return v.boolean_value();
    case K::Number:
      return v.number_value();
    case K::OrderedSet: {
      ojson a = ojson::array();
      for (const auto& e : v.elements()) a.push_back(value_to_json(e, at));
      return a;
    }
    case K::Enum:
      return ojson{{"enum", v.enum_literal()}};
    case K::PType:
      return ojson{{"proc", v.proc()}};
    case K::String:
      return ojson{{"string", v.string_literal()}};
    default:
      fail(at, "value kind not representable in a project file");
  }
}

// ---------------------------------------------------------------------------
// Bounds.

BoundedType parse_bound(const ojson& j, const std::string& at) {
  if (!j.is_object()) fail(at, "expected a bound object");
  std::string type = get_string(need(j, at, "type"), at + "/type");
  try {
    if (type == "number") {
      check_keys(j, at, {"type", "values", "ranges"});
      std::vector<BoundedType::Range> rs;
      if (auto it = j.find("values"); it != j.end()) {
        for (const auto& e : get_array(*it, at + "/values")) {
          std::int64_t c = get_int(e, at + "/values");
          rs.push_back({c, c, 1});
        }
      }
      if (auto it = j.find("ranges"); it != j.end()) {
        std::size_t i = 0;
        for (const auto& e : get_array(*it, at + "/ranges")) {
          std::string rat = at + "/ranges/" + std::to_string(i++);
          check_keys(e, rat, {"lo", "hi", "step"});
          BoundedType::Range r;
          r.lo = get_int(need(e, rat, "lo"), rat + "/lo");
          r.hi = get_int(need(e, rat, "hi"), rat + "/hi");
          if (auto s = e.find("step"); s != e.end()) r.step = get_int(*s, rat + "/step");
          rs.push_back(r);
        }
      }
      if (rs.empty()) fail(at, "number bound needs 'values' or 'ranges'");
      return BoundedType::number_ranges(std::move(rs));
    }
    if (type == "bool") {
      check_keys(j, at, {"type", "values"});
      if (auto it = j.find("values"); it != j.end()) {
        bool allow_true = false, allow_false = false;
        for (const auto& e : get_array(*it, at + "/values"))
          (get_bool(e, at + "/values") ? allow_true : allow_false) = true;
        if (!allow_true && !allow_false) fail(at + "/values", "empty boolean bound");
        return BoundedType::boolean(allow_true, allow_false);
      }
      return BoundedType::boolean();
    }
    if (type == "void") {
      check_keys(j, at, {"type"});
      return BoundedType::void_only();
    }
    if (type == "set") {
      check_keys(j, at, {"type", "sizes", "element"});
      std::vector<std::int64_t> sizes;
      for (const auto& e : get_array(need(j, at, "sizes"), at + "/sizes"))
        sizes.push_back(get_int(e, at + "/sizes"));
      return BoundedType::ordered_set(std::move(sizes),
                                      parse_bound(need(j, at, "element"), at + "/element"));
    }
    if (type == "ptype") {
      check_keys(j, at, {"type", "category"});
      return BoundedType::ptype(get_string(need(j, at, "category"), at + "/category"));
    }
    if (type == "enum") {
      check_keys(j, at, {"type", "name", "values"});
      std::vector<std::string> lits;
      for (const auto& e : get_array(need(j, at, "values"), at + "/values"))
        lits.push_back(get_string(e, at + "/values"));
      return BoundedType::enumeration(get_string(need(j, at, "name"), at + "/name"),
                                      std::move(lits));
    }
    if (type == "string") {
      check_keys(j, at, {"type", "values"});
      std::vector<std::string> lits;
      for (const auto& e : get_array(need(j, at, "values"), at + "/values"))
        lits.push_back(get_string(e, at + "/values"));
      return BoundedType::strings(std::move(lits));
    }
  } catch (const env::ConfigError& e) {
    fail(at, e.what());
  }
  fail(at + "/type", "unknown bound type '" + type + "' (number|bool|void|set|ptype|enum|string)");
}

ojson bound_to_json(const BoundedType& b, const std::string& at) {
  using K = BoundedType::Kind;
  ojson j = ojson::object();
  switch (b.kind) {
    case K::Number: {
      j["type"] = "number";
      ojson values = ojson::array(), ranges = ojson::array();
      for (const auto& r : b.ranges) {
        if (r.lo == r.hi && r.step == 1) {
          values.push_back(r.lo);
        } else {
          ojson ro;
          ro["lo"] = r.lo;
          ro["hi"] = r.hi;
          if (r.step != 1) ro["step"] = r.step;
          ranges.push_back(std::move(ro));
        }
      }
      if (!values.empty()) j["values"] = std::move(values);
      if (!ranges.empty()) j["ranges"] = std::move(ranges);
      return j;
    }
    case K::Boolean:
      j["type"] = "bool";
      if (!(b.allow_true && b.allow_false)) {
        ojson values = ojson::array();
        if (b.allow_false) values.push_back(false);
        if (b.allow_true) values.push_back(true);
        j["values"] = std::move(values);
      }
      return j;
    case K::Void:
      j["type"] = "void";
      return j;
    case K::OrderedSet: {
      j["type"] = "set";
      j["sizes"] = b.set_sizes;
      if (!b.element) fail(at, "set bound without an element bound");
      j["element"] = bound_to_json(*b.element, at + "/element");
      return j;
    }
    case K::PType:
      j["type"] = "ptype";
      j["category"] = b.category;
      return j;
    case K::Enum:
      j["type"] = "enum";
      j["name"] = b.enum_name;
      j["values"] = b.enum_literals;
      return j;
    case K::String:
      j["type"] = "string";
      j["values"] = b.string_literals;
      return j;
    case K::Unknown:
      fail(at, "bound of unknown type cannot be saved");
  }
  fail(at, "corrupt bound");
}

// ---------------------------------------------------------------------------
// Stub configuration.

StubConfig parse_stub_config(const ojson& j, const std::string& at) {
  StubConfig cfg;
  if (auto it = j.find("returnBounds"); it != j.end()) {
    for (const auto& item : get_object(*it, at + "/returnBounds").items())
      cfg.return_bounds.emplace(item.key(),
                                parse_bound(item.value(), at + "/returnBounds/" + item.key()));
  }
  if (auto it = j.find("canThrow"); it != j.end()) {
    for (const auto& item : get_object(*it, at + "/canThrow").items())
      cfg.can_throw.emplace(item.key(), get_bool(item.value(), at + "/canThrow/" + item.key()));
  }
  if (auto it = j.find("loadBounds"); it != j.end()) {
    for (const auto& item : get_object(*it, at + "/loadBounds").items())
      cfg.load_bounds.emplace(item.key(),
                              parse_bound(item.value(), at + "/loadBounds/" + item.key()));
  }
  return cfg;
}

void stub_config_to_json(ojson& j, const StubConfig& cfg, const std::string& at) {
  if (!cfg.return_bounds.empty()) {
    ojson o = ojson::object();
    for (const auto& [f, b] : cfg.return_bounds) o[f] = bound_to_json(b, at + "/returnBounds");
    j["returnBounds"] = std::move(o);
  }
  if (!cfg.can_throw.empty()) {
    ojson o = ojson::object();
    for (const auto& [f, t] : cfg.can_throw) o[f] = t;
    j["canThrow"] = std::move(o);
  }
  if (!cfg.load_bounds.empty()) {
    ojson o = ojson::object();
    for (const auto& [f, b] : cfg.load_bounds) o[f] = bound_to_json(b, at + "/loadBounds");
    j["loadBounds"] = std::move(o);
  }
}

// ---------------------------------------------------------------------------
// Custom FSMs.

env::FsmTransition parse_fsm_transition(const ojson& j, const std::string& at) {
  env::FsmTransition t;
  std::string on = get_string(need(j, at, "on"), at + "/on");
  t.from = get_string(need(j, at, "from"), at + "/from");
  t.to = get_string(need(j, at, "to"), at + "/to");
  if (on == "call") {
    check_keys(j, at, {"on", "from", "to", "func", "args", "returns", "throws"});
    t.trigger = env::FsmTransition::Trigger::Call;
    t.func = get_string(need(j, at, "func"), at + "/func");
    if (auto it = j.find("args"); it != j.end()) {
      std::vector<scpp::Value> args;
      std::size_t i = 0;
      for (const auto& e : get_array(*it, at + "/args"))
        args.push_back(parse_value(e, at + "/args/" + std::to_string(i++)));
      t.args = std::move(args);
    }
    if (auto it = j.find("throws"); it != j.end()) t.throws = get_bool(*it, at + "/throws");
    if (auto it = j.find("returns"); it != j.end()) {
      if (t.throws) fail(at, "a throwing transition cannot also declare 'returns'");
      t.return_value = parse_value(*it, at + "/returns");
    }
    return t;
  }
  if (on == "load") {
    check_keys(j, at, {"on", "from", "to", "field", "value"});
    t.trigger = env::FsmTransition::Trigger::Load;
    t.field = get_string(need(j, at, "field"), at + "/field");
    t.value = parse_value(need(j, at, "value"), at + "/value");
    return t;
  }
  if (on == "store") {
    check_keys(j, at, {"on", "from", "to", "field", "value"});
    t.trigger = env::FsmTransition::Trigger::Store;
    t.field = get_string(need(j, at, "field"), at + "/field");
    if (auto it = j.find("value"); it != j.end()) t.value = parse_value(*it, at + "/value");
    return t;
  }
  fail(at + "/on", "unknown trigger '" + on + "' (call|load|store)");
}

ojson fsm_transition_to_json(const env::FsmTransition& t, const std::string& at) {
  ojson j;
  switch (t.trigger) {
    case env::FsmTransition::Trigger::Call:
      j["on"] = "call";
      j["from"] = t.from;
      j["to"] = t.to;
      j["func"] = t.func;
      if (t.args) {
        ojson a = ojson::array();
        for (const auto& v : *t.args) a.push_back(value_to_json(v, at));
        j["args"] = std::move(a);
      }
      if (t.throws)
        j["throws"] = true;
      else if (t.return_value.kind() != scpp::Value::Kind::Void)
        j["returns"] = value_to_json(t.return_value, at);
      return j;
    case env::FsmTransition::Trigger::Load:
      j["on"] = "load";
      j["from"] = t.from;
      j["to"] = t.to;
      j["field"] = t.field;
      j["value"] = value_to_json(*t.value, at);
      return j;
    case env::FsmTransition::Trigger::Store:
      j["on"] = "store";
      j["from"] = t.from;
      j["to"] = t.to;
      j["field"] = t.field;
      if (t.value) j["value"] = value_to_json(*t.value, at);
      return j;
  }
  fail(at, "corrupt transition");
}

env::CustomFsm parse_fsm(const ojson& j, const std::string& at) {
  check_keys(j, at, {"states", "initial", "transitions"});
  env::CustomFsm m;
  for (const auto& e : get_array(need(j, at, "states"), at + "/states"))
    m.states.push_back(get_string(e, at + "/states"));
  m.initial = get_string(need(j, at, "initial"), at + "/initial");
  std::size_t i = 0;
  for (const auto& e : get_array(need(j, at, "transitions"), at + "/transitions"))
    m.transitions.push_back(
        parse_fsm_transition(e, at + "/transitions/" + std::to_string(i++)));
  return m;
}

ojson fsm_to_json(const env::CustomFsm& m, const std::string& at) {
  ojson j;
  j["states"] = m.states;
  j["initial"] = m.initial;
  ojson ts = ojson::array();
  for (const auto& t : m.transitions) ts.push_back(fsm_transition_to_json(t, at));
  j["transitions"] = std::move(ts);
  return j;
}

// ---------------------------------------------------------------------------
// Instances, top interface, limits.

InstanceSpec parse_instance(const ojson& j, const std::string& at) {
  InstanceSpec s;
  std::string kind = get_string(need(j, at, "kind"), at + "/kind");
  if (kind == "transformed") {
    check_keys(j, at, {"kind", "class", "fields", "members"});
    s.kind = InstanceSpec::Kind::Transformed;
    s.cls = get_string(need(j, at, "class"), at + "/class");
    if (auto it = j.find("fields"); it != j.end()) {
      for (const auto& item : get_object(*it, at + "/fields").items())
        s.fields.emplace_back(item.key(),
                              parse_value(item.value(), at + "/fields/" + item.key()));
    }
    if (auto it = j.find("members"); it != j.end()) {
      for (const auto& item : get_object(*it, at + "/members").items())
        s.members.emplace_back(item.key(),
                               get_string(item.value(), at + "/members/" + item.key()));
    }
    return s;
  }
  if (kind == "stub") {
    check_keys(j, at, {"kind", "class"});
    s.kind = InstanceSpec::Kind::Stub;
    s.cls = get_string(need(j, at, "class"), at + "/class");
    return s;
  }
  if (kind == "fsm") {
    check_keys(j, at, {"kind", "fsm"});
    s.kind = InstanceSpec::Kind::Fsm;
    s.fsm = get_string(need(j, at, "fsm"), at + "/fsm");
    return s;
  }
  fail(at + "/kind", "unknown instance kind '" + kind + "' (transformed|stub|fsm)");
}

ojson instance_to_json(const InstanceSpec& s, const std::string& at) {
  ojson j;
  switch (s.kind) {
    case InstanceSpec::Kind::Transformed: {
      j["kind"] = "transformed";
      j["class"] = s.cls;
      if (!s.fields.empty()) {
        ojson o = ojson::object();
        for (const auto& [name, v] : s.fields) o[name] = value_to_json(v, at + "/fields");
        j["fields"] = std::move(o);
      }
      if (!s.members.empty()) {
        ojson o = ojson::object();
        for (const auto& [name, id] : s.members) o[name] = id;
        j["members"] = std::move(o);
      }
      return j;
    }
    case InstanceSpec::Kind::Stub:
      j["kind"] = "stub";
      j["class"] = s.cls;
      return j;
    case InstanceSpec::Kind::Fsm:
      j["kind"] = "fsm";
      j["fsm"] = s.fsm;
      return j;
  }
  fail(at, "corrupt instance");
}

env::TopInterfaceSpec parse_top(const ojson& j, const std::string& at) {
  check_keys(j, at, {"funcs", "fields", "sequence"});
  env::TopInterfaceSpec top;
  if (auto it = j.find("sequence"); it != j.end()) {
    if (j.contains("funcs") || j.contains("fields"))
      fail(at, "'sequence' excludes 'funcs' and 'fields'");
    std::size_t i = 0;
    for (const auto& e : get_array(*it, at + "/sequence")) {
      std::string cat = at + "/sequence/" + std::to_string(i++);
      check_keys(e, cat, {"func", "args"});
      env::TopScriptCall call;
      call.func = get_string(need(e, cat, "func"), cat + "/func");
      if (auto a = e.find("args"); a != e.end()) {
        std::size_t k = 0;
        for (const auto& v : get_array(*a, cat + "/args"))
          call.args.push_back(parse_value(v, cat + "/args/" + std::to_string(k++)));
      }
      top.sequence.push_back(std::move(call));
    }
    if (top.sequence.empty()) fail(at + "/sequence", "empty call sequence");
    return top;
  }
  if (auto it = j.find("funcs"); it != j.end()) {
    std::size_t i = 0;
    for (const auto& e : get_array(*it, at + "/funcs")) {
      std::string fat = at + "/funcs/" + std::to_string(i++);
      check_keys(e, fat, {"func", "argBounds", "throwsTerminates"});
      env::TopFuncSpec fn;
      fn.func = get_string(need(e, fat, "func"), fat + "/func");
      if (auto a = e.find("argBounds"); a != e.end()) {
        std::size_t k = 0;
        for (const auto& b : get_array(*a, fat + "/argBounds"))
          fn.arg_bounds.push_back(parse_bound(b, fat + "/argBounds/" + std::to_string(k++)));
      }
      if (auto tt = e.find("throwsTerminates"); tt != e.end())
        fn.throws_terminates = get_bool(*tt, fat + "/throwsTerminates");
      top.funcs.push_back(std::move(fn));
    }
  }
  if (auto it = j.find("fields"); it != j.end()) {
    std::size_t i = 0;
    for (const auto& e : get_array(*it, at + "/fields")) {
      std::string fat = at + "/fields/" + std::to_string(i++);
      check_keys(e, fat, {"field", "loadable", "storeBound"});
      env::TopFieldSpec fs;
      fs.field = get_string(need(e, fat, "field"), fat + "/field");
      if (auto l = e.find("loadable"); l != e.end()) fs.loadable = get_bool(*l, fat + "/loadable");
      if (auto b = e.find("storeBound"); b != e.end())
        fs.store_bound = parse_bound(*b, fat + "/storeBound");
      top.fields.push_back(std::move(fs));
    }
  }
  return top;
}

ojson top_to_json(const env::TopInterfaceSpec& top, const std::string& at) {
  ojson j = ojson::object();
  if (top.scripted()) {
    ojson seq = ojson::array();
    for (const auto& call : top.sequence) {
      ojson c;
      c["func"] = call.func;
      if (!call.args.empty()) {
        ojson a = ojson::array();
        for (const auto& v : call.args) a.push_back(value_to_json(v, at + "/sequence"));
        c["args"] = std::move(a);
      }
      seq.push_back(std::move(c));
    }
    j["sequence"] = std::move(seq);
    return j;
  }
  ojson funcs = ojson::array();
  for (const auto& fn : top.funcs) {
    ojson f;
    f["func"] = fn.func;
    ojson bounds = ojson::array();
    for (const auto& b : fn.arg_bounds) bounds.push_back(bound_to_json(b, at + "/funcs"));
    f["argBounds"] = std::move(bounds);
    if (fn.throws_terminates) f["throwsTerminates"] = true;
    funcs.push_back(std::move(f));
  }
  j["funcs"] = std::move(funcs);
  if (!top.fields.empty()) {
    ojson fields = ojson::array();
    for (const auto& fs : top.fields) {
      ojson f;
      f["field"] = fs.field;
      if (!fs.loadable) f["loadable"] = false;
      if (fs.store_bound) f["storeBound"] = bound_to_json(*fs.store_bound, at + "/fields");
      fields.push_back(std::move(f));
    }
    j["fields"] = std::move(fields);
  }
  return j;
}

env::Limits parse_limits(const ojson& j, const std::string& at) {
  check_keys(j, at, {"maxStates", "maxDepth", "maxTransitions"});
  env::Limits lim;
  auto positive = [&](const ojson& v, const std::string& vat) {
    std::int64_t n = get_int(v, vat);
    if (n <= 0) fail(vat, "must be positive");
    return static_cast<std::size_t>(n);
  };
  if (auto it = j.find("maxStates"); it != j.end())
    lim.max_states = positive(*it, at + "/maxStates");
  if (auto it = j.find("maxDepth"); it != j.end()) lim.max_frames = positive(*it, at + "/maxDepth");
  if (auto it = j.find("maxTransitions"); it != j.end())
    lim.max_transitions = positive(*it, at + "/maxTransitions");
  return lim;
}

}  // namespace

// ---------------------------------------------------------------------------
// Whole-file codecs.

ProjectFile parse_project_text(const std::string& text, const std::string& name) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProjectError(name + ": " + e.what());
  }
  const std::string at = name + ":";
  check_keys(j, at,
             {"sources", "targetClass", "targetInstance", "instances", "globalNamespace",
              "topInterface", "stubs", "fsms", "categories", "hide", "rename", "limits"});

  ProjectFile p;
  p.sources = get_string(need(j, at, "sources"), at + "/sources");
  p.target_class = get_string(need(j, at, "targetClass"), at + "/targetClass");
  if (auto it = j.find("targetInstance"); it != j.end())
    p.target_instance = get_string(*it, at + "/targetInstance");

  for (const auto& item : get_object(need(j, at, "instances"), at + "/instances").items()) {
    std::string iat = at + "/instances/" + item.key();
    if (item.key().empty()) fail(at + "/instances", "empty instance id");
    if (item.key() == scpp::kGlobalNamespace)
      fail(iat, "'" + item.key() + "' is reserved; use the 'globalNamespace' section");
    if (item.key().rfind("__", 0) == 0) fail(iat, "instance ids may not start with '__'");
    p.instances.emplace_back(item.key(), parse_instance(item.value(), iat));
  }
  if (p.instances.empty()) fail(at + "/instances", "no instances declared");

  if (auto it = j.find("globalNamespace"); it != j.end()) {
    std::string gat = at + "/globalNamespace";
    std::string kind = get_string(need(*it, gat, "kind"), gat + "/kind");
    InstanceSpec gs;
    if (kind == "stub") {
      check_keys(*it, gat, {"kind", "returnBounds", "canThrow", "loadBounds"});
      gs.kind = InstanceSpec::Kind::Stub;
      p.global_stub = parse_stub_config(*it, gat);
    } else if (kind == "fsm") {
      check_keys(*it, gat, {"kind", "fsm"});
      gs.kind = InstanceSpec::Kind::Fsm;
      gs.fsm = get_string(need(*it, gat, "fsm"), gat + "/fsm");
    } else {
      fail(gat + "/kind", "global namespace must be 'stub' or 'fsm'");
    }
    p.global_namespace = std::move(gs);
  }

  p.top = parse_top(get_object(need(j, at, "topInterface"), at + "/topInterface"),
                    at + "/topInterface");

  if (auto it = j.find("stubs"); it != j.end()) {
    for (const auto& item : get_object(*it, at + "/stubs").items()) {
      std::string sat = at + "/stubs/" + item.key();
      check_keys(item.value(), sat, {"returnBounds", "canThrow", "loadBounds"});
      p.stubs.emplace(item.key(), parse_stub_config(item.value(), sat));
    }
  }
  if (auto it = j.find("fsms"); it != j.end()) {
    for (const auto& item : get_object(*it, at + "/fsms").items())
      p.fsms.emplace(item.key(), parse_fsm(item.value(), at + "/fsms/" + item.key()));
  }
  if (auto it = j.find("categories"); it != j.end()) {
    for (const auto& item : get_object(*it, at + "/categories").items()) {
      env::DynamicCategory cat;
      cat.name = item.key();
      for (const auto& e : get_array(item.value(), at + "/categories/" + item.key()))
        cat.members.push_back(get_string(e, at + "/categories/" + item.key()));
      p.categories.emplace(cat.name, std::move(cat));
    }
  }
  if (auto it = j.find("hide"); it != j.end()) {
    for (const auto& e : get_array(*it, at + "/hide"))
      p.hide.push_back(get_string(e, at + "/hide"));
  }
  if (auto it = j.find("rename"); it != j.end()) {
    std::size_t i = 0;
    for (const auto& e : get_array(*it, at + "/rename")) {
      std::string rat = at + "/rename/" + std::to_string(i++);
      check_keys(e, rat, {"pattern", "to"});
      p.rename.push_back({get_string(need(e, rat, "pattern"), rat + "/pattern"),
                          get_string(need(e, rat, "to"), rat + "/to")});
    }
  }
  if (auto it = j.find("limits"); it != j.end())
    p.limits = parse_limits(get_object(*it, at + "/limits"), at + "/limits");
  return p;
}

std::string render_project(const ProjectFile& p) {
  ojson j;
  j["sources"] = p.sources;
  j["targetClass"] = p.target_class;
  if (!p.target_instance.empty()) j["targetInstance"] = p.target_instance;
  ojson insts = ojson::object();
  for (const auto& [id, spec] : p.instances) insts[id] = instance_to_json(spec, "/instances");
  j["instances"] = std::move(insts);
  if (p.global_namespace) {
    ojson g;
    if (p.global_namespace->kind == InstanceSpec::Kind::Stub) {
      g["kind"] = "stub";
      if (p.global_stub) stub_config_to_json(g, *p.global_stub, "/globalNamespace");
    } else {
      g["kind"] = "fsm";
      g["fsm"] = p.global_namespace->fsm;
    }
    j["globalNamespace"] = std::move(g);
  }
  j["topInterface"] = top_to_json(p.top, "/topInterface");
  if (!p.stubs.empty()) {
    ojson o = ojson::object();
    for (const auto& [id, cfg] : p.stubs) {
      ojson s = ojson::object();
      stub_config_to_json(s, cfg, "/stubs/" + id);
      o[id] = std::move(s);
    }
    j["stubs"] = std::move(o);
  }
  if (!p.fsms.empty()) {
    ojson o = ojson::object();
    for (const auto& [nm, m] : p.fsms) o[nm] = fsm_to_json(m, "/fsms/" + nm);
    j["fsms"] = std::move(o);
  }
  if (!p.categories.empty()) {
    ojson o = ojson::object();
    for (const auto& [nm, cat] : p.categories) o[nm] = cat.members;
    j["categories"] = std::move(o);
  }
  if (!p.hide.empty()) j["hide"] = p.hide;
  if (!p.rename.empty()) {
    ojson a = ojson::array();
    for (const auto& r : p.rename) {
      ojson e;
      e["pattern"] = r.pattern;
      e["to"] = r.replacement;
      a.push_back(std::move(e));
    }
    j["rename"] = std::move(a);
  }
  env::Limits defaults;
  if (p.limits.max_states != defaults.max_states || p.limits.max_frames != defaults.max_frames ||
      p.limits.max_transitions != defaults.max_transitions) {
    ojson lim = ojson::object();
    if (p.limits.max_states != defaults.max_states) lim["maxStates"] = p.limits.max_states;
    if (p.limits.max_frames != defaults.max_frames) lim["maxDepth"] = p.limits.max_frames;
    if (p.limits.max_transitions != defaults.max_transitions)
      lim["maxTransitions"] = p.limits.max_transitions;
    j["limits"] = std::move(lim);
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProjectError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dir_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

ProjectFile load_project(const std::string& path) {
  return parse_project_text(read_file(path), path);
}

void save_project(const ProjectFile& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ProjectError("cannot write '" + path + "'");
  out << render_project(p);
}

// ---------------------------------------------------------------------------
// Script codec (oracle subcommand).

interp::Script parse_script_text(const std::string& text, const std::string& name) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProjectError(name + ": " + e.what());
  }
  const std::string at = name + ":";
  check_keys(j, at, {"target", "instances", "globals", "calls"});

  interp::Script s;
  s.target = get_string(need(j, at, "target"), at + "/target");
  for (const auto& item : get_object(need(j, at, "instances"), at + "/instances").items()) {
    std::string iat = at + "/instances/" + item.key();
    check_keys(item.value(), iat, {"class", "fields", "members"});
    interp::ScriptInstance inst;
    inst.id = item.key();
    inst.cls = get_string(need(item.value(), iat, "class"), iat + "/class");
    if (auto f = item.value().find("fields"); f != item.value().end()) {
      for (const auto& fi : get_object(*f, iat + "/fields").items())
        inst.fields.emplace_back(fi.key(), parse_value(fi.value(), iat + "/fields/" + fi.key()));
    }
    if (auto m = item.value().find("members"); m != item.value().end()) {
      for (const auto& mi : get_object(*m, iat + "/members").items())
        inst.members.emplace_back(mi.key(),
                                  get_string(mi.value(), iat + "/members/" + mi.key()));
    }
    s.instances.push_back(std::move(inst));
  }
  if (auto g = j.find("globals"); g != j.end()) {
    for (const auto& gi : get_object(*g, at + "/globals").items())
      s.globals.emplace_back(gi.key(), parse_value(gi.value(), at + "/globals/" + gi.key()));
  }
  std::size_t i = 0;
  for (const auto& e : get_array(need(j, at, "calls"), at + "/calls")) {
    std::string cat = at + "/calls/" + std::to_string(i++);
    check_keys(e, cat, {"func", "args"});
    interp::ScriptCall call;
    call.func = get_string(need(e, cat, "func"), cat + "/func");
    if (auto a = e.find("args"); a != e.end()) {
      std::size_t k = 0;
      for (const auto& v : get_array(*a, cat + "/args"))
        call.args.push_back(parse_value(v, cat + "/args/" + std::to_string(k++)));
    }
    s.calls.push_back(std::move(call));
  }
  return s;
}

interp::Script load_script(const std::string& path) {
  return parse_script_text(read_file(path), path);
}

// ---------------------------------------------------------------------------
// Composition assembly.

namespace {

scpp::Value::Kind kind_of_type(const moo::Type& t) {
  switch (t.kind) {
    case moo::Type::Kind::Int:
      return scpp::Value::Kind::Number;
    case moo::Type::Kind::Bool:
      return scpp::Value::Kind::Boolean;
    case moo::Type::Kind::Void:
      return scpp::Value::Kind::Void;
    case moo::Type::Kind::String:
      return scpp::Value::Kind::String;
    case moo::Type::Kind::List:
      return scpp::Value::Kind::OrderedSet;
    case moo::Type::Kind::Named:
      return t.pointer ? scpp::Value::Kind::PType : scpp::Value::Kind::Enum;
    case moo::Type::Kind::Auto:
      return scpp::Value::Kind::Void;  // unreachable for fields
  }
  return scpp::Value::Kind::Void;
}

const InstanceSpec* find_instance(const ProjectFile& p, const std::string& id) {
  for (const auto& [iid, spec] : p.instances)
    if (iid == id) return &spec;
  return nullptr;
}

}  // namespace

BuildResult build_composition(const ProjectFile& p, const std::string& project_dir) {
  std::string src_path = p.sources;
  if (!src_path.empty() && src_path.front() != '/' && !project_dir.empty())
    src_path = project_dir + "/" + src_path;

  moo::TranslationUnit tu = moo::parse_translation_unit(read_file(src_path), p.sources);

  BuildResult out;

  // Transform each class used by a transformed instance, once.
  auto model_of = [&](const std::string& cls) -> const xform::ClassModel& {
    auto it = out.models.find(cls);
    if (it != out.models.end()) return it->second;
    xform::ClassModel m = xform::transform_class(tu, cls, p.sources);
    if (!m.diagnostics.empty()) {
      std::string msg = "class '" + cls + "' has methods that do not transform:";
      for (const auto& d : m.diagnostics)
        msg += "\n  " + d.method + ": " + d.message;
      throw ProjectError(msg);
    }
    return out.models.emplace(cls, std::move(m)).first->second;
  };

  // Resolve the subject instance.
  std::string target_id = p.target_instance;
  if (target_id.empty()) {
    for (const auto& [id, spec] : p.instances)
      if (spec.kind == InstanceSpec::Kind::Transformed && spec.cls == p.target_class) {
        if (!target_id.empty())
          throw ProjectError("multiple instances of target class '" + p.target_class +
                             "'; set targetInstance");
        target_id = id;
      }
    if (target_id.empty())
      throw ProjectError("no transformed instance of target class '" + p.target_class + "'");
  } else {
    const InstanceSpec* spec = find_instance(p, target_id);
    if (!spec) throw ProjectError("targetInstance '" + target_id + "' is not declared");
    if (spec->kind != InstanceSpec::Kind::Transformed || spec->cls != p.target_class)
      throw ProjectError("targetInstance '" + target_id + "' is not a transformed '" +
                         p.target_class + "'");
  }

  // Category members must be declared instances.
  for (const auto& [nm, cat] : p.categories)
    for (const auto& member : cat.members)
      if (!find_instance(p, member))
        throw ProjectError("category '" + nm + "' names unknown instance '" + member + "'");

  env::Composition comp;
  comp.categories = p.categories;

  for (const auto& [id, spec] : p.instances) {
    env::Participant part;
    part.proc = id;
    switch (spec.kind) {
      case InstanceSpec::Kind::Transformed: {
        const xform::ClassModel& model = model_of(spec.cls);
        part.kind = env::Participant::Kind::Transformed;
        part.def.proc = id;
        part.def.get_prog = model.get_prog;
        part.def.param_names = model.param_names;

        sem::Sigma sigma;
        for (const auto& [name, v] : spec.fields) {
          auto ft = model.fields.find(name);
          if (ft == model.fields.end())
            throw ProjectError("instance '" + id + "': class '" + spec.cls + "' has no field '" +
                               name + "'");
          scpp::Value::Kind want = kind_of_type(ft->second);
          if (v.kind() != want && v.kind() != scpp::Value::Kind::Void)
            throw ProjectError("instance '" + id + "': field '" + name +
                               "' initial value has the wrong type");
          sem::sigma_set(sigma, name, v);
        }
        for (const auto& [mname, mid] : spec.members) {
          auto mt = model.members.find(mname);
          if (mt == model.members.end())
            throw ProjectError("instance '" + id + "': class '" + spec.cls + "' has no member '" +
                               mname + "'");
          const InstanceSpec* target = find_instance(p, mid);
          if (!target)
            throw ProjectError("instance '" + id + "': member '" + mname +
                               "' wired to unknown instance '" + mid + "'");
          // FSM instances stand in for any class; others must match the
          // declared member class.
          if (target->kind != InstanceSpec::Kind::Fsm && target->cls != mt->second)
            throw ProjectError("instance '" + id + "': member '" + mname + "' needs a '" +
                               mt->second + "', got '" + target->cls + "'");
          sem::sigma_set(sigma, mname, scpp::Value::ptype(mid));
        }
        part.initial_sigma_g = std::move(sigma);
        break;
      }
      case InstanceSpec::Kind::Stub: {
        part.kind = env::Participant::Kind::Stub;
        part.stub.proc = id;
        if (auto it = p.stubs.find(id); it != p.stubs.end()) {
          part.stub.return_bounds = it->second.return_bounds;
          part.stub.can_throw = it->second.can_throw;
          part.stub.load_bounds = it->second.load_bounds;
        }
        env::validate_stub(part.stub);
        break;
      }
      case InstanceSpec::Kind::Fsm: {
        part.kind = env::Participant::Kind::Fsm;
        auto it = p.fsms.find(spec.fsm);
        if (it == p.fsms.end())
          throw ProjectError("instance '" + id + "' references unknown fsm '" + spec.fsm + "'");
        part.fsm = it->second;
        part.fsm.proc = id;
        env::validate_fsm(part.fsm);
        break;
      }
    }
    comp.parts.push_back(std::move(part));
  }

  // Stub configs must belong to declared stub instances.
  for (const auto& [id, cfg] : p.stubs) {
    const InstanceSpec* spec = find_instance(p, id);
    if (!spec || spec->kind != InstanceSpec::Kind::Stub)
      throw ProjectError("stub config for '" + id + "' does not match a stub instance");
  }

  if (p.global_namespace) {
    env::Participant part;
    part.proc = std::string(scpp::kGlobalNamespace);
    if (p.global_namespace->kind == InstanceSpec::Kind::Stub) {
      part.kind = env::Participant::Kind::Stub;
      part.stub.proc = part.proc;
      if (p.global_stub) {
        part.stub.return_bounds = p.global_stub->return_bounds;
        part.stub.can_throw = p.global_stub->can_throw;
        part.stub.load_bounds = p.global_stub->load_bounds;
      }
      env::validate_stub(part.stub);
    } else {
      part.kind = env::Participant::Kind::Fsm;
      auto it = p.fsms.find(p.global_namespace->fsm);
      if (it == p.fsms.end())
        throw ProjectError("globalNamespace references unknown fsm '" + p.global_namespace->fsm +
                           "'");
      part.fsm = it->second;
      part.fsm.proc = part.proc;
      env::validate_fsm(part.fsm);
    }
    comp.parts.push_back(std::move(part));
  }

  const xform::ClassModel& target_model = model_of(p.target_class);

  // The driver (always last). Validate the functions it names.
  {
    env::Participant part;
    part.kind = env::Participant::Kind::Top;
    part.proc = "__top";
    part.top = p.top;
    part.top.target = target_id;
    for (const auto& fld : part.top.fields)
      if (!target_model.fields.count(fld.field))
        throw ProjectError("topInterface names unknown field '" + fld.field + "' of '" +
                           p.target_class + "'");
    try {
      part.top_offers = env::build_top_offers(part.top, target_model.by_ref, comp.categories);
    } catch (const env::ConfigError& e) {
      throw ProjectError(e.what());
    }
    comp.parts.push_back(std::move(part));
  }

  out.comp = std::move(comp);
  out.target_instance = target_id;
  out.target_model = target_model;
  return out;
}

lts::Lts apply_label_ops(lts::Lts l, const ProjectFile& p) {
  if (!p.hide.empty()) l = lts::hide_labels(std::move(l), p.hide);
  if (!p.rename.empty()) l = lts::rename_labels(std::move(l), p.rename);
  return l;
}

}  // namespace moolts::proj
