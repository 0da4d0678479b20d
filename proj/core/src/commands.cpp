#include "moolts/commands.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <ostream>
#include <utility>

#include "moolts/explore.hpp"
#include "moolts/interp.hpp"
#include "moolts/minimize.hpp"
#include "moolts/moo_parser.hpp"
#include "moolts/pretty.hpp"
#include "moolts/project.hpp"
#include "moolts/trace.hpp"

namespace moolts::cmd {

namespace {

int report(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << "\n";
  return kExitError;
}

std::string resolve(const std::string& project_path, const std::string& rel) {
  if (!rel.empty() && rel.front() == '/') return rel;
  return proj::dir_of(project_path) + "/" + rel;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw proj::ProjectError("cannot write '" + path + "'");
  out << text;
  if (!out) throw proj::ProjectError("write to '" + path + "' failed");
}

const char* kind_name(scpp::Value::Kind k) {
  using K = scpp::Value::Kind;
  switch (k) {
    case K::Number:
      return "number";
    case K::Boolean:
      return "bool";
    case K::OrderedSet:
      return "set";
    case K::Void:
      return "void";
    case K::PType:
      return "ptype";
    case K::Enum:
      return "enum";
    case K::FieldRef:
      return "fieldref";
    case K::LocalRef:
      return "localref";
    case K::Lambda:
      return "lambda";
    case K::String:
      return "string";
  }
  return "?";
}

std::string type_str(const moo::Type& t) {
  using K = moo::Type::Kind;
  switch (t.kind) {
    case K::Int:
      return "int";
    case K::Bool:
      return "bool";
    case K::Void:
      return "void";
    case K::String:
      return "string";
    case K::List:
      return "list<" + (t.elem ? type_str(*t.elem) : std::string("?")) + ">";
    case K::Named:
      return t.pointer ? t.name + "*" : t.name;
    case K::Auto:
      return "auto";
  }
  return "?";
}

lts::Lts load_aut(const std::string& path) {
  try {
    return lts::import_aut_string(proj::read_file(path));
  } catch (const lts::LtsError& e) {
    throw lts::LtsError(path + ": " + e.what());
  }
}

// The documented structured dump: {"initial", "states", "transitions":
// [{"from", "label", "to"}, ...]} with transitions in canonical order.
std::string lts_to_json(const lts::Lts& l) {
  nlohmann::ordered_json j;
  j["initial"] = l.initial;
  j["states"] = l.num_states;
  nlohmann::ordered_json ts = nlohmann::ordered_json::array();
  for (const auto& t : l.transitions) {
    nlohmann::ordered_json e;
    e["from"] = t.from;
    e["label"] = t.label;
    e["to"] = t.to;
    ts.push_back(std::move(e));
  }
  j["transitions"] = std::move(ts);
  return j.dump(2) + "\n";
}

}  // namespace

int cmd_transform(const std::string& project_path, std::ostream& out, std::ostream& err) {
  try {
    proj::ProjectFile p = proj::load_project(project_path);
    std::string src = proj::read_file(resolve(project_path, p.sources));
    moo::TranslationUnit tu = moo::parse_translation_unit(src, p.sources);
    xform::ClassModel m = xform::transform_class(tu, p.target_class, p.sources);

    out << "class " << m.class_name << "\n";
    for (const auto& [name, ty] : m.fields) out << "  field " << name << " : " << type_str(ty) << "\n";
    for (const auto& [name, cls] : m.members) out << "  member " << name << " : " << cls << "*\n";
    for (const auto& [name, lits] : m.enums) {
      out << "  enum " << name << " {";
      for (std::size_t i = 0; i < lits.size(); ++i) out << (i ? ", " : " ") << lits[i];
      out << " }\n";
    }

    if (m.ctor_prog) out << "\nctor\n" << scpp::pretty_program(*m.ctor_prog, 1) << "\n";

    for (const auto& [f, prog] : m.get_prog) {
      out << "\nfunc " << f << "(";
      const auto& params = m.param_names.at(f);
      const auto& refs = m.by_ref.at(f);
      for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out << ", ";
        out << params[i];
        if (i < refs.size() && refs[i]) out << "&";
      }
      out << ") : " << kind_name(m.meta.at(f).return_kind);
      if (m.can_throw(f)) out << " throws";
      out << "\n" << scpp::pretty_program(prog, 1) << "\n";
    }

    if (!m.diagnostics.empty()) {
      for (const auto& d : m.diagnostics)
        err << "error: " << m.class_name << "::" << d.method << ": " << d.message << "\n";
      return kExitError;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report(err, e);
  }
}

int cmd_generate(const std::string& project_path, const std::string& aut_path,
                 const std::string& json_path, std::ostream& out, std::ostream& err) {
  try {
    proj::ProjectFile p = proj::load_project(project_path);
    proj::BuildResult b = proj::build_composition(p, proj::dir_of(project_path));
    env::ExploreResult r = env::explore(b.comp, p.limits);
    lts::Lts l = proj::apply_label_ops(std::move(r.lts), p);
    write_text(aut_path, lts::to_aut(l));
    out << aut_path << ": " << l.num_states << " states, " << l.transitions.size()
        << " transitions\n";
    if (!json_path.empty()) {
      write_text(json_path, lts_to_json(l));
      out << json_path << ": structured dump\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report(err, e);
  }
}

int cmd_reduce(const std::string& in_path, const std::string& relation, bool keep_tau_loops,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
  try {
    lts::Lts l = load_aut(in_path);
    lts::Lts m;
    if (relation == "strong") {
      m = lts::minimize_strong_bisim(l);
    } else if (relation == "branching") {
      m = lts::minimize_branching_bisim(l, keep_tau_loops);
    } else {
      err << "error: unknown relation '" << relation << "' (strong|branching)\n";
      return kExitError;
    }
    write_text(out_path, lts::to_aut(m));
    out << l.num_states << " states, " << l.transitions.size() << " transitions -> "
        << m.num_states << " states, " << m.transitions.size() << " transitions\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return report(err, e);
  }
}

int cmd_compare(const std::string& a_path, const std::string& b_path, const std::string& relation,
                std::ostream& out, std::ostream& err) {
  try {
    lts::Lts a = load_aut(a_path);
    lts::Lts b = load_aut(b_path);
    if (relation == "strong" || relation == "branching") {
      bool eq = relation == "strong" ? lts::strong_bisim_equivalent(a, b)
                                     : lts::branching_bisim_equivalent(a, b);
      const char* rel = relation == "strong" ? "strong bisimilarity" : "branching bisimilarity";
      if (eq) {
        out << "equivalent (" << rel << ")\n";
        return kExitOk;
      }
      out << "not equivalent (" << rel << ")\n";
      return kExitDifferent;
    }
    if (relation == "weak-trace") {
      lts::TraceResult r = lts::weak_trace_equivalent(a, b);
      if (r.equivalent) {
        out << "equivalent (weak traces)\n";
        return kExitOk;
      }
      out << "not equivalent (weak traces)\n";
      out << "trace admitted only by " << (r.present_in == 1 ? a_path : b_path) << ":\n";
      for (const auto& label : r.counterexample) out << "  " << label << "\n";
      return kExitDifferent;
    }
    err << "error: unknown relation '" << relation << "' (strong|branching|weak-trace)\n";
    return kExitError;
  } catch (const std::exception& e) {
    return report(err, e);
  }
}

int cmd_oracle(const std::string& source_path, const std::string& script_path, std::ostream& out,
               std::ostream& err) {
  try {
    std::string src = proj::read_file(source_path);
    moo::TranslationUnit tu = moo::parse_translation_unit(src, source_path);
    interp::Script script = proj::load_script(script_path);
    interp::InterpResult r = interp::run_program(tu, script, source_path);
    for (const auto& label : r.log) out << scpp::render_action(label) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return report(err, e);
  }
}

}  // namespace moolts::cmd
