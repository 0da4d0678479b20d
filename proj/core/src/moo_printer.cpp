#include "moolts/moo_printer.hpp"

#include <sstream>

namespace moolts::moo {
namespace {

std::string pad(int n) { return std::string(static_cast<std::size_t>(n) * 2, ' '); }

int binary_prec(const std::string& op) {
  if (op == "||") return 2;
  if (op == "&&") return 3;
  if (op == "==" || op == "!=") return 4;
  if (op == "<" || op == "<=" || op == ">" || op == ">=") return 5;
  if (op == "+" || op == "-") return 6;
  return 7;  // * /
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string expr_str(const Expr& e, int parent_prec);
std::string stmt_head(const Stmt& s);  // statement without trailing ';' (for-clauses)
void print_body(std::ostringstream& out, const std::vector<Stmt>& body, int indent);

std::string args_str(const std::vector<Expr>& kids, std::size_t first) {
  std::string out = "(";
  for (std::size_t i = first; i < kids.size(); ++i) {
    if (i > first) out += ", ";
    out += expr_str(kids[i], 0);
  }
  return out + ")";
}

std::string params_str(const std::vector<Param>& params) {
  std::string out = "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += print_type(params[i].type);
    if (params[i].by_ref) out += "&";
    out += " " + params[i].name;
  }
  return out + ")";
}

std::string expr_str(const Expr& e, int parent_prec) {
  const auto wrap = [&](int own, const std::string& s) {
    return own < parent_prec ? "(" + s + ")" : s;
  };
  switch (e.kind) {
    case Expr::Kind::IntLit:
      // A leading '-' re-parses as unary minus on the literal.
      return e.num < 0 ? wrap(8, std::to_string(e.num)) : std::to_string(e.num);
    case Expr::Kind::BoolLit:
      return e.truth ? "true" : "false";
    case Expr::Kind::StringLit:
      return "\"" + escape(e.text) + "\"";
    case Expr::Kind::Ident:
      return e.text;
    case Expr::Kind::This:
      return "this";
    case Expr::Kind::Not:
      return wrap(8, "!" + expr_str(e.kids[0], 8));
    case Expr::Kind::Binary: {
      const int p = binary_prec(e.text);
      return wrap(p, expr_str(e.kids[0], p) + " " + e.text + " " + expr_str(e.kids[1], p + 1));
    }
    case Expr::Kind::Ternary:
      return wrap(1, expr_str(e.kids[0], 2) + " ? " + expr_str(e.kids[1], 0) + " : " +
                         expr_str(e.kids[2], 1));
    case Expr::Kind::PostIncr:
      return wrap(9, expr_str(e.kids[0], 9) + "++");
    case Expr::Kind::Member:
      return wrap(9, expr_str(e.kids[0], 9) + (e.arrow ? "->" : ".") + e.text);
    case Expr::Kind::Call:
      return wrap(9, e.text + args_str(e.kids, 0));
    case Expr::Kind::MethodCall:
      return wrap(9, expr_str(e.kids[0], 9) + "->" + e.text + args_str(e.kids, 1));
    case Expr::Kind::Index:
      return wrap(9, expr_str(e.kids[0], 9) + "[" + expr_str(e.kids[1], 0) + "]");
    case Expr::Kind::Lambda: {
      std::string out = "[";
      for (std::size_t i = 0; i < e.captures.size(); ++i) {
        if (i) out += ", ";
        if (e.captures[i].by_ref) out += "&";
        out += e.captures[i].name;
      }
      out += "]" + params_str(e.params) + " {";
      if (e.body.empty()) return wrap(9, out + "}");
      std::ostringstream body;
      body << "\n";
      print_body(body, e.body, 1);
      return wrap(9, out + body.str() + "}");
    }
    case Expr::Kind::InitList: {
      std::string out = "{";
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) out += ", ";
        out += expr_str(e.kids[i], 0);
      }
      return out + "}";
    }
  }
  return "?";
}

std::string stmt_head(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::VarDecl: {
      std::string out = print_type(s.type);
      if (s.by_ref) out += "&";
      out += " " + s.name;
      if (s.has_init) out += " = " + expr_str(s.exprs[0], 0);
      return out;
    }
    case Stmt::Kind::Assign:
      return expr_str(s.exprs[0], 0) + " = " + expr_str(s.exprs[1], 0);
    case Stmt::Kind::ExprStmt:
      return expr_str(s.exprs[0], 0);
    default:
      return "";
  }
}

void print_stmt_to(std::ostringstream& out, const Stmt& s, int indent) {
  const std::string p = pad(indent);
  switch (s.kind) {
    case Stmt::Kind::Block:
      out << p << "{\n";
      print_body(out, s.body1, indent + 1);
      out << p << "}\n";
      return;
    case Stmt::Kind::VarDecl:
    case Stmt::Kind::Assign:
    case Stmt::Kind::ExprStmt:
      out << p << stmt_head(s) << ";\n";
      return;
    case Stmt::Kind::If:
      out << p << "if (" << expr_str(s.exprs[0], 0) << ") {\n";
      print_body(out, s.body1, indent + 1);
      if (s.body2.empty()) {
        out << p << "}\n";
      } else {
        out << p << "} else {\n";
        print_body(out, s.body2, indent + 1);
        out << p << "}\n";
      }
      return;
    case Stmt::Kind::While:
      out << p << "while (" << expr_str(s.exprs[0], 0) << ") {\n";
      print_body(out, s.body1, indent + 1);
      out << p << "}\n";
      return;
    case Stmt::Kind::For:
      out << p << "for (" << (s.pre.empty() ? "" : stmt_head(s.pre[0])) << "; "
          << (s.has_cond ? expr_str(s.exprs[0], 0) : "") << "; "
          << (s.post.empty() ? "" : stmt_head(s.post[0])) << ") {\n";
      print_body(out, s.body1, indent + 1);
      out << p << "}\n";
      return;
    case Stmt::Kind::Switch:
      out << p << "switch (" << expr_str(s.exprs[0], 0) << ") {\n";
      for (const Case& c : s.cases) {
        if (c.is_default)
          out << pad(indent + 1) << "default:\n";
        else
          out << pad(indent + 1) << "case " << expr_str(c.label, 0) << ":\n";
        print_body(out, c.body, indent + 2);
      }
      out << p << "}\n";
      return;
    case Stmt::Kind::Continue:
      out << p << "continue;\n";
      return;
    case Stmt::Kind::Break:
      out << p << "break;\n";
      return;
    case Stmt::Kind::Return:
      out << p << "return" << (s.exprs.empty() ? "" : " " + expr_str(s.exprs[0], 0)) << ";\n";
      return;
    case Stmt::Kind::Try:
      out << p << "try {\n";
      print_body(out, s.body1, indent + 1);
      out << p << "} catch (...) {\n";
      print_body(out, s.body2, indent + 1);
      out << p << "}\n";
      return;
    case Stmt::Kind::Throw:
      out << p << "throw" << (s.exprs.empty() ? "" : " " + expr_str(s.exprs[0], 0)) << ";\n";
      return;
  }
}

void print_body(std::ostringstream& out, const std::vector<Stmt>& body, int indent) {
  for (const Stmt& s : body) print_stmt_to(out, s, indent);
}

void print_method(std::ostringstream& out, const MethodDecl& m, int indent) {
  const std::string p = pad(indent);
  out << p;
  if (!m.is_ctor) out << print_type(m.return_type) << " ";
  out << m.name << params_str(m.params);
  if (m.is_ctor && !m.inits.empty()) {
    out << " : ";
    for (std::size_t i = 0; i < m.inits.size(); ++i) {
      if (i) out << ", ";
      out << m.inits[i].field << "(" << expr_str(m.inits[i].value, 0) << ")";
    }
  }
  if (!m.has_body) {
    out << ";\n";
    return;
  }
  out << " {\n";
  print_body(out, m.body, indent + 1);
  out << p << "}\n";
}

}  // namespace

std::string print_type(const Type& t) {
  switch (t.kind) {
    case Type::Kind::Int: return "int";
    case Type::Kind::Bool: return "bool";
    case Type::Kind::Void: return "void";
    case Type::Kind::String: return "string";
    case Type::Kind::Auto: return "auto";
    case Type::Kind::List: return "list<" + print_type(*t.elem) + ">";
    case Type::Kind::Named: return t.name + (t.pointer ? "*" : "");
  }
  return "?";
}

std::string print_expr(const Expr& e) { return expr_str(e, 0); }

std::string print_stmt(const Stmt& s, int indent) {
  std::ostringstream out;
  print_stmt_to(out, s, indent);
  return out.str();
}

std::string print_translation_unit(const TranslationUnit& tu) {
  std::ostringstream out;
  for (const EnumDecl& e : tu.enums) {
    out << "enum " << e.name << " { ";
    for (std::size_t i = 0; i < e.literals.size(); ++i) {
      if (i) out << ", ";
      out << e.literals[i];
    }
    out << " };\n\n";
  }
  for (const ClassDecl& cd : tu.classes) {
    out << "class " << cd.name << " {\n";
    // Canonical grouping: fields, members, constructors, methods.
    bool is_public = false;
    const auto label = [&](bool want) {
      if (is_public != want) {
        out << (want ? "public:\n" : "private:\n");
        is_public = want;
      }
    };
    for (const FieldDecl& f : cd.fields) {
      label(f.is_public);
      out << pad(1) << print_type(f.type) << " " << f.name << ";\n";
    }
    for (const MemberDecl& m : cd.members) {
      label(m.is_public);
      out << pad(1) << m.class_name << "* " << m.name << ";\n";
    }
    for (const MethodDecl& m : cd.ctors) {
      label(m.is_public);
      print_method(out, m, 1);
    }
    for (const MethodDecl& m : cd.methods) {
      label(m.is_public);
      print_method(out, m, 1);
    }
    out << "};\n\n";
  }
  for (const FieldDecl& g : tu.global_vars) {
    out << print_type(g.type) << " " << g.name << ";\n";
  }
  if (!tu.global_vars.empty()) out << "\n";
  for (const MethodDecl& m : tu.global_funcs) {
    print_method(out, m, 0);
    out << "\n";
  }
  return out.str();
}

}  // namespace moolts::moo
