#include "moolts/moo_parser.hpp"

#include <set>
#include <string>

#include "moolts/ids.hpp"
#include "moolts/moo_lexer.hpp"

namespace moolts::moo {
namespace {

const std::set<std::string> kKeywords = {
    "class", "enum",     "public", "private", "int",  "bool",    "void",  "string",
    "list",  "auto",     "if",     "else",    "while", "for",    "continue",
    "break", "switch",   "case",   "default", "try",  "catch",   "throw", "return",
    "true",  "false",    "this"};

bool is_type_keyword(const std::string& s) {
  return s == "int" || s == "bool" || s == "void" || s == "string" || s == "list" || s == "auto";
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string filename)
      : toks_(std::move(toks)), file_(std::move(filename)) {}

  TranslationUnit parse_unit() {
    TranslationUnit tu;
    while (!at_end()) {
      if (at_kw("enum")) {
        tu.enums.push_back(parse_enum());
      } else if (at_kw("class")) {
        tu.classes.push_back(parse_class());
      } else {
        parse_global(tu);
      }
    }
    return tu;
  }

 private:
  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(SourceLoc loc, const std::string& msg) { throw MooError(file_, loc, msg); }
  [[noreturn]] void fail_here(const std::string& msg) { fail(peek().loc, msg); }

  const Token& peek(std::size_t k = 0) const {
    const std::size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  const Token& advance() { return toks_[pos_++]; }

  bool at_punct(const char* p, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Punct && peek(k).text == p;
  }
  bool at_kw(const char* w, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Ident && peek(k).text == w;
  }
  bool at_ident(std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Ident && kKeywords.count(peek(k).text) == 0;
  }

  Token expect_punct(const char* p) {
    if (!at_punct(p)) fail_here(std::string("expected '") + p + "' before '" + describe(peek()) + "'");
    return advance();
  }
  void expect_kw(const char* w) {
    if (!at_kw(w)) fail_here(std::string("expected '") + w + "' before '" + describe(peek()) + "'");
    advance();
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::End: return "end of file";
      case Token::Kind::StringLit: return "string literal";
      default: return t.text;
    }
  }

  // Every identifier in the unit passes through here.
  std::string expect_ident(const char* what) {
    if (peek().kind != Token::Kind::Ident)
      fail_here(std::string("expected ") + what + " before '" + describe(peek()) + "'");
    if (kKeywords.count(peek().text))
      fail_here("keyword '" + peek().text + "' cannot be used as " + what);
    if (scpp::has_reserved_prefix(peek().text))
      fail_here("identifier '" + peek().text + "' uses a reserved prefix");
    return advance().text;
  }

  // ---- declarations ----

  EnumDecl parse_enum() {
    EnumDecl e;
    e.loc = peek().loc;
    expect_kw("enum");
    e.name = expect_ident("enum name");
    expect_punct("{");
    e.literals.push_back(expect_ident("enumerator"));
    while (at_punct(",")) {
      advance();
      e.literals.push_back(expect_ident("enumerator"));
    }
    expect_punct("}");
    expect_punct(";");
    return e;
  }

  ClassDecl parse_class() {
    ClassDecl cd;
    cd.loc = peek().loc;
    expect_kw("class");
    cd.name = expect_ident("class name");
    expect_punct("{");
    bool is_public = false;  // C++ class default
    while (!at_punct("}")) {
      if (at_kw("public") || at_kw("private")) {
        is_public = peek().text == "public";
        advance();
        expect_punct(":");
        continue;
      }
      if (at_ident() && peek().text == cd.name && at_punct("(", 1)) {
        cd.ctors.push_back(parse_ctor(cd.name, is_public));
        continue;
      }
      parse_field_or_method(cd, is_public);
    }
    expect_punct("}");
    expect_punct(";");
    return cd;
  }

  MethodDecl parse_ctor(const std::string& class_name, bool is_public) {
    MethodDecl m;
    m.loc = peek().loc;
    m.is_ctor = true;
    m.is_public = is_public;
    m.name = expect_ident("constructor name");
    m.return_type = Type{Type::Kind::Void, false, "", nullptr};
    m.params = parse_params();
    if (at_punct(":")) {
      advance();
      while (true) {
        CtorInit init;
        init.loc = peek().loc;
        init.field = expect_ident("field name");
        expect_punct("(");
        init.value = parse_expr();
        expect_punct(")");
        m.inits.push_back(std::move(init));
        if (!at_punct(",")) break;
        advance();
      }
    }
    m.has_body = true;
    m.body = parse_block();
    (void)class_name;
    return m;
  }

  void parse_field_or_method(ClassDecl& cd, bool is_public) {
    const SourceLoc loc = peek().loc;
    Type t = parse_type();
    const std::string name = expect_ident("member name");
    if (at_punct(";")) {
      advance();
      if (t.kind == Type::Kind::Named && t.pointer) {
        cd.members.push_back(MemberDecl{t.name, name, is_public, loc});
      } else {
        if (t.kind == Type::Kind::Void) fail(loc, "fields cannot have type 'void'");
        if (t.kind == Type::Kind::Auto) fail(loc, "fields cannot have type 'auto'");
        cd.fields.push_back(FieldDecl{std::move(t), name, is_public, loc});
      }
      return;
    }
    if (at_punct("=")) fail_here("field initializers are not supported; use a constructor");
    if (!at_punct("(")) fail_here("expected ';' or '(' after declarator");
    MethodDecl m;
    m.loc = loc;
    m.name = name;
    m.return_type = std::move(t);
    m.is_public = is_public;
    m.params = parse_params();
    if (at_punct(";")) {
      advance();
      m.has_body = false;
    } else {
      m.has_body = true;
      m.body = parse_block();
    }
    cd.methods.push_back(std::move(m));
  }

  void parse_global(TranslationUnit& tu) {
    const SourceLoc loc = peek().loc;
    Type t = parse_type();
    const std::string name = expect_ident("declarator name");
    if (at_punct(";")) {
      advance();
      if (t.kind == Type::Kind::Void) fail(loc, "variables cannot have type 'void'");
      tu.global_vars.push_back(FieldDecl{std::move(t), name, true, loc});
      return;
    }
    if (at_punct("=")) fail_here("global variable initializers are not supported; configure initial values in the project file");
    if (!at_punct("(")) fail_here("expected ';' or '(' after declarator");
    MethodDecl m;
    m.loc = loc;
    m.name = name;
    m.return_type = std::move(t);
    m.is_public = true;
    m.params = parse_params();
    if (at_punct(";")) {
      advance();
      m.has_body = false;
    } else {
      m.has_body = true;
      m.body = parse_block();
    }
    tu.global_funcs.push_back(std::move(m));
  }

  std::vector<Param> parse_params() {
    expect_punct("(");
    std::vector<Param> params;
    if (!at_punct(")")) {
      while (true) {
        Param p;
        p.loc = peek().loc;
        p.type = parse_type();
        if (p.type.kind == Type::Kind::Void) fail(p.loc, "parameters cannot have type 'void'");
        if (at_punct("&")) {
          advance();
          p.by_ref = true;
        }
        p.name = expect_ident("parameter name");
        params.push_back(std::move(p));
        if (!at_punct(",")) break;
        advance();
      }
    }
    expect_punct(")");
    return params;
  }

  Type parse_type() {
    const SourceLoc loc = peek().loc;
    if (peek().kind != Token::Kind::Ident) fail_here("expected a type");
    const std::string head = peek().text;
    if (head == "int") { advance(); return Type{Type::Kind::Int, false, "", nullptr}; }
    if (head == "bool") { advance(); return Type{Type::Kind::Bool, false, "", nullptr}; }
    if (head == "void") { advance(); return Type{Type::Kind::Void, false, "", nullptr}; }
    if (head == "string") { advance(); return Type{Type::Kind::String, false, "", nullptr}; }
    if (head == "auto") { advance(); return Type{Type::Kind::Auto, false, "", nullptr}; }
    if (head == "list") {
      advance();
      expect_punct("<");
      Type elem = parse_type();
      if (elem.kind == Type::Kind::Void || elem.kind == Type::Kind::Auto ||
          (elem.kind == Type::Kind::Named && elem.pointer))
        fail(loc, "unsupported list element type");
      expect_punct(">");
      return Type{Type::Kind::List, false, "", std::make_shared<Type>(std::move(elem))};
    }
    if (kKeywords.count(head)) fail_here("expected a type before '" + head + "'");
    Type t{Type::Kind::Named, false, expect_ident("type name"), nullptr};
    if (at_punct("*")) {
      advance();
      t.pointer = true;
    }
    return t;
  }

  // ---- statements ----

  std::vector<Stmt> parse_block() {
    expect_punct("{");
    std::vector<Stmt> body;
    while (!at_punct("}")) body.push_back(parse_stmt());
    expect_punct("}");
    return body;
  }

  // A declaration starts with a type keyword, or with "Name name", "Name* name", "Name& name".
  bool starts_decl() const {
    if (peek().kind != Token::Kind::Ident) return false;
    if (is_type_keyword(peek().text)) return true;
    if (!at_ident()) return false;
    if (at_ident(1)) return true;
    return (at_punct("*", 1) || at_punct("&", 1)) && at_ident(2);
  }

  Stmt parse_stmt() {
    const SourceLoc loc = peek().loc;
    if (at_punct("{")) {
      Stmt s;
      s.kind = Stmt::Kind::Block;
      s.loc = loc;
      s.body1 = parse_block();
      return s;
    }
    if (at_punct(";")) {
      advance();
      Stmt s;
      s.kind = Stmt::Kind::Block;
      s.loc = loc;
      return s;
    }
    if (at_kw("if")) return parse_if();
    if (at_kw("while")) return parse_while();
    if (at_kw("for")) return parse_for();
    if (at_kw("switch")) return parse_switch();
    if (at_kw("try")) return parse_try();
    if (at_kw("continue")) {
      advance();
      expect_punct(";");
      Stmt s;
      s.kind = Stmt::Kind::Continue;
      s.loc = loc;
      return s;
    }
    if (at_kw("break")) {
      advance();
      expect_punct(";");
      Stmt s;
      s.kind = Stmt::Kind::Break;
      s.loc = loc;
      return s;
    }
    if (at_kw("return")) {
      advance();
      Stmt s;
      s.kind = Stmt::Kind::Return;
      s.loc = loc;
      if (!at_punct(";")) s.exprs.push_back(parse_expr());
      expect_punct(";");
      return s;
    }
    if (at_kw("throw")) {
      advance();
      Stmt s;
      s.kind = Stmt::Kind::Throw;
      s.loc = loc;
      if (!at_punct(";")) s.exprs.push_back(parse_expr());
      expect_punct(";");
      return s;
    }
    if (starts_decl()) {
      Stmt s = parse_var_decl();
      expect_punct(";");
      return s;
    }
    Stmt s = parse_expr_or_assign();
    expect_punct(";");
    return s;
  }

  Stmt parse_var_decl() {
    Stmt s;
    s.kind = Stmt::Kind::VarDecl;
    s.loc = peek().loc;
    s.type = parse_type();
    if (at_punct("&")) {
      advance();
      s.by_ref = true;
    }
    s.name = expect_ident("variable name");
    if (at_punct("=")) {
      advance();
      s.has_init = true;
      s.exprs.push_back(parse_expr());
    }
    if (s.by_ref && !s.has_init) fail(s.loc, "reference variables require an initializer");
    if (s.type.kind == Type::Kind::Auto && !s.has_init)
      fail(s.loc, "'auto' variables require an initializer");
    if (s.type.kind == Type::Kind::Void) fail(s.loc, "variables cannot have type 'void'");
    return s;
  }

  Stmt parse_expr_or_assign() {
    const SourceLoc loc = peek().loc;
    Expr e = parse_expr();
    if (at_punct("=")) {
      if (e.kind == Expr::Kind::Index) fail_here("subscript assignment is not supported");
      if (e.kind != Expr::Kind::Ident && e.kind != Expr::Kind::Member)
        fail_here("cannot assign to this expression");
      advance();
      Stmt s;
      s.kind = Stmt::Kind::Assign;
      s.loc = loc;
      s.exprs.push_back(std::move(e));
      s.exprs.push_back(parse_expr());
      return s;
    }
    Stmt s;
    s.kind = Stmt::Kind::ExprStmt;
    s.loc = loc;
    s.exprs.push_back(std::move(e));
    return s;
  }

  Stmt parse_if() {
    Stmt s;
    s.kind = Stmt::Kind::If;
    s.loc = peek().loc;
    expect_kw("if");
    expect_punct("(");
    s.exprs.push_back(parse_expr());
    expect_punct(")");
    s.body1 = as_body(parse_stmt());
    if (at_kw("else")) {
      advance();
      s.body2 = as_body(parse_stmt());
    }
    return s;
  }

  Stmt parse_while() {
    Stmt s;
    s.kind = Stmt::Kind::While;
    s.loc = peek().loc;
    expect_kw("while");
    expect_punct("(");
    s.exprs.push_back(parse_expr());
    expect_punct(")");
    s.body1 = as_body(parse_stmt());
    return s;
  }

  Stmt parse_for() {
    Stmt s;
    s.kind = Stmt::Kind::For;
    s.loc = peek().loc;
    expect_kw("for");
    expect_punct("(");
    if (!at_punct(";")) {
      s.pre.push_back(starts_decl() ? parse_var_decl() : parse_expr_or_assign());
    }
    expect_punct(";");
    if (!at_punct(";")) {
      s.has_cond = true;
      s.exprs.push_back(parse_expr());
    }
    expect_punct(";");
    if (!at_punct(")")) {
      s.post.push_back(parse_expr_or_assign());
    }
    expect_punct(")");
    s.body1 = as_body(parse_stmt());
    return s;
  }

  Stmt parse_switch() {
    Stmt s;
    s.kind = Stmt::Kind::Switch;
    s.loc = peek().loc;
    expect_kw("switch");
    expect_punct("(");
    s.exprs.push_back(parse_expr());
    expect_punct(")");
    expect_punct("{");
    bool saw_default = false;
    while (!at_punct("}")) {
      Case c;
      c.loc = peek().loc;
      if (at_kw("default")) {
        advance();
        c.is_default = true;
        saw_default = true;
      } else {
        expect_kw("case");
        if (saw_default) fail(c.loc, "'case' after 'default' is not supported");
        c.label = parse_case_label();
      }
      expect_punct(":");
      while (!at_punct("}") && !at_kw("case") && !at_kw("default")) c.body.push_back(parse_stmt());
      s.cases.push_back(std::move(c));
    }
    expect_punct("}");
    return s;
  }

  Expr parse_case_label() {
    const SourceLoc loc = peek().loc;
    if (at_punct("-") || peek().kind == Token::Kind::IntLit || at_kw("true") || at_kw("false") ||
        peek().kind == Token::Kind::StringLit || at_ident()) {
      Expr e = parse_unary();
      if (e.kind != Expr::Kind::IntLit && e.kind != Expr::Kind::BoolLit &&
          e.kind != Expr::Kind::StringLit && e.kind != Expr::Kind::Ident)
        fail(loc, "case label must be a constant");
      return e;
    }
    fail(loc, "case label must be a constant");
  }

  Stmt parse_try() {
    Stmt s;
    s.kind = Stmt::Kind::Try;
    s.loc = peek().loc;
    expect_kw("try");
    s.body1 = parse_block();
    expect_kw("catch");
    expect_punct("(");
    expect_punct("...");
    expect_punct(")");
    s.body2 = parse_block();
    return s;
  }

  static std::vector<Stmt> as_body(Stmt s) {
    if (s.kind == Stmt::Kind::Block) return std::move(s.body1);
    std::vector<Stmt> body;
    body.push_back(std::move(s));
    return body;
  }

  // ---- expressions ----

  Expr parse_expr() { return parse_ternary(); }

  Expr parse_ternary() {
    Expr c = parse_or();
    if (!at_punct("?")) return c;
    Expr e;
    e.kind = Expr::Kind::Ternary;
    e.loc = c.loc;
    advance();
    Expr a = parse_expr();
    expect_punct(":");
    Expr b = parse_ternary();
    e.kids.push_back(std::move(c));
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
  }

  Expr binary(Expr lhs, const std::string& op, Expr rhs) {
    Expr e;
    e.kind = Expr::Kind::Binary;
    e.loc = lhs.loc;
    e.text = op;
    e.kids.push_back(std::move(lhs));
    e.kids.push_back(std::move(rhs));
    return e;
  }

  Expr parse_or() {
    Expr e = parse_and();
    while (at_punct("||")) {
      advance();
      e = binary(std::move(e), "||", parse_and());
    }
    return e;
  }

  Expr parse_and() {
    Expr e = parse_equality();
    while (at_punct("&&")) {
      advance();
      e = binary(std::move(e), "&&", parse_equality());
    }
    return e;
  }

  Expr parse_equality() {
    Expr e = parse_relational();
    while (at_punct("==") || at_punct("!=")) {
      const std::string op = advance().text;
      e = binary(std::move(e), op, parse_relational());
    }
    return e;
  }

  Expr parse_relational() {
    Expr e = parse_additive();
    while (at_punct("<") || at_punct(">") || at_punct("<=") || at_punct(">=")) {
      const std::string op = advance().text;
      e = binary(std::move(e), op, parse_additive());
    }
    return e;
  }

  Expr parse_additive() {
    Expr e = parse_multiplicative();
    while (at_punct("+") || at_punct("-")) {
      const std::string op = advance().text;
      e = binary(std::move(e), op, parse_multiplicative());
    }
    return e;
  }

  Expr parse_multiplicative() {
    Expr e = parse_unary();
    while (at_punct("*") || at_punct("/")) {
      const std::string op = advance().text;
      e = binary(std::move(e), op, parse_unary());
    }
    return e;
  }

  Expr parse_unary() {
    const SourceLoc loc = peek().loc;
    if (at_punct("!")) {
      advance();
      Expr e;
      e.kind = Expr::Kind::Not;
      e.loc = loc;
      e.kids.push_back(parse_unary());
      return e;
    }
    if (at_punct("-")) {
      advance();
      if (peek().kind != Token::Kind::IntLit)
        fail(loc, "unary minus is only supported on integer literals");
      return parse_int_literal(true, loc);
    }
    return parse_postfix();
  }

  Expr parse_int_literal(bool negate, SourceLoc loc) {
    const std::string digits = advance().text;
    Expr e;
    e.kind = Expr::Kind::IntLit;
    e.loc = loc;
    try {
      e.num = std::stoll(negate ? "-" + digits : digits);
    } catch (const std::out_of_range&) {
      fail(loc, "integer literal out of range");
    }
    return e;
  }

  Expr parse_postfix() {
    Expr e = parse_primary();
    while (true) {
      if (at_punct("->") || at_punct(".")) {
        const bool arrow = peek().text == "->";
        const SourceLoc loc = peek().loc;
        advance();
        const std::string field = expect_ident("member name");
        if (at_punct("(")) {
          if (!arrow) fail(loc, "method calls require '->'");
          Expr call;
          call.kind = Expr::Kind::MethodCall;
          call.loc = e.loc;
          call.text = field;
          call.kids.push_back(std::move(e));
          parse_args(call.kids);
          e = std::move(call);
        } else {
          Expr m;
          m.kind = Expr::Kind::Member;
          m.loc = e.loc;
          m.text = field;
          m.arrow = arrow;
          m.kids.push_back(std::move(e));
          e = std::move(m);
        }
        continue;
      }
      if (at_punct("[")) {
        advance();
        Expr idx;
        idx.kind = Expr::Kind::Index;
        idx.loc = e.loc;
        idx.kids.push_back(std::move(e));
        idx.kids.push_back(parse_expr());
        expect_punct("]");
        e = std::move(idx);
        continue;
      }
      if (at_punct("++")) {
        if (e.kind != Expr::Kind::Ident && e.kind != Expr::Kind::Member)
          fail_here("'++' requires a variable or member access");
        advance();
        Expr inc;
        inc.kind = Expr::Kind::PostIncr;
        inc.loc = e.loc;
        inc.kids.push_back(std::move(e));
        e = std::move(inc);
        continue;
      }
      break;
    }
    return e;
  }

  void parse_args(std::vector<Expr>& out) {
    expect_punct("(");
    if (!at_punct(")")) {
      out.push_back(parse_expr());
      while (at_punct(",")) {
        advance();
        out.push_back(parse_expr());
      }
    }
    expect_punct(")");
  }

  Expr parse_primary() {
    const SourceLoc loc = peek().loc;
    if (peek().kind == Token::Kind::IntLit) return parse_int_literal(false, loc);
    if (peek().kind == Token::Kind::StringLit) {
      Expr e;
      e.kind = Expr::Kind::StringLit;
      e.loc = loc;
      e.text = advance().text;
      return e;
    }
    if (at_kw("true") || at_kw("false")) {
      Expr e;
      e.kind = Expr::Kind::BoolLit;
      e.loc = loc;
      e.truth = advance().text == "true";
      return e;
    }
    if (at_kw("this")) {
      advance();
      Expr e;
      e.kind = Expr::Kind::This;
      e.loc = loc;
      return e;
    }
    if (at_punct("(")) {
      advance();
      Expr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (at_punct("[")) return parse_lambda();
    if (at_punct("{")) {
      advance();
      Expr e;
      e.kind = Expr::Kind::InitList;
      e.loc = loc;
      if (!at_punct("}")) {
        e.kids.push_back(parse_expr());
        while (at_punct(",")) {
          advance();
          e.kids.push_back(parse_expr());
        }
      }
      expect_punct("}");
      return e;
    }
    if (at_ident()) {
      const std::string name = expect_ident("identifier");
      if (at_punct("(")) {
        Expr call;
        call.kind = Expr::Kind::Call;
        call.loc = loc;
        call.text = name;
        parse_args(call.kids);
        return call;
      }
      Expr e;
      e.kind = Expr::Kind::Ident;
      e.loc = loc;
      e.text = name;
      return e;
    }
    fail_here("expected an expression before '" + describe(peek()) + "'");
  }

  Expr parse_lambda() {
    Expr e;
    e.kind = Expr::Kind::Lambda;
    e.loc = peek().loc;
    expect_punct("[");
    if (!at_punct("]")) {
      while (true) {
        Capture c;
        c.loc = peek().loc;
        if (at_punct("&")) {
          advance();
          c.by_ref = true;
        }
        c.name = expect_ident("capture name");
        e.captures.push_back(std::move(c));
        if (!at_punct(",")) break;
        advance();
      }
    }
    expect_punct("]");
    e.params = parse_params();
    e.body = parse_block();
    return e;
  }
};

}  // namespace

TranslationUnit parse_translation_unit(const std::string& source, const std::string& filename) {
  Parser p(tokenize(source, filename), filename);
  return p.parse_unit();
}

}  // namespace moolts::moo
