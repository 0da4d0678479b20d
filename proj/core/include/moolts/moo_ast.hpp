#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace moolts::moo {

struct SourceLoc {
  int line = 0;
  int col = 0;
};

// All frontend/transform diagnostics carry "file:line:col: message" in what().
class MooError : public std::runtime_error {
 public:
  MooError(const std::string& file, SourceLoc loc, const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.col) +
                           ": " + message),
        loc_(loc) {}

  SourceLoc where() const { return loc_; }

 private:
  SourceLoc loc_;
};

struct Type {
  enum class Kind { Int, Bool, Void, String, List, Named, Auto };
  Kind kind = Kind::Int;
  bool pointer = false;             // Named only: "Name*" (class instance)
  std::string name;                 // Named
  std::shared_ptr<Type> elem;       // List
};

struct Capture {
  std::string name;
  bool by_ref = false;
  SourceLoc loc;
};

struct Param {
  Type type;
  std::string name;
  bool by_ref = false;
  SourceLoc loc;
};

struct Stmt;

struct Expr {
  enum class Kind {
    IntLit,      // num
    BoolLit,     // truth
    StringLit,   // text
    Ident,       // text
    This,
    Not,         // kids[0]
    Binary,      // text = op, kids[0..1]
    Ternary,     // kids[0..2]
    PostIncr,    // kids[0] (identifier or member access)
    Member,      // kids[0] = owner, text = field, arrow
    Call,        // bare call: text = callee, kids = args
    MethodCall,  // kids[0] = owner, text = func, kids[1..] = args
    Index,       // kids[0] = base, kids[1] = index
    Lambda,      // captures/params/body
    InitList     // kids = elements
  };

  Kind kind{};
  SourceLoc loc{};
  long long num = 0;
  bool truth = false;
  std::string text;
  bool arrow = false;
  std::vector<Expr> kids;
  std::vector<Capture> captures;
  std::vector<Param> params;
  std::vector<Stmt> body;
};

struct Case {
  bool is_default = false;
  Expr label;  // ignored when is_default
  std::vector<Stmt> body;
  SourceLoc loc;
};

struct Stmt {
  enum class Kind {
    Block,     // body1
    VarDecl,   // type/name/by_ref, exprs[0] = init if has_init
    ExprStmt,  // exprs[0]
    Assign,    // exprs[0] = target (Ident/Member), exprs[1] = value
    If,        // exprs[0], body1 = then, body2 = else
    While,     // exprs[0], body1
    For,       // pre (0/1), exprs[0] = cond if has_cond, post (0/1), body1
    Switch,    // exprs[0], cases
    Continue,
    Break,
    Return,    // exprs[0] if present
    Try,       // body1 = try, body2 = handler
    Throw      // exprs[0] if present (evaluated for side effects)
  };

  Kind kind{};
  SourceLoc loc{};
  Type type{};
  std::string name;
  bool by_ref = false;
  bool has_init = false;
  bool has_cond = false;
  std::vector<Expr> exprs;
  std::vector<Stmt> body1;
  std::vector<Stmt> body2;
  std::vector<Stmt> pre;
  std::vector<Stmt> post;
  std::vector<Case> cases;
};

struct EnumDecl {
  std::string name;
  std::vector<std::string> literals;
  SourceLoc loc;
};

struct FieldDecl {
  Type type;
  std::string name;
  bool is_public = false;
  SourceLoc loc;
};

struct MemberDecl {
  std::string class_name;
  std::string name;
  bool is_public = false;
  SourceLoc loc;
};

struct CtorInit {
  std::string field;
  Expr value;
  SourceLoc loc;
};

struct MethodDecl {
  std::string name;
  Type return_type;
  std::vector<Param> params;
  bool has_body = false;
  std::vector<Stmt> body;
  bool is_ctor = false;
  std::vector<CtorInit> inits;
  bool is_public = false;
  SourceLoc loc;
};

struct ClassDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  std::vector<MemberDecl> members;
  std::vector<MethodDecl> ctors;
  std::vector<MethodDecl> methods;
  SourceLoc loc;
};

struct TranslationUnit {
  std::vector<EnumDecl> enums;
  std::vector<ClassDecl> classes;
  std::vector<FieldDecl> global_vars;
  std::vector<MethodDecl> global_funcs;
};

}  // namespace moolts::moo
