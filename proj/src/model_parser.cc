// Copyright 2026 The fmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fmlab/model_parser.h"

#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace fmlab {

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what)
    : ModelError(std::to_string(line) + ":" + std::to_string(column) + ": " +
                 what),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  kName,
  kLBrace,
  kRBrace,
  kLParen,
  kRParen,
  kSemi,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kEnd
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool IsNameStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> Tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, co = col;
    if (IsNameStart(c)) {
      std::size_t j = i;
      while (j < s.size() && IsNameChar(s[j])) ++j;
      out.push_back({Tok::kName, std::string(s.substr(i, j - i)), l, co});
      advance(j - i);
      continue;
    }
    auto sym = [&](Tok t, std::size_t n) {
      out.push_back({t, std::string(s.substr(i, n)), l, co});
      advance(n);
    };
    if (s.substr(i, 3) == "<=>") {
      sym(Tok::kIff, 3);
    } else if (s.substr(i, 2) == "=>") {
      sym(Tok::kImplies, 2);
    } else if (c == '{') {
      sym(Tok::kLBrace, 1);
    } else if (c == '}') {
      sym(Tok::kRBrace, 1);
    } else if (c == '(') {
      sym(Tok::kLParen, 1);
    } else if (c == ')') {
      sym(Tok::kRParen, 1);
    } else if (c == ';') {
      sym(Tok::kSemi, 1);
    } else if (c == '!') {
      sym(Tok::kNot, 1);
    } else if (c == '&') {
      sym(Tok::kAnd, 1);
    } else if (c == '|') {
      sym(Tok::kOr, 1);
    } else {
      throw ParseError(l, co, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

bool IsKeyword(const std::string& s) {
  return s == "model" || s == "root" || s == "mandatory" ||
         s == "optional" || s == "alt" || s == "or" || s == "abstract" ||
         s == "constraint";
}

// Formula with unresolved names.
struct RawFormula {
  Formula::Kind kind;
  std::string name;
  std::size_t line = 0, column = 0;
  std::vector<std::unique_ptr<RawFormula>> operands;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  FeatureModel ParseFile() {
    const Token& head = Peek();
    if (!IsName(head, "model") && !IsName(head, "root")) {
      Fail(head, "expected 'model' or 'root'");
    }
    Next();
    GroupKind group = GroupKind::kNone;
    if (Accept("alt")) {
      group = GroupKind::kAlternative;
    } else if (Accept("or")) {
      group = GroupKind::kOr;
    }
    const Token name = ExpectFeatureName();
    const bool abstract_flag = Accept("abstract");
    AddFeature(name, std::nullopt, Decomposition::kMandatory, abstract_flag,
               group);
    ParseBlock(0, group);
    if (Peek().kind != Tok::kEnd) Fail(Peek(), "expected end of input");

    std::vector<Formula> constraints;
    for (const auto& raw : raw_constraints_) {
      constraints.push_back(Resolve(*raw, [&](const std::string& n) {
        auto it = ids_.find(n);
        return it == ids_.end() ? std::optional<FeatureId>()
                                : std::optional<FeatureId>(it->second);
      }));
    }
    return FeatureModel(name.text, std::move(features_),
                        std::move(constraints));
  }

  std::unique_ptr<RawFormula> ParseStandaloneFormula() {
    auto f = ParseIff();
    if (Peek().kind != Tok::kEnd) Fail(Peek(), "unexpected token after formula");
    return f;
  }

  template <typename Lookup>
  static Formula Resolve(const RawFormula& raw, const Lookup& lookup) {
    using K = Formula::Kind;
    if (raw.kind == K::kVar) {
      std::optional<FeatureId> id = lookup(raw.name);
      if (!id) {
        throw ParseError(raw.line, raw.column,
                         "unknown feature '" + raw.name + "' in constraint");
      }
      return Formula::Var(*id);
    }
    if (raw.kind == K::kNot) {
      return Formula::Not(Resolve(*raw.operands[0], lookup));
    }
    return Formula::Binary(raw.kind, Resolve(*raw.operands[0], lookup),
                           Resolve(*raw.operands[1], lookup));
  }

 private:
  const Token& Peek() const { return toks_[pos_]; }
  const Token& Next() { return toks_[pos_++]; }
  static bool IsName(const Token& t, std::string_view s) {
    return t.kind == Tok::kName && t.text == s;
  }
  bool Accept(std::string_view keyword) {
    if (!IsName(Peek(), keyword)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] static void Fail(const Token& t, const std::string& what) {
    throw ParseError(t.line, t.column,
                     t.kind == Tok::kEnd ? what + ", found end of input"
                                         : what + ", found '" + t.text + "'");
  }
  void Expect(Tok kind, const char* what) {
    if (Peek().kind != kind) Fail(Peek(), std::string("expected ") + what);
    ++pos_;
  }
  Token ExpectFeatureName() {
    const Token& t = Peek();
    if (t.kind != Tok::kName || IsKeyword(t.text)) {
      Fail(t, "expected a feature name");
    }
    return Next();
  }

  FeatureId AddFeature(const Token& name, std::optional<FeatureId> parent,
                       Decomposition d, bool abstract_flag, GroupKind group) {
    const FeatureId id = static_cast<FeatureId>(features_.size());
    if (!ids_.emplace(name.text, id).second) {
      throw ParseError(name.line, name.column,
                       "duplicate feature name '" + name.text + "'");
    }
    Feature f;
    f.id = id;
    f.name = name.text;
    f.parent = parent;
    f.decomposition = d;
    f.abstract_flag = abstract_flag;
    f.group = group;
    features_.push_back(std::move(f));
    return id;
  }

  void ParseBlock(FeatureId parent, GroupKind parent_group) {
    const Token open = Peek();
    Expect(Tok::kLBrace, "'{'");
    std::size_t members = 0;
    while (Peek().kind != Tok::kRBrace) {
      if (Peek().kind == Tok::kEnd) Fail(Peek(), "expected '}'");
      if (Accept("constraint")) {
        raw_constraints_.push_back(ParseIff());
        Expect(Tok::kSemi, "';' after constraint");
        continue;
      }
      const Token start = Peek();
      std::optional<Decomposition> d;
      if (Accept("mandatory")) {
        d = Decomposition::kMandatory;
      } else if (Accept("optional")) {
        d = Decomposition::kOptional;
      }
      GroupKind group = GroupKind::kNone;
      if (Accept("alt")) {
        group = GroupKind::kAlternative;
      } else if (Accept("or")) {
        group = GroupKind::kOr;
      }
      if (parent_group != GroupKind::kNone) {
        d = parent_group == GroupKind::kAlternative
                ? Decomposition::kAlternativeMember
                : Decomposition::kOrMember;
        ++members;
      } else if (!d) {
        if (group == GroupKind::kNone) {
          Fail(start, "expected 'mandatory', 'optional', 'alt', 'or' or "
                      "'constraint'");
        }
        d = Decomposition::kMandatory;
      }
      const Token name = ExpectFeatureName();
      const bool abstract_flag = Accept("abstract");
      const FeatureId id = AddFeature(name, parent, *d, abstract_flag, group);
      if (group != GroupKind::kNone) {
        if (Peek().kind != Tok::kLBrace) {
          Fail(Peek(), "expected '{' with the members of group '" +
                           name.text + "'");
        }
        ParseBlock(id, group);
      } else if (Peek().kind == Tok::kLBrace) {
        ParseBlock(id, GroupKind::kNone);
      }
    }
    ++pos_;
    if (parent_group != GroupKind::kNone && members < 2) {
      throw ParseError(open.line, open.column,
                       "group '" + features_[parent].name +
                           "' needs at least two members");
    }
  }

  std::unique_ptr<RawFormula> Make(Formula::Kind kind, const Token& at) {
    auto f = std::make_unique<RawFormula>();
    f->kind = kind;
    f->line = at.line;
    f->column = at.column;
    return f;
  }
  std::unique_ptr<RawFormula> MakeBinary(Formula::Kind kind, const Token& at,
                                         std::unique_ptr<RawFormula> a,
                                         std::unique_ptr<RawFormula> b) {
    auto f = Make(kind, at);
    f->operands.push_back(std::move(a));
    f->operands.push_back(std::move(b));
    return f;
  }

  std::unique_ptr<RawFormula> ParseIff() {
    auto lhs = ParseImplies();
    while (Peek().kind == Tok::kIff) {
      const Token op = Next();
      lhs = MakeBinary(Formula::Kind::kIff, op, std::move(lhs), ParseImplies());
    }
    return lhs;
  }
  std::unique_ptr<RawFormula> ParseImplies() {
    auto lhs = ParseOr();
    if (Peek().kind != Tok::kImplies) return lhs;
    const Token op = Next();
    return MakeBinary(Formula::Kind::kImplies, op, std::move(lhs),
                      ParseImplies());
  }
  std::unique_ptr<RawFormula> ParseOr() {
    auto lhs = ParseAnd();
    while (Peek().kind == Tok::kOr) {
      const Token op = Next();
      lhs = MakeBinary(Formula::Kind::kOr, op, std::move(lhs), ParseAnd());
    }
    return lhs;
  }
  std::unique_ptr<RawFormula> ParseAnd() {
    auto lhs = ParseUnary();
    while (Peek().kind == Tok::kAnd) {
      const Token op = Next();
      lhs = MakeBinary(Formula::Kind::kAnd, op, std::move(lhs), ParseUnary());
    }
    return lhs;
  }
  std::unique_ptr<RawFormula> ParseUnary() {
    const Token t = Peek();
    if (t.kind == Tok::kNot) {
      ++pos_;
      auto f = Make(Formula::Kind::kNot, t);
      f->operands.push_back(ParseUnary());
      return f;
    }
    if (t.kind == Tok::kLParen) {
      ++pos_;
      auto f = ParseIff();
      Expect(Tok::kRParen, "')'");
      return f;
    }
    if (t.kind == Tok::kName && !IsKeyword(t.text)) {
      ++pos_;
      auto f = Make(Formula::Kind::kVar, t);
      f->name = t.text;
      return f;
    }
    Fail(t, "expected a feature name, '!' or '('");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Feature> features_;
  std::unordered_map<std::string, FeatureId> ids_;
  std::vector<std::unique_ptr<RawFormula>> raw_constraints_;
};

int Precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::kIff:
      return 1;
    case Formula::Kind::kImplies:
      return 2;
    case Formula::Kind::kOr:
      return 3;
    case Formula::Kind::kAnd:
      return 4;
    case Formula::Kind::kNot:
      return 5;
    case Formula::Kind::kVar:
      return 6;
  }
  return 0;
}

const char* Symbol(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::kIff:
      return " <=> ";
    case Formula::Kind::kImplies:
      return " => ";
    case Formula::Kind::kOr:
      return " | ";
    case Formula::Kind::kAnd:
      return " & ";
    default:
      return "";
  }
}

void Format(const Formula& f, const FeatureModel& m, int min_prec,
            std::string& out) {
  const int p = Precedence(f.kind());
  const bool parens = p < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case Formula::Kind::kVar:
      out += m.feature(f.var()).name;
      break;
    case Formula::Kind::kNot:
      out += '!';
      Format(f.operand(0), m, p, out);
      break;
    default: {
      // Right-associative => needs a tighter left side; the others are
      // left-associative and need a tighter right side.
      const bool right_assoc = f.kind() == Formula::Kind::kImplies;
      Format(f.operand(0), m, right_assoc ? p + 1 : p, out);
      out += Symbol(f.kind());
      Format(f.operand(1), m, right_assoc ? p : p + 1, out);
      break;
    }
  }
  if (parens) out += ')';
}

void SerializeFeature(const FeatureModel& m, FeatureId id, int depth,
                      std::string& out) {
  const Feature& f = m.feature(id);
  out.append(2 * depth, ' ');
  switch (f.decomposition) {
    case Decomposition::kMandatory:
      out += "mandatory ";
      break;
    case Decomposition::kOptional:
      out += "optional ";
      break;
    default:
      break;
  }
  if (f.group == GroupKind::kAlternative) out += "alt ";
  if (f.group == GroupKind::kOr) out += "or ";
  out += f.name;
  if (f.abstract_flag) out += " abstract";
  if (!f.children.empty()) {
    out += " {\n";
    for (FeatureId c : f.children) SerializeFeature(m, c, depth + 1, out);
    out.append(2 * depth, ' ');
    out += "}";
  }
  out += "\n";
}

}  // namespace

FeatureModel ParseModel(std::string_view text) {
  Parser parser(Tokenize(text));
  return parser.ParseFile();
}

FeatureModel LoadModelFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return ParseModel(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.what());
  }
}

Formula ParseFormula(std::string_view text, const FeatureModel& model) {
  Parser parser(Tokenize(text));
  auto raw = parser.ParseStandaloneFormula();
  return Parser::Resolve(*raw,
                         [&](const std::string& n) { return model.Find(n); });
}

std::string FormatFormula(const Formula& formula, const FeatureModel& model) {
  std::string out;
  Format(formula, model, 0, out);
  return out;
}

std::string SerializeModel(const FeatureModel& model) {
  const Feature& root = model.feature(model.root());
  std::string out = "model ";
  if (root.group == GroupKind::kAlternative) out += "alt ";
  if (root.group == GroupKind::kOr) out += "or ";
  out += root.name;
  if (root.abstract_flag) out += " abstract";
  out += " {\n";
  for (FeatureId c : root.children) SerializeFeature(model, c, 1, out);
  for (const Formula& c : model.constraints()) {
    out += "  constraint " + FormatFormula(c, model) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace fmlab
