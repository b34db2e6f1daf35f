// Copyright 2026 The Graphlin Authors.
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

#include "graphlin/penman.h"

#include <cctype>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <spdlog/spdlog.h>

namespace graphlin {
namespace {

enum class Lex { kOpen, kClose, kSlash, kRole, kString, kSymbol, kEnd };

const char* LexName(Lex lex) {
  switch (lex) {
    case Lex::kOpen: return "'('";
    case Lex::kClose: return "')'";
    case Lex::kSlash: return "'/'";
    case Lex::kRole: return "role";
    case Lex::kString: return "string";
    case Lex::kSymbol: return "symbol";
    case Lex::kEnd: return "end of input";
  }
  return "?";
}

struct Lexeme {
  Lex kind = Lex::kEnd;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool IsSymbolChar(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '/' &&
         c != ':' && c != '~' && c != '"';
}

class Lexer {
 public:
  Lexer(std::string_view text, ParseStats* stats) : text_(text), stats_(stats) {}

  std::vector<Lexeme> Run() {
    std::vector<Lexeme> out;
    while (true) {
      SkipSpace();
      Lexeme lx;
      lx.line = line_;
      lx.column = column_;
      if (pos_ >= text_.size()) {
        out.push_back(lx);
        return out;
      }
      char c = text_[pos_];
      if (c == '(') {
        lx.kind = Lex::kOpen;
        lx.text = "(";
        Advance();
      } else if (c == ')') {
        lx.kind = Lex::kClose;
        lx.text = ")";
        Advance();
      } else if (c == '/') {
        lx.kind = Lex::kSlash;
        lx.text = "/";
        Advance();
      } else if (c == ':') {
        lx.kind = Lex::kRole;
        std::size_t start = pos_;
        Advance();
        while (pos_ < text_.size() && IsSymbolChar(text_[pos_])) Advance();
        lx.text = std::string(text_.substr(start, pos_ - start));
      } else if (c == '"') {
        lx.kind = Lex::kString;
        std::size_t start = pos_;
        Advance();
        while (pos_ < text_.size() && text_[pos_] != '"') {
          if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) Advance();
          Advance();
        }
        if (pos_ >= text_.size()) {
          throw PenmanError(PenmanError::Kind::kSyntax, lx.line, lx.column,
                            "unterminated string literal");
        }
        Advance();
        lx.text = std::string(text_.substr(start, pos_ - start));
      } else if (c == '~') {
        throw PenmanError(PenmanError::Kind::kSyntax, lx.line, lx.column,
                          "alignment marker without a preceding token");
      } else {
        lx.kind = Lex::kSymbol;
        std::size_t start = pos_;
        while (pos_ < text_.size() && IsSymbolChar(text_[pos_])) Advance();
        lx.text = std::string(text_.substr(start, pos_ - start));
      }
      SkipAlignment();
      out.push_back(std::move(lx));
    }
  }

 private:
  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      Advance();
    }
  }

  // "~e.12" or "~e.3,4" directly after a token.
  void SkipAlignment() {
    if (pos_ >= text_.size() || text_[pos_] != '~') return;
    Advance();
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == ',')) {
      Advance();
    }
    if (stats_) ++stats_->alignments_stripped;
  }

  std::string_view text_;
  ParseStats* stats_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool LooksLikeVariable(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

class Parser {
 public:
  explicit Parser(std::vector<Lexeme> lexemes) : lx_(std::move(lexemes)) {}

  LinearTree Run() {
    ParseNode();
    if (Peek().kind != Lex::kEnd) Fail("end of input");
    ResolveSymbols();
    return std::move(tree_);
  }

 private:
  struct PendingSymbol {
    std::size_t node;
    std::size_t branch;
    std::size_t line;
    std::size_t column;
  };

  const Lexeme& Peek() const { return lx_[pos_]; }

  [[noreturn]] void Fail(const std::string& expected) const {
    const Lexeme& at = Peek();
    throw PenmanError(PenmanError::Kind::kSyntax, at.line, at.column,
                      "expected " + expected + ", found " + LexName(at.kind) +
                          (at.text.empty() ? "" : " '" + at.text + "'"));
  }

  const Lexeme& Expect(Lex kind, const char* what) {
    if (Peek().kind != kind) Fail(what);
    return lx_[pos_++];
  }

  std::size_t ParseNode() {
    Expect(Lex::kOpen, "'('");
    const Lexeme& var = Expect(Lex::kSymbol, "variable");
    if (!IsValidVariable(var.text)) Fail("variable");
    Expect(Lex::kSlash, "'/'");
    if (Peek().kind != Lex::kSymbol && Peek().kind != Lex::kString) Fail("concept");
    const Lexeme& concept_name = lx_[pos_++];
    if (!defined_.insert(var.text).second) {
      throw PenmanError(PenmanError::Kind::kDuplicateDefinition, var.line, var.column,
                        "variable '" + var.text + "' defined twice");
    }
    const std::size_t index = tree_.AddNode(var.text, concept_name.text);
    while (Peek().kind == Lex::kRole) {
      Branch branch;
      branch.role = lx_[pos_++].text;
      if (branch.role.size() < 2) Fail("role label");
      const Lexeme& next = Peek();
      switch (next.kind) {
        case Lex::kOpen:
          branch.kind = Branch::Kind::kNode;
          branch.node = ParseNode();
          break;
        case Lex::kString:
          branch.kind = Branch::Kind::kConstant;
          branch.value = next.text;
          ++pos_;
          break;
        case Lex::kSymbol:
          // Reference or constant; decided once all definitions are known.
          branch.kind = Branch::Kind::kConstant;
          branch.value = next.text;
          pending_.push_back({index, tree_.nodes()[index].branches.size(), next.line,
                              next.column});
          ++pos_;
          break;
        default:
          Fail("node, variable or constant after " + branch.role);
      }
      tree_.mutable_nodes()[index].branches.push_back(std::move(branch));
    }
    Expect(Lex::kClose, "')' or role");
    return index;
  }

  void ResolveSymbols() {
    for (const PendingSymbol& p : pending_) {
      Branch& b = tree_.mutable_nodes()[p.node].branches[p.branch];
      if (defined_.count(b.value)) {
        b.kind = Branch::Kind::kReference;
      } else if (LooksLikeVariable(b.value)) {
        throw PenmanError(PenmanError::Kind::kDanglingReference, p.line, p.column,
                          "variable '" + b.value + "' is never defined");
      }
    }
  }

  std::vector<Lexeme> lx_;
  std::size_t pos_ = 0;
  LinearTree tree_;
  std::unordered_set<std::string> defined_;
  std::vector<PendingSymbol> pending_;
};

void SerializeNode(const LinearTree& tree, std::size_t index, std::vector<std::string>& out) {
  const TreeNode& node = tree.nodes()[index];
  out.emplace_back("(");
  out.push_back(node.variable);
  out.emplace_back("/");
  out.push_back(node.concept_name);
  for (const Branch& b : node.branches) {
    out.push_back(b.role);
    if (b.kind == Branch::Kind::kNode) {
      SerializeNode(tree, b.node, out);
    } else {
      out.push_back(b.value);
    }
  }
  out.emplace_back(")");
}

void FormatNode(const LinearTree& tree, std::size_t index, std::size_t indent, std::string& out) {
  const TreeNode& node = tree.nodes()[index];
  out += "(" + node.variable + " / " + node.concept_name;
  for (const Branch& b : node.branches) {
    out += '\n';
    out.append(indent + 4, ' ');
    out += b.role + ' ';
    if (b.kind == Branch::Kind::kNode) {
      FormatNode(tree, b.node, indent + 4 + b.role.size() + 1, out);
    } else {
      out += b.value;
    }
  }
  out += ')';
}

}  // namespace

PenmanError::PenmanError(Kind kind, std::size_t line, std::size_t column, std::string message)
    : std::runtime_error(std::string(PenmanErrorKindName(kind)) + " at " + std::to_string(line) +
                         ":" + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

const char* PenmanErrorKindName(PenmanError::Kind kind) {
  switch (kind) {
    case PenmanError::Kind::kSyntax: return "SyntaxError";
    case PenmanError::Kind::kDuplicateDefinition: return "DuplicateDefinition";
    case PenmanError::Kind::kDanglingReference: return "DanglingReference";
  }
  return "?";
}

LinearTree ParsePenman(std::string_view text, ParseStats* stats) {
  ParseStats local;
  ParseStats* sink = stats ? stats : &local;
  const std::size_t before = sink->alignments_stripped;
  LinearTree tree = Parser(Lexer(text, sink).Run()).Run();
  if (!stats && sink->alignments_stripped > before) {
    spdlog::warn("stripped {} alignment marker(s)", sink->alignments_stripped - before);
  }
  return tree;
}

AmrGraph TreeToGraph(const LinearTree& tree, const GraphOptions& options) {
  std::vector<Triple> triples;
  for (const TreeNode& node : tree.nodes()) {
    triples.push_back(Triple::Instance(node.variable, node.concept_name));
  }
  for (const TreeNode& node : tree.nodes()) {
    for (const Branch& b : node.branches) {
      switch (b.kind) {
        case Branch::Kind::kNode:
          triples.push_back(
              Triple::Relation(node.variable, b.role, tree.nodes()[b.node].variable));
          break;
        case Branch::Kind::kReference:
          triples.push_back(Triple::Relation(node.variable, b.role, b.value));
          break;
        case Branch::Kind::kConstant:
          triples.push_back(Triple::Attribute(node.variable, b.role, b.value));
          break;
      }
    }
  }
  return GraphFromTriples(std::move(triples), tree.root().variable, options);
}

TokenSeq Serialize(const LinearTree& tree) {
  TokenSeq seq;
  if (!tree.empty()) SerializeNode(tree, 0, seq.tokens);
  return seq;
}

std::string FormatPenman(const LinearTree& tree) {
  std::string out;
  if (!tree.empty()) FormatNode(tree, 0, 0, out);
  return out;
}

std::string StripSense(std::string_view concept_name) {
  std::size_t dash = concept_name.rfind('-');
  if (dash == std::string_view::npos || dash == 0 || dash + 1 == concept_name.size()) {
    return std::string(concept_name);
  }
  for (std::size_t i = dash + 1; i < concept_name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(concept_name[i]))) return std::string(concept_name);
  }
  return std::string(concept_name.substr(0, dash));
}

TokenSeq Simplify(const TokenSeq& seq) {
  const auto& t = seq.tokens;
  const std::size_t n = t.size();
  std::unordered_map<std::string, std::string> concept_of;
  for (std::size_t i = 0; i + 3 < n; ++i) {
    if (t[i] == "(" && t[i + 2] == "/") concept_of.emplace(t[i + 1], t[i + 3]);
  }
  TokenSeq out;
  out.tokens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i] == "(" && i + 3 < n && t[i + 2] == "/") {
      out.tokens.emplace_back("(");
      out.tokens.push_back(StripSense(t[i + 3]));
      i += 3;
      continue;
    }
    if (i > 0 && t[i - 1].size() > 1 && t[i - 1][0] == ':') {
      auto it = concept_of.find(t[i]);
      if (it != concept_of.end()) {
        out.tokens.push_back(StripSense(it->second));
        continue;
      }
    }
    out.tokens.push_back(t[i]);
  }
  return out;
}

}  // namespace graphlin
