#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcag/scenario.hpp"
#include "dcag/validate.hpp"

namespace dcag {
namespace {

struct Pos {
  int line = 1;
  int column = 1;
};

struct Token {
  enum Type { Ident, Number, Arrow, LParen, RParen, Comma, End } type;
  std::string text;
  double value = 0.0;
  Pos pos;
};

struct LexFail {
  Pos pos;
  std::string message;
  std::string snippet;
};

// Tokenizes the whole source. '#' starts a line comment; tokens are
// identifiers, signed numbers, "->", "(", ")" and ",".
std::variant<std::vector<Token>, LexFail> lex(const std::string& src) {
  std::vector<Token> out;
  Pos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        pos.line++;
        pos.column = 1;
      } else {
        pos.column++;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Pos start = pos;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Token::Ident, src.substr(i, j - i), 0.0, start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && i + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      if (src[j] == '-' || src[j] == '+') ++j;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '-' || src[k] == '+')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      std::string text = src.substr(i, j - i);
      out.push_back({Token::Number, text, std::strtod(text.c_str(), nullptr), start});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Token::Arrow, "->", 0.0, start});
      advance(2);
      continue;
    }
    if (c == '(') {
      out.push_back({Token::LParen, "(", 0.0, start});
      advance(1);
      continue;
    }
    if (c == ')') {
      out.push_back({Token::RParen, ")", 0.0, start});
      advance(1);
      continue;
    }
    if (c == ',') {
      out.push_back({Token::Comma, ",", 0.0, start});
      advance(1);
      continue;
    }
    return LexFail{start, "unexpected character", std::string(1, c)};
  }
  out.push_back({Token::End, "", 0.0, pos});
  return out;
}

// Intermediate statement forms carrying source positions for
// post-parse resolution and validation diagnostics.
struct RootStmt {
  NodeId id;
  double level;
  Pos pos, level_pos;
};
struct NodeStmt {
  NodeId id;
  double intensity;
  Pos pos, intensity_pos;
};
struct GatewayStmt {
  NodeId id;
  GatewayKind kind;
  std::vector<std::pair<NodeId, Pos>> parents;
  std::optional<double> prob;
  Pos pos, prob_pos;
};
struct EdgeStmt {
  NodeId src, dst;
  EdgeKind kind;
  double prob, intensity;
  Pos pos, src_pos, dst_pos, prob_pos, intensity_pos;
};
struct SimStmt {
  int iterations = 1;
  std::vector<std::pair<NodeId, Pos>> system;
  std::optional<double> tolerance;
  std::optional<int> inner_max;
  Pos pos;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParseResult parse() {
    while (!at(Token::End)) {
      const Token& head = peek();
      if (head.type != Token::Ident)
        return fail(head, "expected a statement keyword");
      if (head.text == "root") {
        if (auto e = parse_root()) return *e;
      } else if (head.text == "node") {
        if (auto e = parse_node()) return *e;
      } else if (head.text == "gateway") {
        if (auto e = parse_gateway()) return *e;
      } else if (head.text == "edge") {
        if (auto e = parse_edge()) return *e;
      } else if (head.text == "simulate") {
        if (auto e = parse_simulate()) return *e;
      } else {
        return fail(head, "unknown keyword '" + head.text + "'");
      }
    }
    return build();
  }

 private:
  std::vector<Token> toks_;
  std::size_t cur_ = 0;

  std::vector<RootStmt> roots_;
  std::vector<NodeStmt> nodes_;
  std::vector<GatewayStmt> gateways_;
  std::vector<EdgeStmt> edges_;
  std::optional<SimStmt> sim_;

  const Token& peek() const { return toks_[cur_]; }
  const Token& get() { return toks_[cur_++]; }
  bool at(Token::Type t) const { return peek().type == t; }
  bool at_ident(const char* word) const {
    return peek().type == Token::Ident && peek().text == word;
  }

  static ParseError fail(const Token& tok, const std::string& message) {
    return ParseError{tok.pos.line, tok.pos.column, message, tok.text};
  }
  static ParseError fail_at(Pos pos, const std::string& message, const std::string& snippet) {
    return ParseError{pos.line, pos.column, message, snippet};
  }

  std::optional<ParseError> expect_ident(const char* word) {
    if (!at_ident(word)) return fail(peek(), std::string("expected '") + word + "'");
    get();
    return std::nullopt;
  }

  // ID with the lexical rule of NodeId.
  std::optional<ParseError> expect_id(NodeId& out, Pos& pos) {
    if (peek().type != Token::Ident) return fail(peek(), "expected an identifier");
    out = peek().text;
    pos = peek().pos;
    get();
    return std::nullopt;
  }

  std::optional<ParseError> expect_num(double& out, Pos& pos, std::string* text = nullptr) {
    if (peek().type != Token::Number) return fail(peek(), "expected a number");
    out = peek().value;
    pos = peek().pos;
    if (text) *text = peek().text;
    get();
    return std::nullopt;
  }

  std::optional<ParseError> expect_int(int& out, Pos& pos) {
    if (peek().type != Token::Number) return fail(peek(), "expected an integer");
    double v = peek().value;
    if (v != static_cast<double>(static_cast<long long>(v)) ||
        peek().text.find_first_of(".eE") != std::string::npos)
      return fail(peek(), "expected an integer");
    out = static_cast<int>(v);
    pos = peek().pos;
    get();
    return std::nullopt;
  }

  std::optional<ParseError> parse_id_list(std::vector<std::pair<NodeId, Pos>>& out) {
    if (!at(Token::LParen)) return fail(peek(), "expected '('");
    get();
    while (true) {
      NodeId id;
      Pos pos;
      if (auto e = expect_id(id, pos)) return e;
      out.emplace_back(id, pos);
      if (at(Token::Comma)) {
        get();
        continue;
      }
      break;
    }
    if (!at(Token::RParen)) return fail(peek(), "expected ')' or ','");
    get();
    return std::nullopt;
  }

  std::optional<ParseError> parse_root() {
    RootStmt s;
    s.pos = get().pos;  // 'root'
    if (auto e = expect_id(s.id, s.pos)) return e;
    if (auto e = expect_ident("level")) return e;
    std::string level_text;
    if (auto e = expect_num(s.level, s.level_pos, &level_text)) return e;
    if (s.level < 0.0)
      return fail_at(s.level_pos, "negative level", level_text);
    roots_.push_back(std::move(s));
    return std::nullopt;
  }

  std::optional<ParseError> parse_node() {
    NodeStmt s;
    s.pos = get().pos;  // 'node'
    if (auto e = expect_id(s.id, s.pos)) return e;
    if (auto e = expect_ident("intensity")) return e;
    std::string intensity_text;
    if (auto e = expect_num(s.intensity, s.intensity_pos, &intensity_text)) return e;
    if (s.intensity < 0.0)
      return fail_at(s.intensity_pos, "negative intensity", intensity_text);
    nodes_.push_back(std::move(s));
    return std::nullopt;
  }

  std::optional<ParseError> parse_gateway() {
    GatewayStmt s;
    s.pos = get().pos;  // 'gateway'
    if (auto e = expect_id(s.id, s.pos)) return e;
    if (at_ident("csum")) {
      s.kind = GatewayKind::ConditionalSum;
      get();
    } else if (at_ident("sum")) {
      s.kind = GatewayKind::PlainSum;
      get();
    } else {
      return fail(peek(), "expected 'csum' or 'sum'");
    }
    if (auto e = parse_id_list(s.parents)) return e;
    if (at_ident("prob")) {
      get();
      double p;
      std::string prob_text;
      if (auto e = expect_num(p, s.prob_pos, &prob_text)) return e;
      if (p < 0.0 || p > 1.0)
        return fail_at(s.prob_pos, "probability outside [0,1]", prob_text);
      s.prob = p;
    }
    gateways_.push_back(std::move(s));
    return std::nullopt;
  }

  std::optional<ParseError> parse_edge() {
    EdgeStmt s;
    s.pos = get().pos;  // 'edge'
    if (auto e = expect_id(s.src, s.src_pos)) return e;
    if (!at(Token::Arrow)) return fail(peek(), "expected '->'");
    get();
    if (auto e = expect_id(s.dst, s.dst_pos)) return e;
    if (auto e = expect_ident("kind")) return e;
    if (at_ident("same")) {
      s.kind = EdgeKind::SameSlice;
    } else if (at_ident("gated")) {
      s.kind = EdgeKind::GatedCrossSlice;
    } else if (at_ident("self")) {
      s.kind = EdgeKind::SelfLoop;
    } else {
      return fail(peek(), "expected 'same', 'gated' or 'self'");
    }
    get();
    if (auto e = expect_ident("prob")) return e;
    std::string prob_text;
    if (auto e = expect_num(s.prob, s.prob_pos, &prob_text)) return e;
    if (s.prob < 0.0 || s.prob > 1.0)
      return fail_at(s.prob_pos, "probability outside [0,1]", prob_text);
    if (auto e = expect_ident("intensity")) return e;
    std::string intensity_text;
    if (auto e = expect_num(s.intensity, s.intensity_pos, &intensity_text)) return e;
    if (s.intensity < 0.0)
      return fail_at(s.intensity_pos, "negative intensity", intensity_text);
    edges_.push_back(std::move(s));
    return std::nullopt;
  }

  std::optional<ParseError> parse_simulate() {
    SimStmt s;
    s.pos = peek().pos;
    if (sim_) return fail(peek(), "duplicate simulate statement");
    get();  // 'simulate'
    if (auto e = expect_ident("iterations")) return e;
    Pos ipos;
    if (auto e = expect_int(s.iterations, ipos)) return e;
    if (s.iterations < 1)
      return fail_at(ipos, "iterations must be >= 1", std::to_string(s.iterations));
    if (at_ident("system")) {
      get();
      if (auto e = parse_id_list(s.system)) return e;
    }
    if (at_ident("tolerance")) {
      get();
      double tol;
      Pos tpos;
      std::string tol_text;
      if (auto e = expect_num(tol, tpos, &tol_text)) return e;
      if (!(tol > 0.0)) return fail_at(tpos, "tolerance must be positive", tol_text);
      s.tolerance = tol;
    }
    if (at_ident("inner_max")) {
      get();
      int m;
      Pos mpos;
      if (auto e = expect_int(m, mpos)) return e;
      if (m < 1) return fail_at(mpos, "inner_max must be >= 1", std::to_string(m));
      s.inner_max = m;
    }
    sim_ = std::move(s);
    return std::nullopt;
  }

  // Declaration table, resolution, graph assembly, final validation.
  ParseResult build() {
    std::map<NodeId, Pos> declared;
    auto declare = [&](const NodeId& id, Pos pos) -> std::optional<ParseError> {
      if (!is_valid_node_id(id))
        return fail_at(pos, "invalid identifier '" + id + "'", id);
      auto [it, inserted] = declared.emplace(id, pos);
      if (!inserted) return fail_at(pos, "duplicate id '" + id + "'", id);
      return std::nullopt;
    };
    for (const auto& r : roots_)
      if (auto e = declare(r.id, r.pos)) return *e;
    for (const auto& n : nodes_)
      if (auto e = declare(n.id, n.pos)) return *e;
    for (const auto& g : gateways_)
      if (auto e = declare(g.id, g.pos)) return *e;

    auto resolve = [&](const NodeId& id, Pos pos) -> std::optional<ParseError> {
      if (!declared.count(id))
        return fail_at(pos, "unresolved identifier " + id, id);
      return std::nullopt;
    };
    for (const auto& g : gateways_)
      for (const auto& [pid, ppos] : g.parents)
        if (auto e = resolve(pid, ppos)) return *e;
    for (const auto& e : edges_) {
      if (auto err = resolve(e.src, e.src_pos)) return *err;
      if (auto err = resolve(e.dst, e.dst_pos)) return *err;
    }
    if (sim_)
      for (const auto& [sid, spos] : sim_->system)
        if (auto e = resolve(sid, spos)) return *e;

    Scenario scenario;
    for (const auto& r : roots_) scenario.graph.roots.push_back({r.id, r.level});
    for (const auto& n : nodes_)
      scenario.graph.nodes.push_back({n.id, NodeKind::Exploit, n.intensity});
    for (const auto& g : gateways_) {
      Gateway gw;
      gw.id = g.id;
      gw.kind = g.kind;
      for (const auto& [pid, ppos] : g.parents) gw.parents.push_back(pid);
      if (g.kind == GatewayKind::ConditionalSum && g.prob) {
        // A uniform probability fills every entry the csum expression reads.
        for (const auto& pid : gw.parents) {
          gw.probs[{StateIndex::AtRisk, pid, StateIndex::AtRisk}] = *g.prob;
          gw.probs[{StateIndex::Benign, pid, StateIndex::AtRisk}] = *g.prob;
        }
      }
      scenario.graph.gateways.push_back(std::move(gw));
    }
    for (const auto& e : edges_)
      scenario.graph.edges.push_back({e.src, e.dst, e.kind, e.prob, e.intensity});
    if (sim_) {
      scenario.config.iterations = sim_->iterations;
      for (const auto& [sid, spos] : sim_->system)
        scenario.graph.system_nodes.push_back(sid);
      if (sim_->tolerance) scenario.config.inner_tolerance = *sim_->tolerance;
      if (sim_->inner_max) scenario.config.inner_max_iters = *sim_->inner_max;
    }

    ValidationReport report = validate(scenario.graph);
    if (!report.ok()) {
      const Violation& v = report.violations.front();
      Pos pos{1, 1};
      if (auto it = declared.find(v.subject); it != declared.end()) {
        pos = it->second;
      } else {
        // Edge subjects are "src->dst"; point at the edge statement.
        for (const auto& e : edges_) {
          if (e.src + "->" + e.dst == v.subject) {
            pos = e.pos;
            break;
          }
        }
      }
      return fail_at(pos, v.message, v.subject);
    }
    return scenario;
  }
};

}  // namespace

ParseResult parse_scenario(const std::string& source) {
  auto lexed = lex(source);
  if (auto* f = std::get_if<LexFail>(&lexed))
    return ParseError{f->pos.line, f->pos.column, f->message, f->snippet};
  return Parser(std::move(std::get<std::vector<Token>>(lexed))).parse();
}

}  // namespace dcag
