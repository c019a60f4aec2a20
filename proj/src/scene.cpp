#include "gluedforms/scene.hpp"

#include "gluedforms/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace gluedforms {

const char* to_string(DeclarationKind kind) {
  switch (kind) {
    case DeclarationKind::Space: return "space";
    case DeclarationKind::Subset: return "subset";
    case DeclarationKind::GlueMap: return "gluemap";
    case DeclarationKind::Glued: return "glued";
    case DeclarationKind::Form: return "form";
    case DeclarationKind::Metric: return "metric";
  }
  return "?";
}

SceneError::SceneError(const std::string& message, std::size_t offset, std::size_t line, std::size_t column,
                       std::optional<std::string> declaration)
    : ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message, offset),
      line_(line),
      column_(column),
      declaration_(std::move(declaration)) {}

namespace {

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) throw std::out_of_range(std::string("no ") + kind + " named '" + name + "'");
  return it->second;
}

struct Span {
  std::string_view text;
  std::size_t offset = 0;  // of text.front() in the scene
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

Span trim(Span s) {
  while (!s.text.empty() && std::isspace(static_cast<unsigned char>(s.text.front()))) {
    s.text.remove_prefix(1);
    ++s.offset;
  }
  while (!s.text.empty() && std::isspace(static_cast<unsigned char>(s.text.back()))) s.text.remove_suffix(1);
  return s;
}

// Splits at commas outside brackets; an all-blank span gives no pieces.
std::vector<Span> split_top_level(Span s) {
  std::vector<Span> parts;
  if (trim(s).text.empty()) return parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.text.size(); ++i) {
    const char c = i < s.text.size() ? s.text[i] : ',';
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(Span{s.text.substr(start, i - start), s.offset + start}));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

namespace detail {

class SceneParser {
 public:
  explicit SceneParser(std::string_view text) : original_(text), text_(strip_comments(text)) {}

  Scene run() {
    Scene scene;
    for (skip_ws(); pos_ < text_.size(); skip_ws()) statement(scene);
    return scene;
  }

 private:
  static std::string strip_comments(std::string_view text) {
    std::string out(text);
    bool comment = false;
    for (char& c : out) {
      if (c == '\n') comment = false;
      else if (c == '#') comment = true;
      if (comment) c = ' ';
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& message, std::size_t offset) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < original_.size(); ++i) {
      if (original_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SceneError(current_.empty() ? message : to_string(current_kind_) + (" " + current_) + ": " + message,
                     offset, line, column, current_.empty() ? std::nullopt : std::optional<std::string>(current_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string ident(const char* what) {
    skip_ws();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail(std::string("expected ") + what, pos_);
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void keyword(std::string_view word) {
    const std::size_t at = (skip_ws(), pos_);
    if (ident(("'" + std::string(word) + "'").c_str()) != word) fail("expected '" + std::string(word) + "'", at);
  }

  std::size_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer", pos_);
    return std::stoul(text_.substr(start, pos_ - start));
  }

  // Contents of a bracketed group starting at the current '(' or '['.
  Span group(char open, char close) {
    expect(open);
    const std::size_t start = pos_;
    int depth = 1;
    for (; pos_ < text_.size(); ++pos_) {
      if (text_[pos_] == open) ++depth;
      if (text_[pos_] == close && --depth == 0) break;
      if (text_[pos_] == ';') break;
    }
    if (pos_ >= text_.size() || text_[pos_] != close) fail(std::string("unbalanced '") + open + "'", start - 1);
    Span s{std::string_view(text_).substr(start, pos_ - start), start};
    ++pos_;
    return s;
  }

  // Everything up to the terminating ';' (consumed).
  Span rest_of_statement() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ';') ++pos_;
    if (pos_ >= text_.size()) fail("missing ';'", start);
    Span s{std::string_view(text_).substr(start, pos_ - start), start};
    ++pos_;
    return s;
  }

  void end_statement() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ';') fail("expected ';'", pos_);
    ++pos_;
  }

  template <class F>
  auto located(std::size_t offset, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const SceneError&) {
      throw;
    } catch (const ParseError& e) {
      fail(e.message(), offset + e.offset());
    } catch (const Error& e) {
      fail(e.what(), offset);
    }
  }

  // "<k> -> <d> : e1, ..., ed" or "t0, t1 -> (e1, ..., ed)".
  SmoothMap map_body(Span body, char prefix) {
    const auto arrow = body.text.find("->");
    if (arrow == std::string_view::npos) fail("expected '->' in map", body.offset);
    const Span left = trim(Span{body.text.substr(0, arrow), body.offset});
    Span right = trim(Span{body.text.substr(arrow + 2), body.offset + arrow + 2});

    std::optional<std::size_t> k;
    std::vector<std::string> names;
    if (!left.text.empty() && std::isdigit(static_cast<unsigned char>(left.text.front()))) {
      for (char c : left.text)
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a dimension before '->'", left.offset);
      k = std::stoul(std::string(left.text));
    } else {
      for (const Span& n : split_top_level(left)) {
        if (n.text.empty() || !is_ident_start(n.text.front())) fail("expected a variable name", n.offset);
        for (char c : n.text)
          if (!is_ident_char(c)) fail("expected a variable name", n.offset);
        names.emplace_back(n.text);
      }
    }

    std::optional<std::size_t> d;
    std::vector<Span> parts;
    if (!right.text.empty() && std::isdigit(static_cast<unsigned char>(right.text.front()))) {
      const auto colon = right.text.find(':');
      if (colon == std::string_view::npos) fail("expected ':' after the target dimension", right.offset);
      const Span dim = trim(Span{right.text.substr(0, colon), right.offset});
      for (char c : dim.text)
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a target dimension", dim.offset);
      d = std::stoul(std::string(dim.text));
      parts = split_top_level(Span{right.text.substr(colon + 1), right.offset + colon + 1});
    } else {
      if (right.text.size() < 2 || right.text.front() != '(' || right.text.back() != ')')
        fail("expected '(e1, ..., ed)' after '->'", right.offset);
      parts = split_top_level(Span{right.text.substr(1, right.text.size() - 2), right.offset + 1});
    }
    if (d && parts.size() != *d)
      fail("map declared with " + std::to_string(*d) + " components, found " + std::to_string(parts.size()),
           right.offset);

    const std::size_t domain = k ? *k : names.size();
    std::vector<Expr> components;
    for (const Span& p : parts) {
      if (p.text.empty()) fail("empty component", p.offset);
      components.push_back(located(p.offset, [&] {
        return k ? parse_expr(p.text, domain, prefix) : parse_expr(p.text, names);
      }));
    }
    return located(body.offset, [&] { return SmoothMap(domain, std::move(components)); });
  }

  template <class Map>
  const typename Map::mapped_type& resolve(const Scene& scene, const Map& m, const std::string& name,
                                           DeclarationKind kind, std::size_t offset) {
    auto it = m.find(name);
    if (it != m.end()) return it->second;
    for (const auto& d : scene.declarations())
      if (d.name == name)
        fail("'" + name + "' is a " + to_string(d.kind) + ", not a " + to_string(kind), offset);
    fail(std::string("unknown ") + to_string(kind) + " '" + name + "'", offset);
  }

  std::string name_ref(std::size_t& offset, const char* what) {
    skip_ws();
    offset = pos_;
    return ident(what);
  }

  void statement(Scene& scene) {
    current_.clear();
    const std::size_t start = pos_;
    const std::string word = ident("a declaration keyword");
    DeclarationKind kind;
    if (word == "space") kind = DeclarationKind::Space;
    else if (word == "subset") kind = DeclarationKind::Subset;
    else if (word == "gluemap") kind = DeclarationKind::GlueMap;
    else if (word == "glued") kind = DeclarationKind::Glued;
    else if (word == "form") kind = DeclarationKind::Form;
    else if (word == "metric") kind = DeclarationKind::Metric;
    else fail("unknown declaration '" + word + "'", start);

    skip_ws();
    const std::size_t name_at = pos_;
    const std::string name = ident("a name");
    if (scene.has(name)) fail("duplicate name '" + name + "'", name_at);
    current_ = name;
    current_kind_ = kind;
    std::size_t line = 1;
    for (std::size_t i = 0; i < start; ++i) line += original_[i] == '\n';

    switch (kind) {
      case DeclarationKind::Space: {
        expect('=');
        const std::size_t at = (skip_ws(), pos_);
        if (ident("'R'") != "R") fail("expected R^<d>", at);
        expect('^');
        const std::size_t d = integer();
        end_statement();
        scene.spaces_.emplace(name, EuclideanPiece{name, d});
        break;
      }
      case DeclarationKind::Subset: {
        keyword("of");
        std::size_t at;
        const std::string space_name = name_ref(at, "a space name");
        const EuclideanPiece& piece = resolve(scene, scene.spaces_, space_name, DeclarationKind::Space, at);
        expect('=');
        keyword("param");
        const SmoothMap param = map_body(group('(', ')'), 't');
        if (param.codomain_dim() != piece.dim)
          fail("parametrization lands in R^" + std::to_string(param.codomain_dim()) + ", " + piece.name + " is R^" +
                   std::to_string(piece.dim),
               start);
        std::optional<SmoothMap> inverse;
        if (!peek(';')) {
          keyword("inverse");
          inverse = map_body(group('(', ')'), 'x');
        }
        end_statement();
        scene.subsets_.emplace(name, located(start, [&] {
          if (!inverse) {
            if (!param.is_affine()) throw InvariantViolation("non-affine parametrization " + param.str());
            inverse = affine_left_inverse(param);
          }
          return AffineSubset(piece, param, *inverse);
        }));
        break;
      }
      case DeclarationKind::GlueMap: {
        expect(':');
        std::size_t at;
        const std::string domain_name = name_ref(at, "a subset name");
        const AffineSubset& domain = resolve(scene, scene.subsets_, domain_name, DeclarationKind::Subset, at);
        skip_ws();
        if (text_.compare(pos_, 2, "->") != 0) fail("expected '->'", pos_);
        pos_ += 2;
        const std::string target_name = name_ref(at, "a space name");
        const EuclideanPiece& target = resolve(scene, scene.spaces_, target_name, DeclarationKind::Space, at);
        expect('=');
        keyword("map");
        const SmoothMap map = map_body(group('(', ')'), 't');
        keyword("image");
        const std::string image_name = name_ref(at, "a subset name");
        const AffineSubset& image = resolve(scene, scene.subsets_, image_name, DeclarationKind::Subset, at);
        if (!(image.piece() == target)) fail("image " + image_name + " does not lie in " + target_name, at);
        std::optional<SmoothMap> inverse;
        if (!peek(';')) {
          keyword("inverse");
          inverse = map_body(group('(', ')'), 't');
        }
        end_statement();
        scene.gluemaps_.emplace(name, located(start, [&] {
          if (!inverse) {
            if (map.domain_dim() != domain.dim() || map.codomain_dim() != target.dim)
              throw InvariantViolation("gluing map must go R^" + std::to_string(domain.dim()) + " -> R^" +
                                       std::to_string(target.dim));
            if (!map.is_affine()) throw InvariantViolation("non-affine gluing map " + map.str());
            inverse = affine_left_inverse(compose(image.left_inverse(), map));
          }
          return GluingMap(domain, map, image, *inverse);
        }));
        break;
      }
      case DeclarationKind::Glued: {
        expect('=');
        keyword("glue");
        expect('(');
        std::size_t at1, at2, at3;
        const std::string n1 = name_ref(at1, "a space name");
        expect(',');
        const std::string n2 = name_ref(at2, "a space name");
        expect(',');
        const std::string n3 = name_ref(at3, "a gluemap name");
        expect(')');
        end_statement();
        const EuclideanPiece& p1 = resolve(scene, scene.spaces_, n1, DeclarationKind::Space, at1);
        const EuclideanPiece& p2 = resolve(scene, scene.spaces_, n2, DeclarationKind::Space, at2);
        const GluingMap& f = resolve(scene, scene.gluemaps_, n3, DeclarationKind::GlueMap, at3);
        scene.glued_.emplace(name, located(start, [&] { return make_glued_space(p1, p2, f); }));
        break;
      }
      case DeclarationKind::Form: {
        keyword("on");
        std::size_t at;
        const std::string space_name = name_ref(at, "a space name");
        const EuclideanPiece& piece = resolve(scene, scene.spaces_, space_name, DeclarationKind::Space, at);
        expect('=');
        const Span body = trim(rest_of_statement());
        if (body.text.empty()) fail("empty form", body.offset);
        auto coeffs = located(body.offset, [&] { return parse_form_coefficients(body.text, piece.dim); });
        scene.forms_.emplace(name, located(start, [&] { return make_form(piece, std::move(coeffs)); }));
        break;
      }
      case DeclarationKind::Metric: {
        keyword("on");
        std::size_t at;
        const std::string space_name = name_ref(at, "a space name");
        const EuclideanPiece& piece = resolve(scene, scene.spaces_, space_name, DeclarationKind::Space, at);
        expect('=');
        skip_ws();
        const Span outer = group('[', ']');
        std::vector<std::vector<Expr>> matrix;
        for (const Span& row : split_top_level(outer)) {
          if (row.text.size() < 2 || row.text.front() != '[' || row.text.back() != ']')
            fail("expected a row '[...]'", row.offset);
          std::vector<Expr> entries;
          for (const Span& e : split_top_level(Span{row.text.substr(1, row.text.size() - 2), row.offset + 1})) {
            if (e.text.empty()) fail("empty matrix entry", e.offset);
            entries.push_back(located(e.offset, [&] { return parse_expr(e.text, piece.dim); }));
          }
          matrix.push_back(std::move(entries));
        }
        end_statement();
        scene.metrics_.emplace(name, located(start, [&] { return PieceMetric(piece, matrix); }));
        break;
      }
    }
    scene.declarations_.push_back(Declaration{kind, name, line});
    current_.clear();
  }

  std::string_view original_;
  std::string text_;
  std::size_t pos_ = 0;
  std::string current_;
  DeclarationKind current_kind_ = DeclarationKind::Space;
};

}  // namespace detail

std::size_t Scene::count(DeclarationKind kind) const {
  std::size_t n = 0;
  for (const auto& d : declarations_) n += d.kind == kind;
  return n;
}

bool Scene::has(std::string_view name) const {
  for (const auto& d : declarations_)
    if (d.name == name) return true;
  return false;
}

const EuclideanPiece& Scene::space(const std::string& name) const { return lookup(spaces_, name, "space"); }
const AffineSubset& Scene::subset(const std::string& name) const { return lookup(subsets_, name, "subset"); }
const GluingMap& Scene::gluemap(const std::string& name) const { return lookup(gluemaps_, name, "gluemap"); }
const GluedSpace& Scene::glued(const std::string& name) const { return lookup(glued_, name, "glued space"); }
const OneForm& Scene::form(const std::string& name) const { return lookup(forms_, name, "form"); }
const PieceMetric& Scene::metric(const std::string& name) const { return lookup(metrics_, name, "metric"); }

Scene parse_scene(std::string_view text) { return detail::SceneParser(text).run(); }

Scene load_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read scene file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scene(buffer.str());
}

}  // namespace gluedforms
