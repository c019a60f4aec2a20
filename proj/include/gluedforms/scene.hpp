#pragma once

#include "gluedforms/metric.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gluedforms {

// Scene files are sequences of ';'-terminated declarations; '#' starts a
// comment running to the end of the line.
//
//   space X1 = R^2;
//   subset Y of X1 = param(1 -> 2 : 0, t0) inverse(2 -> 1 : x1);
//   subset Y of X1 = param(t0 -> (0, t0));            # inverse computed
//   gluemap f : Y -> X2 = map(1 -> 2 : 0, t0) image FY inverse(1 -> 1 : t0);
//   glued GX = glue(X1, X2, f);
//   form w1 on X1 = x1 dx0 + x0 dx1;
//   metric g1 on X1 = [[1, 0], [0, 1]];
//
// In param, map and parameter-space inverse bodies the variables are t0, t1,
// ...; in the inverse of a subset they are the ambient x0, x1, .... Omitted
// inverses are computed exactly from the affine data.

namespace detail {
class SceneParser;
}

enum class DeclarationKind { Space, Subset, GlueMap, Glued, Form, Metric };

const char* to_string(DeclarationKind kind);

struct Declaration {
  DeclarationKind kind = DeclarationKind::Space;
  std::string name;
  std::size_t line = 0;
};

/// Syntax error, unresolved name or failed invariant, located in the file.
class SceneError : public ParseError {
 public:
  SceneError(const std::string& message, std::size_t offset, std::size_t line, std::size_t column,
             std::optional<std::string> declaration = std::nullopt);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// Name of the declaration being processed, when there is one.
  const std::optional<std::string>& declaration() const { return declaration_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::optional<std::string> declaration_;
};

class Scene {
 public:
  const std::vector<Declaration>& declarations() const { return declarations_; }
  bool empty() const { return declarations_.empty(); }
  std::size_t count(DeclarationKind kind) const;
  bool has(std::string_view name) const;

  // Lookups throw std::out_of_range naming the missing binding.
  const EuclideanPiece& space(const std::string& name) const;
  const AffineSubset& subset(const std::string& name) const;
  const GluingMap& gluemap(const std::string& name) const;
  const GluedSpace& glued(const std::string& name) const;
  const OneForm& form(const std::string& name) const;
  const PieceMetric& metric(const std::string& name) const;

 private:
  friend class detail::SceneParser;

  std::vector<Declaration> declarations_;
  std::map<std::string, EuclideanPiece, std::less<>> spaces_;
  std::map<std::string, AffineSubset, std::less<>> subsets_;
  std::map<std::string, GluingMap, std::less<>> gluemaps_;
  std::map<std::string, GluedSpace, std::less<>> glued_;
  std::map<std::string, OneForm, std::less<>> forms_;
  std::map<std::string, PieceMetric, std::less<>> metrics_;
};

/// Parses and validates a whole scene; throws SceneError.
Scene parse_scene(std::string_view text);

/// Reads and parses a file; throws std::runtime_error if it cannot be read.
Scene load_scene(const std::string& path);

}  // namespace gluedforms
