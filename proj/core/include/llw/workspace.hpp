#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llw/formula.hpp"
#include "llw/models.hpp"

namespace llw {

struct WsObject {
  enum class Kind { Coherence, Pcoh, Finiteness, Glue, Module };

  Kind kind = Kind::Module;
  std::string name;
  Based based;  // empty for glue objects
  std::optional<CoherenceSpace> coh;
  std::optional<ProbCohSpace> pcoh;
  /// Declared web and U; X is left empty until closure.
  std::optional<GlueObject> glue;
};

std::string to_string(WsObject::Kind k);

/// Matrix in web coordinates, rows indexed by the source.
struct NamedMatrix {
  FormulaPtr src, dst;
  Matrix matrix;
};

struct Workspace {
  SemiringPtr semiring;  // null unless declared
  std::map<std::string, WsObject> objects;
  std::map<std::string, FormulaPtr> formulas;
  std::map<std::string, NamedMatrix> matrices;
  std::vector<std::string> order;

  const WsObject& object(const std::string& name) const;
  bool defines(const std::string& name) const;
};

/// Line-oriented declarations; `#` starts a comment, braces and brackets may
/// span lines.
///
///   semiring I
///   cohspace A { atoms [a,b]; coherent (a,b); }
///   pcoh P { atoms [a,b]; gen (1,0); gen (0,1); }
///   finspace X { atoms [a,b]; }
///   glue G { web [a,b]; u (1,0); u (0,1); }
///   module M = free(N, web [a,b])
///   module C = coherence(atoms [a,b]; coherent (a,b))
///   module Q = pcoh(atoms [a,b]; generators [(1,0), (0,1)])
///   module E = enumerated(B, web [a]; {a:0}; {a:1})
///   module Y = finiteness(web [a,b])
///   formula F = A -o B
///   matrix f : A -o B = 1 0; 0 1
Workspace parse_workspace(std::string_view text);
Workspace load_workspace(const std::filesystem::path& path);

}  // namespace llw
