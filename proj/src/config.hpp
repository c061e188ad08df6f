// Text configs for fields and extensions, and the Workspace that owns every
// object a verification job needs.
//
// Grammar (whitespace-insensitive, '#' starts a comment, one "key = value"
// per line):
//
//   Field block (bare keys in a field config, or prefixed "e." / "f." in an
//   extension config):
//     kind       = shorthand | table
//     shorthand  = rationals | quadratic <D>        (kind = shorthand)
//     name       = <label>                          (optional)
//     degree     = <d>                              (kind = table)
//     table      = <d^3 rationals, row-major i,j,k> (kind = table)
//     disc       = <integer>                        (kind = table, verified)
//     signature  = <r1> <r2>                        (kind = table, verified)
//     unit_hints = <row> | <row> | ...              (rows of d rationals)
//
//   Field config extras:
//     n = <matrix size>            (default 2)
//     a = <gen row> ; <gen row>    (fractional ideal of the field; default O)
//
//   Extension config (presence of "e.kind" marks it):
//     e.*  = field block of E          f.* = field block of F
//     emb  = <row> ; ...               (dF rows of dE entries: F basis in E)
//     w    = <row> ; ...               (n rows of dE entries)
//     comp = <ideal> | <ideal> | ...   (ideal = gen rows separated by ';')
//     big_a = <gen row> ; ...          (fractional O_E-ideal; default O_E)
//     a    = <gen row> ; ...           (fractional O_F-ideal; default O_F)
//
// Rows are whitespace-separated rationals ("p/q", integers, or decimals).
// Table configs must state disc and signature; both are re-verified against
// the constructed field so a corrupt config cannot silently skew results.
#pragma once

#include <memory>
#include <string>

#include "arith.hpp"
#include "eisenstein.hpp"
#include "extension.hpp"
#include "hecke.hpp"
#include "space.hpp"

namespace heckelab {

struct Workspace {
  bool is_extension = false;
  std::string name;

  FieldPtr E;  // null for field-only configs
  FieldPtr F;  // the field itself for field configs
  std::unique_ptr<Extension> ext;
  std::unique_ptr<UnitGroup> uE;
  std::unique_ptr<UnitGroup> uF;
  std::unique_ptr<RelativeUnits> rel;
  std::unique_ptr<HeegnerObject> h;
  std::unique_ptr<PrimeTable> ptF;
  std::unique_ptr<ClassGroup> cgF;
  std::unique_ptr<LSeries> lsF;
  std::unique_ptr<FracIdeal> A;  // O_E-ideal (extension configs)
  std::unique_ptr<FracIdeal> a;  // O_F-ideal
  int n = 2;                     // GL_n size for field configs
  double lseries_X = 20000.0;

  // Series over (F, L, a); field configs use the standard lattice O_F^n.
  EisensteinSeries series() const;
  // Hecke job view; throws for field-only workspaces.
  HeckeJob job(double X = 1e4, int nodes = 64) const;
};

// Parse and fully construct (unit groups, class group, L-series cache,
// Heegner object). Throws std::runtime_error with a line-tagged message on
// parse or validation failure.
std::unique_ptr<Workspace> load_workspace(const std::string& path);

}  // namespace heckelab
