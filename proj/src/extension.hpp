// Relative extensions E/F: the embedding of F into E, the pseudo-basis
// O_E = a_1 w_1 + ... + a_n w_n over O_F, relative norm and trace, the
// place correspondence, and the relative unit group U_{E/F} = ker N_{E/F}
// with the index [U_E : U_F U_{E/F}] and the relative regulator.
#pragma once

#include <vector>

#include "ideals.hpp"
#include "numfield.hpp"
#include "units.hpp"

namespace heckelab {

struct Extension {
  FieldPtr E;
  FieldPtr F;
  int n = 1;           // [E : F]
  QMat f_embed;        // row j = E-coordinates of the j-th F basis vector
  std::vector<QVec> w; // relative basis of O_E over O_F, E-coordinates
  std::vector<FracIdeal> comp;  // coefficient ideals a_i of F
  std::vector<int> place_below; // E-place index -> F-place index
  QMat phi_inv;        // solves x = sum_{i,j} c_{ij} embed(b_j) w_i

  QVec embed(const QVec& xF) const;            // F element as E element
  // F-coordinates of x in the w basis: x = sum_i phi(x)[i] * w_i.
  std::vector<QVec> phi(const QVec& xE) const;
  QVec unphi(const std::vector<QVec>& c) const;
  QVec rel_norm(const QVec& xE) const;   // N_{E/F}(x), an F element
  QVec rel_trace(const QVec& xE) const;  // Tr_{E/F}(x), an F element
};

// Build and validate: f_embed must be a unital ring homomorphism, and the
// pseudo-basis must satisfy O_E = sum_i a_i w_i exactly.
Extension make_extension(FieldPtr E, FieldPtr F, QMat f_embed,
                         std::vector<QVec> w, std::vector<FracIdeal> comp);

struct RelativeUnits {
  int rank = 0;             // free rank of U_{E/F}
  std::vector<QVec> gens;   // free generators (E elements), exact N_{E/F} = 1
  QVec zeta;                // torsion generator of U_{E/F}
  int w = 1;                // torsion order
  Z index = 1;              // [U_E : U_F U_{E/F}]
  double regulator = 1.0;   // covolume of the relative log lattice; 1 if rank 0
};

// U_{E/F} = {u in O_E^x : N_{E/F}(u) = 1}. uE / uF are the unit groups of
// E and F. Throws if the exact kernel cannot be certified.
RelativeUnits relative_units(const Extension& ext, const UnitGroup& uE,
                             const UnitGroup& uF);

}  // namespace heckelab
