// Unit groups O_k^x: torsion, fundamental units, regulator under the
// measure conventions of the verified formulas (complex places carry
// 2 dt/t), and reduction of field elements modulo the unit action.
#pragma once

#include <optional>
#include <vector>

#include "numfield.hpp"

namespace heckelab {

struct UnitGroup {
  FieldPtr k;
  int rank = 0;                  // r1 + r2 - 1
  std::vector<QVec> gens;        // fundamental units, one per rank
  QVec zeta;                     // torsion generator
  int w = 2;                     // torsion order
  // logvec[j][sigma] = n_sigma * log|sigma(gens[j])|
  std::vector<std::vector<double>> logvec;
  double regulator = 1.0;        // covolume of the log lattice; 1 for rank 0
  // Inverse of the rank x rank matrix logvec with the last place dropped;
  // maps a dropped log vector to coordinates in the unit lattice.
  std::vector<std::vector<double>> coord_inv;

  // n_sigma * log|sigma(x)| for all places.
  std::vector<double> log_vector(const QVec& x) const;
  // Coordinates of x's log vector in the unit lattice basis (length rank).
  std::vector<double> domain_coords(const QVec& x) const;
  // Canonical representative of the full O_k^x-orbit of x (torsion included):
  // log vector reduced into [0,1)^rank, then exact lexicographic minimum over
  // the torsion orbit and neighboring unit translates. Deterministic.
  QVec canonical_rep(QVec x) const;
  // True if x is the canonical torsion representative (lex-min over x*zeta^j).
  bool torsion_lexmin(const QVec& x) const;
  QVec apply_power_product(QVec x, const std::vector<long>& e) const;
};

// Compute O_k^x. For rank 1 fields of degree 2 the fundamental unit is found
// by continued fractions; otherwise a hint must be supplied and is verified
// (unit, non-torsion, and no smaller unit exists -- checked by lattice
// enumeration for rank 1). Rank >= 2 requires hints and verifies independence
// only.
UnitGroup unit_group(FieldPtr k, const std::vector<QVec>& hints = {});

// Exact lexicographic comparison of coordinate vectors.
bool qvec_lex_less(const QVec& a, const QVec& b);

// Gram matrix of sum_sigma weight[sigma] * |sigma(x)|^2 on the rows of basis.
std::vector<std::vector<double>> place_gram(const NumberField& k,
                                            const QMat& basis,
                                            const std::vector<double>& weights);

}  // namespace heckelab
