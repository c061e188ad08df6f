// Exact rational/integer linear algebra: small dense matrices over Q (GMP),
// Hermite normal form, and full-rank lattices in Q^d used to represent
// fractional ideals and O_F-lattices.
#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace heckelab {

using Z = mpz_class;
using Q = mpq_class;
using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;
using ZVec = std::vector<Z>;
using ZMat = std::vector<ZVec>;

QMat qmat_zero(int m, int n);
QMat qmat_identity(int n);
QMat qmat_mul(const QMat& a, const QMat& b);
QVec qmat_vecmat(const QVec& x, const QMat& a);  // row vector times matrix
QMat qmat_transpose(const QMat& a);
Q qmat_det(QMat a);
QMat qmat_inverse(const QMat& a);  // throws on singular
QMat qmat_scale(const QMat& a, const Q& c);
bool qvec_is_integral(const QVec& x);

// Row-style Hermite normal form of the lattice spanned by the rows of `rows`
// (entries integer). Returns the rank many nonzero rows, upper triangular in
// echelon shape, positive pivots, entries above a pivot reduced to [0, pivot).
ZMat hnf_rows(ZMat rows);

// A full-rank lattice in Q^d, stored as a canonical rational HNF basis
// (rows). Two lattices are equal iff their stored bases are equal.
struct QLat {
  QMat b;  // d x d, canonical
  int dim() const { return (int)b.size(); }
};

// Build from spanning rows (m >= d); throws if the span has rank < d.
QLat lat_from_rows(const QMat& rows, int d);
bool lat_eq(const QLat& a, const QLat& b);
QLat lat_sum(const QLat& a, const QLat& b);
QLat lat_dual(const QLat& a);  // {x : x.y in Z for all y in a}
QLat lat_intersect(const QLat& a, const QLat& b);
Q lat_covol(const QLat& a);  // |det b| > 0
bool lat_contains(const QLat& a, const QVec& x);
// Coordinates of x with respect to the basis rows of `a` (rational).
QVec lat_coords(const QLat& a, const QVec& x);

// Solve z * rows = target over the integers (z in Z^m, rows m x d rational).
// Returns nullopt if no integral solution exists.
std::optional<ZVec> zsolve_rows(const QMat& rows, const QVec& target);

std::string q_to_string(const Q& x);
Q q_parse(const std::string& s);  // "p/q" or integer or decimal

}  // namespace heckelab
