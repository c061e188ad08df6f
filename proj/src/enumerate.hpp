// Fincke-Pohst style enumeration of integer vectors in an ellipsoid
// {c != 0 : c G c^T <= bound} for a positive definite Gram matrix G.
#pragma once

#include <functional>
#include <vector>

namespace heckelab {

// Calls cb for every nonzero integer vector with quadratic value <= bound.
// With half = true only one of each +-c pair is reported (last nonzero
// coordinate positive). cb may return false to abort the enumeration.
void enumerate_quadform(const std::vector<std::vector<double>>& gram,
                        double bound, bool half,
                        const std::function<bool(const std::vector<long>&)>& cb);

}  // namespace heckelab
