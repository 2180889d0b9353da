#pragma once

#include "isoglab/isogeny.hpp"

namespace isoglab {

// Irreducible polynomial of degree ell^e over F_q through a chain of e
// rational ell-isogenies: the fiber of a point outside [ell]E(F_q) under
// the composed chain is an irreducible fiber, and its abscissa polynomial
// is returned monic. Requires ell odd prime, ell not dividing q - 1, and
// a curve with ell | #E within the Hasse window.
Poly couveignes_lercier(u64 q, unsigned ell, unsigned e, SeededRng& rng);

}  // namespace isoglab
