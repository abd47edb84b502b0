#pragma once

#include "qcrib/category.hpp"
#include "qcrib/quantaloid.hpp"

namespace qcrib {
namespace fixtures {

/// One object, its identity only.
FinCategory terminal_category();

/// Objects X, Y, Z; non-identity arrows f: X -> Z and g: Y -> Z.
FinCategory cospan_category();

/// One object with morphisms e (identity) and s, s∘s = e.
FinCategory g2_category();

/// One-object quantaloid on a chain 0 < m < 1 with composition = meet.
FinQuantaloid l3_quantale();

/// One-object quantaloid on the chain 0 < 1 with composition = meet.
FinQuantaloid two_chain_quantale();

/// One-object quantaloid on the diamond 0 < a,b,c < 1 with meet
/// composition: modular but not locally localic.
FinQuantaloid m3_meet_quantale();

/// split_idempotent_completion(l3_quantale()).
FinQuantaloid l3_si();

/// The five-element diamond as a bare lattice.
FinLattice m3_lattice();

}  // namespace fixtures
}  // namespace qcrib
