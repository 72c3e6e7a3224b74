#pragma once

#include <iosfwd>

namespace siegelkit {

// Embedded property suite: Hilbert symbol grids, ring axioms, recursion vs
// closed form, lift independence, a small oracle check. Prints one line per
// group; returns true when everything passes.
bool selftest(std::ostream& out);

}  // namespace siegelkit
