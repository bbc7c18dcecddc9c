// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "autprod/lattice.hpp"

namespace autprod {

// Named lattices used throughout: root lattices by their Cartan matrices,
// the Leech lattice from the Golay-code construction, and the fixed-point
// lattices of the shipped Leech isometries (BW16, K12, Maass, BarnesCraig,
// Lambda_1_11, Lambda_1_23).  Throws DataError for unknown names, or when a
// fixed-point lattice is requested and the isometry data files are missing.
Lattice catalog_lattice(const std::string& name);

std::vector<std::string> catalog_names();

// Location of the shipped data files: AUTPROD_DATA_DIR if set, otherwise
// the build-time default.
std::string data_dir();

}  // namespace autprod
