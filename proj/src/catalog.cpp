// SPDX-License-Identifier: MIT
#include "autprod/catalog.hpp"

#include <cstdlib>
#include <map>

#include "autprod/conway.hpp"
#include "autprod/golay.hpp"

namespace autprod {

namespace {

// Cartan matrix of A_n.
MatZ cartan_a(int n) {
    MatZ g(n, n);
    for (int i = 0; i < n; ++i) {
        g.at(i, i) = 2;
        if (i + 1 < n) g.at(i, i + 1) = g.at(i + 1, i) = -1;
    }
    return g;
}

// Cartan matrix of E_n (n = 6, 7, 8): an A_{n-1} chain 0-1-...-(n-2) with
// the last node attached to chain node 2.
MatZ cartan_e(int n) {
    MatZ g = cartan_a(n - 1);
    MatZ e(n, n);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) e.at(i, j) = g.at(i, j);
    e.at(n - 1, n - 1) = 2;
    e.at(n - 1, 2) = e.at(2, n - 1) = -1;
    return e;
}

const std::map<std::string, std::string> fixed_point_shapes = {
    {"BW16", "1^8.2^8"},       {"K12", "1^6.3^6"},         {"Maass", "1^4.5^4"},
    {"BarnesCraig", "1^3.7^3"}, {"Lambda_1_11", "1^2.11^2"}, {"Lambda_1_23", "1^1.23^1"},
};

}  // namespace

std::string data_dir() {
    if (const char* env = std::getenv("AUTPROD_DATA_DIR")) return env;
#ifdef AUTPROD_DEFAULT_DATA_DIR
    return AUTPROD_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

Lattice catalog_lattice(const std::string& name) {
    if (name == "U") return hyperbolic_plane();
    if (name == "A1") return Lattice(cartan_a(1));
    if (name == "A2") return Lattice(cartan_a(2));
    if (name == "A4") return Lattice(cartan_a(4));
    if (name == "E6") return Lattice(cartan_e(6));
    if (name == "E7") return Lattice(cartan_e(7));
    if (name == "E8") return Lattice(cartan_e(8));
    if (name == "Leech") return Lattice(leech_construction().gram);
    auto it = fixed_point_shapes.find(name);
    if (it != fixed_point_shapes.end()) {
        const ConwayClass& cls = conway_class(it->second);
        return fixed_point_sublattice(Lattice(leech_construction().gram), cls.matrix).lat;
    }
    throw DataError("unknown catalog lattice: " + name);
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names = {"U", "A1", "A2", "A4", "E6", "E7", "E8", "Leech"};
    for (auto& [n, s] : fixed_point_shapes) names.push_back(n);
    return names;
}

}  // namespace autprod
