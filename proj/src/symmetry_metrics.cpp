#include "linkexpr/automorphism.hpp"
#include "linkexpr/error.hpp"

namespace linkexpr {

double symmetry_measure(std::size_t n, std::size_t classes) {
    if (n == 0) throw ValidationError("symmetry measure undefined for an empty graph");
    if (n == 1) return 1.0;
    if (classes == 0 || classes > n) throw ValidationError("symmetry measure: class count out of range");
    // (n - k) / (n - 1): both counts are exact integers, so 0, 1/2 and 1 come out exact.
    return static_cast<double>(n - classes) / static_cast<double>(n - 1);
}

double symmetry_exact(const Graph& g, const SearchLimits& limits) {
    if (g.node_count() == 0) throw ValidationError("symmetry measure undefined for an empty graph");
    return symmetry_measure(g.node_count(), orbits(g, limits).orbit_count);
}

double symmetry_wl(const Graph& g) {
    if (g.node_count() == 0) throw ValidationError("symmetry measure undefined for an empty graph");
    return symmetry_measure(g.node_count(), wl_refine(g).class_count);
}

}  // namespace linkexpr
