// rho of the conjectured minimizer for a range of edge counts.
//   extremal_table [m_lo] [m_hi]
#include <cstdio>
#include <cstdlib>

#include "dspec/extremal.hpp"
#include "dspec/graph_io.hpp"
#include "dspec/spectral.hpp"

int main(int argc, char** argv) {
  const long long lo = argc > 1 ? std::atoll(argv[1]) : 3;
  const long long hi = argc > 2 ? std::atoll(argv[2]) : 40;
  std::printf("%6s %4s %4s %-16s %18s  %s\n", "m", "n", "s", "parts", "rho", "graph6");
  for (long long m = lo; m <= hi; ++m) {
    const auto spec = dspec::params_from_m(m);
    const auto g = dspec::build_extremal_graph(spec);
    std::string parts;
    for (int k : spec.parts) parts += (parts.empty() ? "" : ",") + std::to_string(k);
    std::printf("%6lld %4d %4d %-16s %18.12f  %s\n", m, spec.n, spec.s, parts.c_str(),
                dspec::distance_spectral_radius(g).value, dspec::to_graph6(g).c_str());
  }
}
