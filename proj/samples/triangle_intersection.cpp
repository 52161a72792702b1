// Intersection number of the three two-element subsets of {1,2,3}, the
// game solution behind it, and a brute-force confirmation.
#include <iostream>

#include "kelley/kelley.hpp"

int main() {
  using namespace kelley;
  GroundSet omega = GroundSet::numbered(3);
  SetSystem triangle(omega, {omega.subset({"1", "2"}), omega.subset({"2", "3"}), omega.subset({"1", "3"})});

  IntersectionReport r = intersection_number(triangle);
  std::cout << "I = " << r.value << "\n";
  std::cout << "optimal measure:";
  for (std::size_t i = 0; i < omega.size(); ++i) std::cout << " " << omega.label(i) << "=" << r.optimal_measure[i];
  std::cout << "\nwitness multiplicities:";
  for (auto k : r.witness_sequence) std::cout << " " << k;
  std::cout << "\n";

  MinimaxCertificate cert = verify_minimax(triangle);
  std::cout << "brute force at length " << multiset_size(cert.witness) << ": " << cert.brute_value
            << (cert.verdict ? " (certified)" : " (MISMATCH)") << "\n";
  return cert.verdict ? 0 : 1;
}
