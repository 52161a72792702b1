// Cut a strictly positive probability into threshold families, check the
// decomposition, and synthesize a new strictly positive probability from it.
#include <iostream>

#include "kelley/kelley.hpp"

int main() {
  using namespace kelley;
  GroundSet omega = GroundSet::numbered(4);
  Measure m(omega, {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)});

  std::vector<SetSystem> families;
  for (unsigned k = 1; k <= 4; ++k) {
    SetSystem fam = threshold_family(m, Rational(1, 1UL << k));
    std::cout << "eps = 1/" << (1UL << k) << ": " << fam.size() << " sets, I = " << intersection_number(fam).value << "\n";
    families.push_back(std::move(fam));
  }
  Decomposition d(omega, families);
  DecompositionVerdict v = verify_decomposition(d, mode::Plain{});
  std::cout << "decomposition " << (v.verdict ? "valid" : "invalid: " + v.reason) << "\n";

  Measure synthesized = synthesize_strictly_positive(d, mode::Plain{});
  std::cout << "synthesized:";
  for (std::size_t i = 0; i < omega.size(); ++i) std::cout << " " << synthesized[i];
  std::cout << "\n";
  return 0;
}
