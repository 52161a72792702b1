// An a.s. ranking backed by a measure with a null atom: compare functions,
// check the axioms on a small grid, and recover a representing probability.
#include <iostream>

#include "kelley/kelley.hpp"

int main() {
  using namespace kelley;
  GroundSet omega = GroundSet::numbered(3);
  Measure m(omega, {Rational(2, 3), Rational(1, 3), Rational(0)});
  OrderSpec order = OrderSpec::measure(m);

  SimpleFunction f(omega, {Rational(1), Rational(0), Rational(-5)});
  SimpleFunction g(omega, {Rational(0), Rational(0), Rational(0)});
  std::cout << "f >=* 0: " << std::boolalpha << order_compare(order, f, g) << "\n";

  AxiomReport axioms = axioms_check(order, default_grid(omega, 125), default_scalars());
  std::cout << "axioms (i)-(v) hold on the grid: " << axioms.all_hold() << "\n";

  Representation rep = representability(null_ideal(m));
  std::cout << "representing measure:";
  for (std::size_t i = 0; i < omega.size(); ++i) std::cout << " " << rep.measure[i];
  std::cout << "\nnull sets match: " << rep.null_sets_match << ", decomposition verified: " << rep.decomposition_verified << "\n";
  return 0;
}
