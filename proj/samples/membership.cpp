// Builds the Parikh image of a two-state parity automaton and answers a few
// membership queries, one of them far beyond 64-bit range.
#include <iostream>

#include "parikh/parikh.hpp"

int main() {
  using namespace parikh;
  Nfa parity(2, 1, 0, {1}, {{0, 1, 1}, {1, 1, 0}});

  DecisionSession session;
  std::cout << io::dump(io::to_json(session.image(parity)->basis));

  Integer huge = boost::multiprecision::pow(Integer(10), 30);
  for (const Integer& b : {Integer(7), Integer(8), huge, Integer(huge + 1)})
    std::cout << b << ": " << (session.nfa_member(parity, IntVector{b}).member ? "yes" : "no")
              << "\n";

  Feasibility f = session.ip_feasible(IpInstance::from_rows({{2, 3}}, IntVector{7}),
                                      NormalizeMode::exact());
  std::cout << "2x + 3y = 7: " << f.to_string() << "\n";
}
