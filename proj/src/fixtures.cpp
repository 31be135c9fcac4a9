#include "drmpg/fixtures.hpp"

namespace drmpg::fixtures {

const std::string& two_state_chain_text() {
  static const std::string text =
      "# Canonical 2-state chain used by the oracle test suite.\n"
      "# At gamma = 0.9 the six episodes produce six distinct returns:\n"
      "#   -1.0, -0.7, 0.05, 1.0, 1.55, 2.3\n"
      "states 3\n"
      "actions 2\n"
      "start 1\n"
      "terminal 0\n"
      "cap 3\n"
      "t 1 0 0 0.8 1.0\n"
      "t 1 0 2 0.2 -0.25\n"
      "t 1 1 0 0.3 -1.0\n"
      "t 1 1 2 0.7 0.5\n"
      "t 2 0 0 1.0 2.0\n"
      "t 2 1 0 1.0 -0.5\n";
  return text;
}

EpisodicMdp two_state_chain() { return parse_mdp_text(two_state_chain_text()); }

}  // namespace drmpg::fixtures
