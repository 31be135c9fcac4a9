#pragma once

#include <string>

#include "drmpg/mdp.hpp"

namespace drmpg::fixtures {

/// Plain-text description of the canonical oracle MDP: a 2-state chain
/// (terminal 0, start 1, intermediate 2) with 2 actions, cap 3, and rewards
/// chosen so the return distribution has 6 distinct values at the fixture
/// discount — enough structure to exercise every order-statistic path.
const std::string& two_state_chain_text();

/// Parsed and validated fixture MDP.
EpisodicMdp two_state_chain();

/// Discount the fixture's frozen return values were derived with.
inline constexpr double kChainGamma = 0.9;

}  // namespace drmpg::fixtures
