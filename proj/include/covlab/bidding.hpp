#pragma once

#include <optional>
#include <vector>

#include "covlab/geometry.hpp"

namespace covlab {

// A relocatable sensor taking part in the hole-healing auction. base_price is
// the size of the hole it would open by leaving its current spot; a mobile
// only moves for bids that beat it.
struct MobileSensor {
    Sensor sensor;
    double base_price = 0.0;
    bool settled = false;
};

// Value of the coverage hole seen by a sensor whose farthest Voronoi vertex
// lies at distance d: the area of a disk of radius (d - sensing_radius).
// No hole (d <= sensing_radius) yields no bid.
std::optional<double> hole_bid(double farthest_distance, double sensing_radius);

struct BiddingParams {
    double sensing_radius = 5.0;
    int max_rounds = 50;

    void validate() const;
};

struct BiddingRound {
    int round = 0;          // 1-based
    int messages = 0;       // bids actually sent
    int accepted = 0;       // mobiles that moved this round
    double max_bid = 0.0;   // largest bid sent
    double max_accepted = 0.0;
};

enum class BiddingStop { healed, round_cap };

struct BiddingResult {
    Deployment deployment;  // statics followed by mobiles, ids renumbered 1..n
    std::vector<MobileSensor> mobiles;
    std::vector<BiddingRound> rounds;
    int moves = 0;
    BiddingStop stop = BiddingStop::healed;
};

// Runs the synchronous auction: each round every placed sensor (statics plus
// mobiles that have already moved) measures its hole, bids to the nearest
// mobile whose base price the bid beats, and each mobile accepts the best bid
// it received (ties to the lowest sender id), relocating onto the hole.
// Rounds repeat until no bids are sent or max_rounds is hit.
BiddingResult run_bidding(const Deployment& statics, std::vector<MobileSensor> mobiles,
                          const BiddingParams& params);

}  // namespace covlab
