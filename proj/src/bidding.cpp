#include "covlab/bidding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "covlab/voronoi.hpp"

namespace covlab {

std::optional<double> hole_bid(double farthest_distance, double sensing_radius) {
    if (!(sensing_radius > 0.0))
        throw std::invalid_argument("hole_bid: sensing radius must be positive");
    if (farthest_distance < 0.0)
        throw std::invalid_argument("hole_bid: distance must be non-negative");
    if (farthest_distance <= sensing_radius) return std::nullopt;
    const double excess = farthest_distance - sensing_radius;
    return M_PI * excess * excess;
}

void BiddingParams::validate() const {
    if (!(sensing_radius > 0.0))
        throw std::invalid_argument("bidding: sensing radius must be positive");
    if (max_rounds < 1) throw std::invalid_argument("bidding: max_rounds must be >= 1");
}

namespace {

struct Bid {
    int sender_id = 0;
    int receiver = -1;  // index into the mobiles vector
    double amount = 0.0;
    Point target;
};

}  // namespace

BiddingResult run_bidding(const Deployment& statics, std::vector<MobileSensor> mobiles,
                          const BiddingParams& params) {
    params.validate();
    statics.field.validate();
    const Rect bounds = statics.field.rect();
    for (const Sensor& s : statics.sensors)
        if (!bounds.contains(s.pos))
            throw std::invalid_argument("bidding: static sensor outside the field");
    for (const MobileSensor& m : mobiles)
        if (!bounds.contains(m.sensor.pos))
            throw std::invalid_argument("bidding: mobile sensor outside the field");
    if (statics.sensors.empty() &&
        std::none_of(mobiles.begin(), mobiles.end(),
                     [](const MobileSensor& m) { return m.settled; }))
        throw std::invalid_argument("bidding: no placed sensors to detect holes");

    BiddingResult result;
    for (int round = 1; round <= params.max_rounds; ++round) {
        // Snapshot of everything currently holding a position in the field.
        // Mobile ids are offset past the statics so the auction can tell the
        // two apart without collisions.
        Deployment sites;
        sites.field = statics.field;
        const int mobile_id_base = static_cast<int>(statics.sensors.size());
        for (std::size_t i = 0; i < statics.sensors.size(); ++i)
            sites.sensors.push_back(
                {static_cast<int>(i) + 1, statics.sensors[i].pos, params.sensing_radius});
        for (std::size_t i = 0; i < mobiles.size(); ++i)
            if (mobiles[i].settled)
                sites.sensors.push_back({mobile_id_base + static_cast<int>(i) + 1,
                                         mobiles[i].sensor.pos, params.sensing_radius});

        std::vector<Bid> bids;
        const std::vector<VoronoiCell> cells = voronoi_cells(sites);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const Sensor& site = sites.sensors[c];
            const auto [vertex, dist] = farthest_vertex(cells[c], site);
            const std::optional<double> amount = hole_bid(dist, params.sensing_radius);
            if (!amount) continue;

            // Nearest affordable mobile; a settled mobile may be re-hired if
            // the new hole beats its base price, but never by itself.
            int chosen = -1;
            double chosen_d = std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < mobiles.size(); ++m) {
                if (mobiles[m].base_price >= *amount) continue;
                if (mobiles[m].settled &&
                    mobile_id_base + static_cast<int>(m) + 1 == site.id)
                    continue;
                const double d = distance(site.pos, mobiles[m].sensor.pos);
                if (d < chosen_d) {
                    chosen_d = d;
                    chosen = static_cast<int>(m);
                }
            }
            if (chosen >= 0) bids.push_back({site.id, chosen, *amount, vertex});
        }

        if (bids.empty()) {
            result.stop = BiddingStop::healed;
            break;
        }

        BiddingRound stats;
        stats.round = round;
        stats.messages = static_cast<int>(bids.size());
        for (const Bid& b : bids) stats.max_bid = std::max(stats.max_bid, b.amount);

        // Each mobile takes the best offer it received this round.
        for (std::size_t m = 0; m < mobiles.size(); ++m) {
            const Bid* best = nullptr;
            for (const Bid& b : bids) {
                if (b.receiver != static_cast<int>(m)) continue;
                if (!best || b.amount > best->amount ||
                    (b.amount == best->amount && b.sender_id < best->sender_id))
                    best = &b;
            }
            if (!best) continue;
            mobiles[m].sensor.pos = best->target;
            mobiles[m].base_price = best->amount;
            mobiles[m].settled = true;
            stats.accepted += 1;
            stats.max_accepted = std::max(stats.max_accepted, best->amount);
            result.moves += 1;
        }
        result.rounds.push_back(stats);
        if (round == params.max_rounds) result.stop = BiddingStop::round_cap;
    }

    result.deployment.field = statics.field;
    for (const Sensor& s : statics.sensors)
        result.deployment.sensors.push_back({0, s.pos, params.sensing_radius});
    for (const MobileSensor& m : mobiles)
        result.deployment.sensors.push_back({0, m.sensor.pos, params.sensing_radius});
    for (std::size_t i = 0; i < result.deployment.sensors.size(); ++i)
        result.deployment.sensors[i].id = static_cast<int>(i) + 1;
    result.mobiles = std::move(mobiles);
    return result;
}

}  // namespace covlab
